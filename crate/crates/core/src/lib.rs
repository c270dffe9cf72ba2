//! Reeb graphs of piecewise-linear fields on simplicial complexes, the
//! metric distortion of their quotient maps, and the closed-form bounds
//! that relate both to the topology and geometry of the domain.

pub mod complex;
pub mod reeb;
pub mod approx;
pub mod algebra;
pub mod width;
pub mod suites;
pub mod exec;
pub mod union_find;
