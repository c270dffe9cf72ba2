//! Metric approximation: the distortion of the Reeb quotient map measured on
//! a mesh, and the closed-form bounds it is compared against.

mod bounds;
mod empirical;
mod report;

pub use bounds::{
    bound_ratio, diameter_from_volume, distance_function_bound, distortion_from_diameter,
    gh_delta_bounds, intermediate_bounds, morse_bound, DistortionBound, IntermediateParams,
    MorseBoundParams,
};
pub use empirical::{
    distortion, distortion_from_matrix, max_contour_diameter, thickness, ContourDiameter,
    Distortion, LevelSampling, Pairs, Thickness,
};
pub use report::{passes, table_header, BoundReport};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApproxError {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("{0}")]
    Mismatch(String),
}
