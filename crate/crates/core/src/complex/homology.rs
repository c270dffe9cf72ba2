//! Rational Betti numbers from ranks of boundary matrices.
//!
//! Ranks are computed by exact sparse elimination over the integers:
//! fraction-free column updates followed by division by the column
//! content, which keeps the rational column span unchanged. Row and column
//! singletons are eliminated first, so surface meshes reduce with almost no
//! fill. Coefficients start as `i64` and the whole elimination is redone in
//! arbitrary precision if any update would overflow.

use super::SimplicialComplex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Betti {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
}

impl Betti {
    pub fn euler_characteristic(&self) -> i64 {
        self.b0 as i64 - self.b1 as i64 + self.b2 as i64
    }
}

/// Rational homology ranks of a 2-complex:
/// `b0 = V − rank ∂₁`, `b1 = E − rank ∂₁ − rank ∂₂`, `b2 = T − rank ∂₂`.
pub fn betti_numbers(complex: &SimplicialComplex) -> Betti {
    let r1 = boundary_rank(complex, 1);
    let r2 = boundary_rank(complex, 2);
    Betti {
        b0: complex.n_vertices() - r1,
        b1: complex.n_edges() - r1 - r2,
        b2: complex.n_triangles() - r2,
    }
}

/// Rank over ℚ of the boundary map ∂_dim (dim ∈ {1, 2}); 0 otherwise.
pub fn boundary_rank(complex: &SimplicialComplex, dim: usize) -> usize {
    let columns: Vec<Vec<(usize, i64)>> = match dim {
        1 => complex
            .edges()
            .iter()
            .map(|&[a, b]| vec![(a, -1), (b, 1)])
            .collect(),
        2 => (0..complex.n_triangles())
            .map(|t| {
                // sorted vertices v0<v1<v2: ∂ = [v1v2] − [v0v2] + [v0v1]
                let [e01, e12, e02] = complex.triangle_edges(t);
                vec![(e01, 1), (e12, 1), (e02, -1)]
            })
            .collect(),
        _ => return 0,
    };
    sparse_rank(&columns)
}

trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `p·x − a·y`, or `None` on overflow.
    fn combine(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn abs_is_one(&self) -> bool;
    fn div_exact(&self, d: &Self) -> Self;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn combine(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self> {
        p.checked_mul(*x)?.checked_sub(a.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn abs_is_one(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn combine(p: &Self, x: &Self, a: &Self, y: &Self) -> Option<Self> {
        Some(p * x - a * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn abs_is_one(&self) -> bool {
        self.abs().is_one()
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

fn sparse_rank(columns: &[Vec<(usize, i64)>]) -> usize {
    match Eliminator::<i64>::new(columns).run() {
        Some(r) => r,
        None => Eliminator::<BigInt>::new(columns)
            .run()
            .expect("arbitrary precision elimination cannot overflow"),
    }
}

struct Eliminator<C: Coeff> {
    cols: Vec<Option<HashMap<usize, C>>>,
    rows: HashMap<usize, BTreeSet<usize>>,
    /// (nonzero count, column) for live columns
    col_queue: BTreeSet<(usize, usize)>,
    /// (nonzero count, row) for live rows
    row_queue: BTreeSet<(usize, usize)>,
}

impl<C: Coeff> Eliminator<C> {
    fn new(columns: &[Vec<(usize, i64)>]) -> Self {
        let mut cols = Vec::with_capacity(columns.len());
        let mut rows: HashMap<usize, BTreeSet<usize>> = HashMap::new();
        for (j, col) in columns.iter().enumerate() {
            let mut m = HashMap::new();
            for &(r, v) in col {
                if v != 0 {
                    m.insert(r, C::from_i64(v));
                    rows.entry(r).or_default().insert(j);
                }
            }
            cols.push(Some(m));
        }
        let col_queue = cols
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.as_ref().filter(|m| !m.is_empty()).map(|m| (m.len(), j)))
            .collect();
        let row_queue = rows.iter().map(|(&r, s)| (s.len(), r)).collect();
        Eliminator {
            cols,
            rows,
            col_queue,
            row_queue,
        }
    }

    fn run(mut self) -> Option<usize> {
        let mut rank = 0;
        loop {
            // Row singleton: the row's only column is independent of the rest.
            if let Some(&(1, r)) = self.row_queue.first() {
                let j = *self.rows[&r].iter().next().unwrap();
                self.drop_column(j);
                self.drop_row(r);
                rank += 1;
                continue;
            }
            let Some(&(_, j)) = self.col_queue.first() else {
                break;
            };
            // Pivot row within column j: the sparsest row.
            let col = self.cols[j].as_ref().unwrap();
            let r = *col
                .keys()
                .min_by_key(|&&r| (self.rows[&r].len(), r))
                .unwrap();
            let pivot = col[&r].clone();
            let pivot_col: Vec<(usize, C)> = col.iter().map(|(&k, v)| (k, v.clone())).collect();
            let targets: Vec<usize> = self.rows[&r].iter().copied().filter(|&k| k != j).collect();
            for k in targets {
                self.eliminate(k, r, &pivot, &pivot_col)?;
            }
            self.drop_column(j);
            self.drop_row(r);
            rank += 1;
        }
        Some(rank)
    }

    /// col_k ← pivot·col_k − col_k[r]·pivot_col, then divide by content.
    fn eliminate(&mut self, k: usize, r: usize, pivot: &C, pivot_col: &[(usize, C)]) -> Option<()> {
        let mut col = self.cols[k].take().unwrap();
        self.col_queue.remove(&(col.len(), k));
        let a = col[&r].clone();
        let zero = C::from_i64(0);
        let mut touched: Vec<usize> = col.keys().copied().collect();
        for (row, _) in pivot_col {
            if !col.contains_key(row) {
                touched.push(*row);
            }
        }
        let pivot_entries: HashMap<usize, &C> = pivot_col.iter().map(|(r, v)| (*r, v)).collect();
        let mut updated = HashMap::with_capacity(touched.len());
        for row in touched {
            let x = col.get(&row).unwrap_or(&zero);
            let y = pivot_entries.get(&row).copied().unwrap_or(&zero);
            let v = C::combine(pivot, x, &a, y)?;
            if !v.is_zero() {
                updated.insert(row, v);
            }
        }
        // content normalisation
        let mut g: Option<C> = None;
        for v in updated.values() {
            g = Some(match g {
                None => v.gcd(v),
                Some(g) => g.gcd(v),
            });
            if g.as_ref().unwrap().abs_is_one() {
                break;
            }
        }
        if let Some(g) = g {
            if !g.abs_is_one() {
                for v in updated.values_mut() {
                    *v = v.div_exact(&g);
                }
            }
        }
        for row in col.keys() {
            if !updated.contains_key(row) {
                self.row_remove(*row, k);
            }
        }
        for row in updated.keys() {
            if !col.contains_key(row) {
                self.row_insert(*row, k);
            }
        }
        col = updated;
        if !col.is_empty() {
            self.col_queue.insert((col.len(), k));
        }
        self.cols[k] = Some(col);
        Some(())
    }

    fn row_remove(&mut self, row: usize, col: usize) {
        let set = self.rows.get_mut(&row).unwrap();
        self.row_queue.remove(&(set.len(), row));
        set.remove(&col);
        if set.is_empty() {
            self.rows.remove(&row);
        } else {
            self.row_queue.insert((set.len(), row));
        }
    }

    fn row_insert(&mut self, row: usize, col: usize) {
        let set = self.rows.entry(row).or_default();
        self.row_queue.remove(&(set.len(), row));
        set.insert(col);
        self.row_queue.insert((set.len(), row));
    }

    fn drop_column(&mut self, j: usize) {
        let col = self.cols[j].take().unwrap();
        self.col_queue.remove(&(col.len(), j));
        for row in col.keys() {
            self.row_remove(*row, j);
        }
    }

    fn drop_row(&mut self, r: usize) {
        if let Some(set) = self.rows.remove(&r) {
            self.row_queue.remove(&(set.len(), r));
            for k in set {
                let col = self.cols[k].as_mut().unwrap();
                self.col_queue.remove(&(col.len(), k));
                col.remove(&r);
                if !col.is_empty() {
                    self.col_queue.insert((col.len(), k));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexBuilder;

    #[test]
    fn filled_triangle_is_contractible() {
        let mut b = ComplexBuilder::with_coords(vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        b.triangle(0, 1, 2);
        let betti = betti_numbers(&b.build().unwrap());
        assert_eq!(betti, Betti { b0: 1, b1: 0, b2: 0 });
    }

    #[test]
    fn theta_graph_by_euler() {
        // two junctions joined by three paths of two edges each
        let mut b = ComplexBuilder::new(5);
        for m in 2..5 {
            b.edge_with_length(0, m, 1.0).edge_with_length(m, 1, 1.0);
        }
        let c = b.build().unwrap();
        assert_eq!(betti_numbers(&c), Betti { b0: 1, b1: 2, b2: 0 });
    }

    #[test]
    fn boundary_of_tetrahedron_is_a_sphere() {
        let mut b = ComplexBuilder::with_coords(vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]);
        b.triangle(0, 1, 2).triangle(0, 1, 3).triangle(0, 2, 3).triangle(1, 2, 3);
        assert_eq!(betti_numbers(&b.build().unwrap()), Betti { b0: 1, b1: 0, b2: 1 });
    }

    #[test]
    fn bigint_path_agrees() {
        let cols = vec![vec![(0, 3), (1, 5)], vec![(0, 6), (1, 10)], vec![(1, 7), (2, 1)]];
        assert_eq!(Eliminator::<i64>::new(&cols).run(), Some(2));
        assert_eq!(Eliminator::<BigInt>::new(&cols).run(), Some(2));
    }

    #[test]
    fn overflow_is_detected() {
        let big = i64::MAX / 2;
        let cols = vec![vec![(0, big), (1, 3)], vec![(0, 5), (1, big)]];
        assert_eq!(Eliminator::<i64>::new(&cols).run(), None);
        assert_eq!(sparse_rank(&cols), 2);
    }
}
