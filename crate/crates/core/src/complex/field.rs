use super::{SimplicialComplex, VertexId};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("field has {got} values but the complex has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("field value at vertex {0} is not finite")]
    NotFinite(usize),
}

/// One real value per vertex, extended linearly over edges and triangles.
///
/// Ties between vertex values are broken symbolically by vertex id: vertex
/// `a` is below vertex `b` iff `(f(a), a) < (f(b), b)`. All combinatorial
/// level-set code uses that order, so every field behaves as generic.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(values: Vec<f64>) -> Result<Self, FieldError> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(FieldError::NotFinite(i));
        }
        Ok(ScalarField { values })
    }

    /// Builds and checks the length against `complex`.
    pub fn for_complex(complex: &SimplicialComplex, values: Vec<f64>) -> Result<Self, FieldError> {
        if values.len() != complex.n_vertices() {
            return Err(FieldError::LengthMismatch {
                expected: complex.n_vertices(),
                got: values.len(),
            });
        }
        Self::new(values)
    }

    pub fn from_fn(complex: &SimplicialComplex, f: impl Fn(VertexId) -> f64) -> Result<Self, FieldError> {
        Self::new((0..complex.n_vertices()).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, v: VertexId) -> f64 {
        self.values[v]
    }

    /// Strict symbolic order: is `a` below `b`?
    pub fn below(&self, a: VertexId, b: VertexId) -> bool {
        let (fa, fb) = (self.values[a], self.values[b]);
        fa < fb || (fa == fb && a < b)
    }

    /// Vertices sorted by the symbolic order.
    pub fn sweep_order(&self) -> Vec<VertexId> {
        let mut order: Vec<VertexId> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]).then(a.cmp(&b)));
        order
    }

    /// Position of each vertex in [`sweep_order`](Self::sweep_order).
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.values.len()];
        for (i, v) in self.sweep_order().into_iter().enumerate() {
            rank[v] = i;
        }
        rank
    }

    /// Field of ranks; it has the same level-set combinatorics as `self`
    /// with ties resolved, and all values distinct.
    pub fn rank_field(&self) -> ScalarField {
        ScalarField {
            values: self.ranks().into_iter().map(|r| r as f64).collect(),
        }
    }

    /// True when all vertex values are pairwise distinct.
    pub fn is_generic(&self) -> bool {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Rounds values to multiples of `quantum`, so that analytically equal
    /// values evaluated through different float paths compare equal.
    pub fn snapped(&self, quantum: f64) -> ScalarField {
        ScalarField {
            values: self
                .values
                .iter()
                .map(|&v| {
                    let s = (v / quantum).round() * quantum;
                    if s == 0.0 {
                        0.0
                    } else {
                        s
                    }
                })
                .collect(),
        }
    }

    /// `g ∘ f`; monotone `g` preserves the Reeb graph up to relabelled levels.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> Result<ScalarField, FieldError> {
        Self::new(self.values.iter().map(|&v| g(v)).collect())
    }

    pub fn shifted(&self, c: f64) -> ScalarField {
        ScalarField {
            values: self.values.iter().map(|&v| v + c).collect(),
        }
    }

    /// Value at parameter `t` along edge `[a, b]`, measured from `a`.
    pub fn lerp(&self, a: VertexId, b: VertexId, t: f64) -> f64 {
        self.values[a] + t * (self.values[b] - self.values[a])
    }

    /// Largest |f(a) − f(b)| / length over edges: the Lipschitz constant of
    /// the PL extension with respect to the edge-graph metric.
    pub fn lipschitz(&self, complex: &SimplicialComplex) -> f64 {
        complex
            .edges()
            .iter()
            .zip(complex.lengths())
            .map(|(&[a, b], &l)| (self.values[a] - self.values[b]).abs() / l)
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_break_by_id() {
        let f = ScalarField::new(vec![1.0, 0.0, 1.0, 0.0]).unwrap();
        assert_eq!(f.sweep_order(), vec![1, 3, 0, 2]);
        assert_eq!(f.ranks(), vec![2, 0, 3, 1]);
        assert!(f.below(0, 2));
        assert!(!f.below(2, 0));
        assert!(!f.is_generic());
        assert!(f.rank_field().is_generic());
    }

    #[test]
    fn rejects_nan() {
        assert_eq!(ScalarField::new(vec![0.0, f64::NAN]), Err(FieldError::NotFinite(1)));
    }

    #[test]
    fn snapping_merges_rounding_noise() {
        let f = ScalarField::new(vec![1.0, 1.0 + 2e-16, -1e-17]).unwrap().snapped(1e-12);
        assert_eq!(f.value(0), f.value(1));
        assert_eq!(f.value(2).to_bits(), 0.0f64.to_bits());
    }
}
