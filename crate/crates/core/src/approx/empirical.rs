//! Quantities measured on a mesh: the distortion of the quotient map,
//! contour diameters, and contour thickness.

use super::ApproxError;
use crate::complex::{
    gap_levels, graph_geodesic, map_levels, vertex_levels, AmbientMetric, DistanceMatrix,
    ScalarField, SimplicialComplex, VertexId,
};
use crate::exec::Exec;
use crate::reeb::{QuotientMap, ReebGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which vertex pairs enter the distortion maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairs {
    All,
    /// `k` pairs of distinct vertices drawn uniformly from a seeded stream.
    Sample { k: usize, seed: u64 },
}

/// The pair attaining the distortion, with both distances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distortion {
    pub value: f64,
    pub pair: (VertexId, VertexId),
    pub ambient: f64,
    pub reeb: f64,
}

impl Distortion {
    const ZERO: Distortion = Distortion {
        value: 0.0,
        pair: (0, 0),
        ambient: 0.0,
        reeb: 0.0,
    };

    /// Larger value wins; ties go to the lexicographically smaller pair.
    fn better(self, other: Distortion) -> Distortion {
        if other.value > self.value || (other.value == self.value && other.pair < self.pair) {
            other
        } else {
            self
        }
    }
}

fn check(complex: &SimplicialComplex, map: &QuotientMap) -> Result<(), ApproxError> {
    if map.image.len() != complex.n_vertices() {
        return Err(ApproxError::Mismatch(format!(
            "quotient map covers {} vertices, complex has {}",
            map.image.len(),
            complex.n_vertices()
        )));
    }
    if !complex.is_connected() {
        return Err(ApproxError::Disconnected);
    }
    Ok(())
}

/// Targets per source: all `j > i`, or the sampled pairs grouped by their
/// smaller endpoint.
fn schedule(n: usize, pairs: Pairs) -> Vec<(VertexId, Vec<VertexId>)> {
    match pairs {
        Pairs::All => (0..n.saturating_sub(1)).map(|i| (i, (i + 1..n).collect())).collect(),
        Pairs::Sample { k, seed } => {
            if n < 2 {
                return Vec::new();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut by_source: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
            for _ in 0..k {
                let a = rng.gen_range(0..n);
                let mut b = rng.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                by_source.entry(a.min(b)).or_default().push(a.max(b));
            }
            by_source.into_iter().collect()
        }
    }
}

fn distortion_with<R>(
    reeb: &ReebGraph,
    map: &QuotientMap,
    jobs: &[(VertexId, Vec<VertexId>)],
    exec: Exec,
    row: R,
) -> Distortion
where
    R: Fn(VertexId) -> Vec<f64> + Sync + Send,
{
    let parts = exec.map(jobs, |(i, targets)| {
        let dx = row(*i);
        let from = map.get(*i);
        let tree = reeb.distances_from(from);
        let mut best = Distortion::ZERO;
        for &j in targets {
            let dr = reeb.distance_via(&tree, from, map.get(j));
            let cand = Distortion {
                value: (dx[j] - dr).abs(),
                pair: (*i, j),
                ambient: dx[j],
                reeb: dr,
            };
            best = best.better(cand);
        }
        best
    });
    parts.into_iter().fold(Distortion::ZERO, Distortion::better)
}

/// `max |d_X(x, x') − d_R(φ(x), φ(x'))|` over vertex pairs, with `d_X` the
/// edge-graph geodesic metric. A lower bound on the distortion of `φ`.
pub fn distortion(
    complex: &SimplicialComplex,
    reeb: &ReebGraph,
    map: &QuotientMap,
    pairs: Pairs,
    exec: Exec,
) -> Result<Distortion, ApproxError> {
    check(complex, map)?;
    let jobs = schedule(complex.n_vertices(), pairs);
    Ok(distortion_with(reeb, map, &jobs, exec, |i| graph_geodesic(complex, i)))
}

/// [`distortion`] against a precomputed vertex metric.
pub fn distortion_from_matrix(
    complex: &SimplicialComplex,
    metric: &DistanceMatrix,
    reeb: &ReebGraph,
    map: &QuotientMap,
    pairs: Pairs,
    exec: Exec,
) -> Result<Distortion, ApproxError> {
    check(complex, map)?;
    if metric.n() != complex.n_vertices() {
        return Err(ApproxError::Mismatch(format!(
            "distance matrix has {} vertices, complex has {}",
            metric.n(),
            complex.n_vertices()
        )));
    }
    let jobs = schedule(complex.n_vertices(), pairs);
    Ok(distortion_with(reeb, map, &jobs, exec, |i| metric.row(i).to_vec()))
}

/// Levels at which contours are sampled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelSampling {
    /// `per_gap` evenly spaced generic levels inside each gap between
    /// consecutive vertex values, optionally with the vertex values
    /// themselves.
    Gaps { per_gap: usize, vertex_levels: bool },
    /// `count` evenly spaced levels from the minimum to the maximum value,
    /// both included.
    Uniform { count: usize },
}

impl Default for LevelSampling {
    fn default() -> Self {
        LevelSampling::Gaps {
            per_gap: 1,
            vertex_levels: false,
        }
    }
}

impl LevelSampling {
    /// Ascending sampled levels.
    pub fn levels(&self, field: &ScalarField) -> Vec<f64> {
        match *self {
            LevelSampling::Gaps { per_gap, vertex_levels: with_vertices } => {
                let mut levels = gap_levels(field, per_gap);
                if with_vertices {
                    levels.extend(vertex_levels(field));
                    levels.sort_by(f64::total_cmp);
                }
                levels
            }
            LevelSampling::Uniform { count } => {
                if field.is_empty() {
                    return Vec::new();
                }
                let (lo, hi) = (field.min(), field.max());
                if count < 2 || lo == hi {
                    return vec![lo];
                }
                let mut levels: Vec<f64> = (0..count)
                    .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
                    .collect();
                levels[count - 1] = hi;
                levels
            }
        }
    }
}

/// The widest sampled contour.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContourDiameter {
    pub value: f64,
    pub level: f64,
    pub levels_sampled: usize,
}

/// Largest diameter, under `metric`, of any contour at the sampled levels.
/// Converges to the supremum from below as the sampling refines.
pub fn max_contour_diameter(
    complex: &SimplicialComplex,
    field: &ScalarField,
    sampling: LevelSampling,
    metric: &dyn AmbientMetric,
    exec: Exec,
) -> Result<ContourDiameter, ApproxError> {
    if field.len() != complex.n_vertices() {
        return Err(ApproxError::Mismatch(format!(
            "field has {} values, complex has {} vertices",
            field.len(),
            complex.n_vertices()
        )));
    }
    let levels = sampling.levels(field);
    let per_level = map_levels(complex, field, &levels, exec, |y, contours| {
        let d = contours
            .iter()
            .map(|c| metric.diameter(complex, &c.points))
            .fold(0.0, f64::max);
        (d, y)
    });
    let mut best = ContourDiameter {
        value: 0.0,
        level: levels.first().copied().unwrap_or(0.0),
        levels_sampled: levels.len(),
    };
    for (d, y) in per_level {
        if !d.is_finite() {
            return Err(ApproxError::Disconnected);
        }
        if d > best.value {
            best.value = d;
            best.level = y;
        }
    }
    Ok(best)
}

/// Thickness of a surface field: the least length/diameter ratio over
/// sampled contours.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thickness {
    /// `+∞` when no contour qualified.
    pub value: f64,
    pub level: f64,
    pub contours: usize,
    /// Contours of zero length or diameter, left out of the minimum.
    pub degenerate: usize,
}

impl Thickness {
    /// Surfaces satisfy `T ≥ 1`; `slack` absorbs discretization.
    pub fn at_least_one(&self, slack: f64) -> bool {
        self.value >= 1.0 - slack
    }
}

pub fn thickness(
    complex: &SimplicialComplex,
    field: &ScalarField,
    sampling: LevelSampling,
    metric: &dyn AmbientMetric,
    exec: Exec,
) -> Result<Thickness, ApproxError> {
    if complex.dimension() != 2 {
        return Err(ApproxError::Mismatch("thickness needs a 2-dimensional complex".into()));
    }
    if complex.coords().is_none() {
        return Err(ApproxError::Mismatch("contour length needs coordinates".into()));
    }
    if field.len() != complex.n_vertices() {
        return Err(ApproxError::Mismatch(format!(
            "field has {} values, complex has {} vertices",
            field.len(),
            complex.n_vertices()
        )));
    }
    let levels = sampling.levels(field);
    let per_level = map_levels(complex, field, &levels, exec, |y, contours| {
        let mut best = (f64::INFINITY, y, 0usize, 0usize);
        for c in contours {
            let len = c.length(complex).unwrap_or(0.0);
            let diam = metric.diameter(complex, &c.points);
            if len <= 0.0 || diam <= 0.0 {
                best.3 += 1;
                continue;
            }
            best.2 += 1;
            best.0 = best.0.min(len / diam);
        }
        best
    });
    let mut out = Thickness {
        value: f64::INFINITY,
        level: levels.first().copied().unwrap_or(0.0),
        contours: 0,
        degenerate: 0,
    };
    for (t, y, n, d) in per_level {
        out.contours += n;
        out.degenerate += d;
        if t < out.value {
            out.value = t;
            out.level = y;
        }
    }
    Ok(out)
}
