//! Level sets of PL fields and their connected components (contours).
//!
//! A level set at `y` consists of the crossing points of edges whose
//! endpoint values straddle `y` strictly, plus the vertices whose value is
//! exactly `y`. Inside a triangle the level set of a linear function is
//! connected, so components are found by uniting the level-set elements of
//! every triangle and of every flat edge.

use super::{dist3, EdgeId, GraphDijkstra, ScalarField, SimplicialComplex, VertexId};
use super::{AmbientMetric, Euclidean};
use crate::exec::Exec;
use crate::union_find::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContourError {
    #[error("non-generic level {level}: vertex {vertex} has exactly this value")]
    NonGenericLevel { level: f64, vertex: VertexId },
    #[error("extrinsic diameter requires vertex coordinates")]
    NoCoordinates,
    #[error("contour points are not connected in the complex")]
    Disconnected,
    #[error("field has {got} values, complex has {expected} vertices")]
    FieldMismatch { expected: usize, got: usize },
}

/// A point of a level set: on an edge interior, or at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ContourPoint {
    /// `t ∈ (0, 1)` is measured from the edge's first (smaller-id) endpoint.
    Crossing { edge: EdgeId, t: f64 },
    Vertex(VertexId),
}

impl ContourPoint {
    /// Graph vertices with the distance from this point along its edge.
    pub fn anchors(&self, complex: &SimplicialComplex) -> Vec<(VertexId, f64)> {
        match *self {
            ContourPoint::Vertex(v) => vec![(v, 0.0)],
            ContourPoint::Crossing { edge, t } => {
                let [a, b] = complex.edge(edge);
                let l = complex.length(edge);
                vec![(a, t * l), (b, (1.0 - t) * l)]
            }
        }
    }

    /// Direct distance along a shared edge, if both points lie on one.
    pub fn same_edge_distance(&self, complex: &SimplicialComplex, other: &ContourPoint) -> Option<f64> {
        match (*self, *other) {
            (ContourPoint::Crossing { edge: e, t: s }, ContourPoint::Crossing { edge: f, t }) if e == f => {
                Some((s - t).abs() * complex.length(e))
            }
            (ContourPoint::Vertex(u), ContourPoint::Vertex(v)) if u == v => Some(0.0),
            _ => None,
        }
    }

    pub fn position(&self, complex: &SimplicialComplex) -> Option<[f64; 3]> {
        match *self {
            ContourPoint::Vertex(v) => complex.coord(v),
            ContourPoint::Crossing { edge, t } => complex.edge_point(edge, t),
        }
    }

    pub fn on_boundary(&self, complex: &SimplicialComplex) -> bool {
        match *self {
            ContourPoint::Vertex(v) => complex.is_boundary_vertex(v),
            ContourPoint::Crossing { edge, .. } => complex.is_boundary_edge(edge),
        }
    }
}

/// One connected component of a level set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    pub level: f64,
    pub component: usize,
    pub points: Vec<ContourPoint>,
    /// Straight pieces inside triangles and along flat edges, as index
    /// pairs into `points`.
    pub segments: Vec<(usize, usize)>,
}

impl Contour {
    /// Sum of Euclidean segment lengths.
    pub fn length(&self, complex: &SimplicialComplex) -> Option<f64> {
        let pos: Option<Vec<[f64; 3]>> = self.points.iter().map(|p| p.position(complex)).collect();
        let pos = pos?;
        Some(self.segments.iter().map(|&(i, j)| dist3(&pos[i], &pos[j])).sum())
    }

    /// Points that lie on the boundary of the complex.
    pub fn boundary_points(&self, complex: &SimplicialComplex) -> Vec<ContourPoint> {
        self.points
            .iter()
            .copied()
            .filter(|p| p.on_boundary(complex))
            .collect()
    }

    /// Crossing edges (vertex points excluded).
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.points.iter().filter_map(|p| match p {
            ContourPoint::Crossing { edge, .. } => Some(*edge),
            ContourPoint::Vertex(_) => None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiameterMode {
    Extrinsic,
    /// Shortest paths in the ambient edge graph.
    #[default]
    Intrinsic,
}

/// Diameter of a contour measured over its points.
pub fn contour_diameter(
    complex: &SimplicialComplex,
    contour: &Contour,
    mode: DiameterMode,
) -> Result<f64, ContourError> {
    match mode {
        DiameterMode::Extrinsic => {
            if complex.coords().is_none() {
                return Err(ContourError::NoCoordinates);
            }
            Ok(Euclidean.diameter(complex, &contour.points))
        }
        DiameterMode::Intrinsic => {
            let d = GraphDijkstra::default().diameter(complex, &contour.points);
            if d.is_finite() {
                Ok(d)
            } else {
                Err(ContourError::Disconnected)
            }
        }
    }
}

/// Contours at a generic level; rejects levels equal to a vertex value.
pub fn contours_at(
    complex: &SimplicialComplex,
    field: &ScalarField,
    level: f64,
) -> Result<Vec<Contour>, ContourError> {
    check_field(complex, field)?;
    if let Some(v) = field.values().iter().position(|&x| x == level) {
        return Err(ContourError::NonGenericLevel { level, vertex: v });
    }
    Ok(level_set(complex, field, level))
}

/// Contours at any level, including critical ones.
pub fn level_set(complex: &SimplicialComplex, field: &ScalarField, level: f64) -> Vec<Contour> {
    let f = field.values();
    let crossing: Vec<EdgeId> = (0..complex.n_edges())
        .filter(|&e| straddles(f, complex.edge(e), level))
        .collect();
    let at_level: Vec<VertexId> = (0..complex.n_vertices()).filter(|&v| f[v] == level).collect();
    Extractor::new(complex).extract(complex, field, level, &crossing, &at_level)
}

fn check_field(complex: &SimplicialComplex, field: &ScalarField) -> Result<(), ContourError> {
    if field.len() != complex.n_vertices() {
        return Err(ContourError::FieldMismatch {
            expected: complex.n_vertices(),
            got: field.len(),
        });
    }
    Ok(())
}

#[inline]
fn straddles(f: &[f64], [a, b]: [VertexId; 2], level: f64) -> bool {
    let (lo, hi) = if f[a] < f[b] { (f[a], f[b]) } else { (f[b], f[a]) };
    lo < level && level < hi
}

/// Scratch space for repeated extraction.
struct Extractor {
    edge_stamp: Vec<u32>,
    edge_slot: Vec<u32>,
    vertex_stamp: Vec<u32>,
    vertex_slot: Vec<u32>,
    stamp: u32,
    uf: UnionFind,
}

impl Extractor {
    fn new(complex: &SimplicialComplex) -> Self {
        Extractor {
            edge_stamp: vec![0; complex.n_edges()],
            edge_slot: vec![0; complex.n_edges()],
            vertex_stamp: vec![0; complex.n_vertices()],
            vertex_slot: vec![0; complex.n_vertices()],
            stamp: 0,
            uf: UnionFind::new(0),
        }
    }

    fn extract(
        &mut self,
        complex: &SimplicialComplex,
        field: &ScalarField,
        level: f64,
        crossing: &[EdgeId],
        at_level: &[VertexId],
    ) -> Vec<Contour> {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.edge_stamp.iter_mut().for_each(|s| *s = 0);
            self.vertex_stamp.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        let n_elems = crossing.len() + at_level.len();
        for (i, &e) in crossing.iter().enumerate() {
            self.edge_stamp[e] = stamp;
            self.edge_slot[e] = i as u32;
        }
        for (i, &v) in at_level.iter().enumerate() {
            self.vertex_stamp[v] = stamp;
            self.vertex_slot[v] = (crossing.len() + i) as u32;
        }
        self.uf.reset(n_elems);
        let mut segments: Vec<(usize, usize)> = Vec::new();

        let slot_of_edge = |s: &Self, e: EdgeId| (s.edge_stamp[e] == stamp).then(|| s.edge_slot[e] as usize);
        let slot_of_vertex =
            |s: &Self, v: VertexId| (s.vertex_stamp[v] == stamp).then(|| s.vertex_slot[v] as usize);

        // Triangles touching the level set. Each is visited from its first
        // element only, so segments are not duplicated.
        let mut elems: Vec<usize> = Vec::with_capacity(3);
        let mut visit_triangle = |s: &mut Self, t: usize, from: usize, segments: &mut Vec<(usize, usize)>| {
            elems.clear();
            let tv = complex.triangles()[t];
            for e in complex.triangle_edges(t) {
                if let Some(k) = slot_of_edge(s, e) {
                    elems.push(k);
                }
            }
            for v in tv {
                if let Some(k) = slot_of_vertex(s, v) {
                    elems.push(k);
                }
            }
            if elems.iter().min() != Some(&from) {
                return;
            }
            for w in elems.windows(2) {
                s.uf.union(w[0], w[1]);
            }
            // Two elements give one segment, unless both are vertices: that
            // is a flat edge and is recorded below.
            if elems.len() == 2 && !(elems[0] >= crossing.len() && elems[1] >= crossing.len()) {
                segments.push((elems[0], elems[1]));
            }
        };
        for (i, &e) in crossing.iter().enumerate() {
            for &t in complex.edge_triangles(e) {
                visit_triangle(self, t, i, &mut segments);
            }
        }
        for (i, &v) in at_level.iter().enumerate() {
            let slot = crossing.len() + i;
            for &t in complex.vertex_triangles(v) {
                visit_triangle(self, t, slot, &mut segments);
            }
            for &e in complex.vertex_edges(v) {
                let w = complex.other_end(e, v);
                if let Some(k) = slot_of_vertex(self, w) {
                    self.uf.union(slot, k);
                    if slot < k {
                        segments.push((slot, k));
                    }
                }
            }
        }

        let (labels, k) = self.uf.components();
        let f = field.values();
        let mut contours: Vec<Contour> = (0..k)
            .map(|c| Contour {
                level,
                component: c,
                points: Vec::new(),
                segments: Vec::new(),
            })
            .collect();
        let mut local = vec![0usize; n_elems];
        for (i, &e) in crossing.iter().enumerate() {
            let [a, b] = complex.edge(e);
            let t = (level - f[a]) / (f[b] - f[a]);
            let c = &mut contours[labels[i]];
            local[i] = c.points.len();
            c.points.push(ContourPoint::Crossing { edge: e, t });
        }
        for (i, &v) in at_level.iter().enumerate() {
            let slot = crossing.len() + i;
            let c = &mut contours[labels[slot]];
            local[slot] = c.points.len();
            c.points.push(ContourPoint::Vertex(v));
        }
        for (a, b) in segments {
            contours[labels[a]].segments.push((local[a], local[b]));
        }
        contours
    }
}

/// Extracts contours at an increasing sequence of levels, maintaining the
/// set of straddling edges incrementally.
pub struct LevelSweep<'a> {
    complex: &'a SimplicialComplex,
    field: &'a ScalarField,
    by_low: Vec<EdgeId>,
    next_edge: usize,
    active: Vec<EdgeId>,
    by_value: Vec<VertexId>,
    extractor: Extractor,
    last_level: f64,
}

impl<'a> LevelSweep<'a> {
    pub fn new(complex: &'a SimplicialComplex, field: &'a ScalarField) -> Self {
        let f = field.values();
        let low = |e: EdgeId| {
            let [a, b] = complex.edge(e);
            f[a].min(f[b])
        };
        let mut by_low: Vec<EdgeId> = (0..complex.n_edges()).collect();
        by_low.sort_by(|&x, &y| low(x).total_cmp(&low(y)));
        let mut by_value: Vec<VertexId> = (0..complex.n_vertices()).collect();
        by_value.sort_by(|&x, &y| f[x].total_cmp(&f[y]).then(x.cmp(&y)));
        LevelSweep {
            complex,
            field,
            by_low,
            next_edge: 0,
            active: Vec::new(),
            by_value,
            extractor: Extractor::new(complex),
            last_level: f64::NEG_INFINITY,
        }
    }

    /// Contours at `level`. Levels must be passed in nondecreasing order.
    pub fn contours(&mut self, level: f64) -> Vec<Contour> {
        assert!(level >= self.last_level, "levels must be nondecreasing");
        self.last_level = level;
        let f = self.field.values();
        let complex = self.complex;
        while self.next_edge < self.by_low.len() {
            let e = self.by_low[self.next_edge];
            let [a, b] = complex.edge(e);
            if f[a].min(f[b]) < level {
                self.active.push(e);
                self.next_edge += 1;
            } else {
                break;
            }
        }
        self.active.retain(|&e| {
            let [a, b] = complex.edge(e);
            f[a].max(f[b]) > level
        });
        let mut crossing = self.active.clone();
        crossing.sort_unstable();
        let start = self.by_value.partition_point(|&v| f[v] < level);
        let end = self.by_value.partition_point(|&v| f[v] <= level);
        let mut at_level = self.by_value[start..end].to_vec();
        at_level.sort_unstable();
        self.extractor
            .extract(complex, self.field, level, &crossing, &at_level)
    }
}

/// Applies `f` to the contours at each of `levels` (sorted ascending),
/// returning results in level order. Levels are split into contiguous
/// chunks, each swept independently.
pub fn map_levels<T, F>(
    complex: &SimplicialComplex,
    field: &ScalarField,
    levels: &[f64],
    exec: Exec,
    f: F,
) -> Vec<T>
where
    T: Send,
    F: Fn(f64, &[Contour]) -> T + Sync,
{
    debug_assert!(levels.windows(2).all(|w| w[0] <= w[1]));
    let chunks = if exec.is_parallel() { 64.min(levels.len().max(1)) } else { 1 };
    let size = levels.len().div_ceil(chunks).max(1);
    let parts = exec.map_range(levels.len().div_ceil(size), |c| {
        let mut sweep = LevelSweep::new(complex, field);
        levels[c * size..((c + 1) * size).min(levels.len())]
            .iter()
            .map(|&y| f(y, &sweep.contours(y)))
            .collect::<Vec<T>>()
    });
    parts.into_iter().flatten().collect()
}

/// Generic levels strictly between consecutive distinct vertex values,
/// `per_gap` evenly spaced levels in each gap.
pub fn gap_levels(field: &ScalarField, per_gap: usize) -> Vec<f64> {
    let mut vals = field.values().to_vec();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    let per_gap = per_gap.max(1);
    let mut levels = Vec::with_capacity(vals.len() * per_gap);
    for w in vals.windows(2) {
        for j in 1..=per_gap {
            let y = w[0] + (w[1] - w[0]) * (j as f64) / (per_gap as f64 + 1.0);
            if y > w[0] && y < w[1] {
                levels.push(y);
            }
        }
    }
    levels
}

/// Distinct vertex values, ascending.
pub fn vertex_levels(field: &ScalarField) -> Vec<f64> {
    let mut vals = field.values().to_vec();
    vals.sort_by(f64::total_cmp);
    vals.dedup();
    vals
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{generate_space, Generator, SpaceSpec};

    fn square() -> SimplicialComplex {
        let mut b = crate::complex::ComplexBuilder::with_coords(vec![
            [0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [1.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
        ]);
        b.triangle(0, 1, 2).triangle(0, 2, 3);
        b.build().unwrap()
    }

    #[test]
    fn linear_field_gives_one_chord() {
        let c = square();
        let f = ScalarField::new(vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let cs = contours_at(&c, &f, 0.5).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].points.len(), 3);
        assert_eq!(cs[0].segments.len(), 2);
        assert!((cs[0].length(&c).unwrap() - 1.0).abs() < 1e-12);
        let d = contour_diameter(&c, &cs[0], DiameterMode::Extrinsic).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        for p in &cs[0].points {
            if let ContourPoint::Crossing { edge, t } = *p {
                let [a, b] = c.edge(edge);
                assert!((f.lerp(a, b, t) - 0.5).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn rejects_vertex_level_and_empty_above_max() {
        let c = square();
        let f = ScalarField::new(vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            contours_at(&c, &f, 1.0),
            Err(ContourError::NonGenericLevel { vertex: 1, .. })
        ));
        assert!(contours_at(&c, &f, 2.0).unwrap().is_empty());
    }

    #[test]
    fn critical_level_includes_flat_pieces() {
        let c = square();
        let f = ScalarField::new(vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let cs = level_set(&c, &f, 1.0);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].points, vec![ContourPoint::Vertex(1), ContourPoint::Vertex(2)]);
        assert_eq!(cs[0].segments.len(), 1);
    }

    #[test]
    fn single_point_contour_has_zero_diameter() {
        let mut b = crate::complex::ComplexBuilder::new(2);
        b.edge_with_length(0, 1, 1.0);
        let c = b.build().unwrap();
        let f = ScalarField::new(vec![0.0, 1.0]).unwrap();
        let cs = contours_at(&c, &f, 0.3).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(contour_diameter(&c, &cs[0], DiameterMode::Intrinsic).unwrap(), 0.0);
        assert_eq!(
            contour_diameter(&c, &cs[0], DiameterMode::Extrinsic),
            Err(ContourError::NoCoordinates)
        );
    }

    #[test]
    fn sweep_matches_direct_extraction() {
        let fx = generate_space(&SpaceSpec::new(Generator::Torus, 0.5)).unwrap();
        let f = fx.field.unwrap();
        let mut sweep = LevelSweep::new(&fx.complex, &f);
        for y in gap_levels(&f, 2).into_iter().step_by(7) {
            let a = sweep.contours(y);
            let b = level_set(&fx.complex, &f, y);
            assert_eq!(a, b);
        }
        let levels = gap_levels(&f, 1);
        let seq = map_levels(&fx.complex, &f, &levels, Exec::Sequential, |_, cs| cs.len());
        let par = map_levels(&fx.complex, &f, &levels, Exec::default(), |_, cs| cs.len());
        assert_eq!(seq, par);
    }
}
