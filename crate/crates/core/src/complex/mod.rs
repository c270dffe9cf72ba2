//! Finite simplicial 2-complexes with optional embeddings, and
//! piecewise-linear scalar fields over them.

mod contour;
mod field;
mod generate;
mod geodesic;
mod homology;
pub mod io;

pub use contour::{
    contour_diameter, contours_at, gap_levels, level_set, map_levels, vertex_levels, Contour, ContourError,
    ContourPoint, DiameterMode, LevelSweep,
};
pub use field::{FieldError, ScalarField};
pub use generate::{
    generate_space, random_field, random_smooth_field, FieldKind, Fixture, Generator,
    GeneratorError, SpaceSpec, FIELD_QUANTUM,
};
pub use geodesic::{
    graph_geodesic, graph_geodesic_from_point, AmbientMetric, DistanceMatrix, Euclidean,
    GraphDijkstra, SphereGeodesic,
};
pub use homology::{betti_numbers, boundary_rank, Betti};

use crate::union_find::UnionFind;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type TriangleId = usize;

/// Relative tolerance for agreement between stored edge lengths and the
/// Euclidean distance of embedded endpoints.
pub const LENGTH_REL_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge ({0}, {1}) is degenerate")]
    DegenerateEdge(usize, usize),
    #[error("edge ({0}, {1}) appears twice")]
    DuplicateEdge(usize, usize),
    #[error("edge ({a}, {b}) has non-positive or non-finite length {length}")]
    BadLength { a: usize, b: usize, length: f64 },
    #[error("edge ({a}, {b}) has length {length} but its endpoints are {euclid} apart")]
    LengthMismatch {
        a: usize,
        b: usize,
        length: f64,
        euclid: f64,
    },
    #[error("edge ({0}, {1}) has no length and the complex has no coordinates")]
    MissingLength(usize, usize),
    #[error("triangle ({0}, {1}, {2}) repeats a vertex")]
    DegenerateTriangle(usize, usize, usize),
    #[error("triangle ({0}, {1}, {2}) appears twice")]
    DuplicateTriangle(usize, usize, usize),
    #[error("coordinate of vertex {0} is not finite")]
    BadCoordinate(usize),
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
}

/// A finite abstract simplicial complex of dimension at most two.
///
/// Edges are stored with their endpoints sorted. Every triangle's three
/// edges are present. Boundary markers are derived: an edge is on the
/// boundary when it bounds exactly one triangle, and a vertex is on the
/// boundary when it touches a boundary edge. 1-complexes have no boundary.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    coords: Option<Vec<[f64; 3]>>,
    edges: Vec<[VertexId; 2]>,
    lengths: Vec<f64>,
    triangles: Vec<[VertexId; 3]>,
    triangle_edges: Vec<[EdgeId; 3]>,
    vertex_edge_offsets: Vec<usize>,
    vertex_edge_list: Vec<EdgeId>,
    edge_triangle_offsets: Vec<usize>,
    edge_triangle_list: Vec<TriangleId>,
    vertex_triangle_offsets: Vec<usize>,
    vertex_triangle_list: Vec<TriangleId>,
    boundary_edge: Vec<bool>,
    boundary_vertex: Vec<bool>,
    components: usize,
}

/// Incremental construction of a [`SimplicialComplex`].
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    n_vertices: usize,
    coords: Option<Vec<[f64; 3]>>,
    edges: Vec<(VertexId, VertexId, Option<f64>)>,
    triangles: Vec<[VertexId; 3]>,
}

impl ComplexBuilder {
    pub fn new(n_vertices: usize) -> Self {
        ComplexBuilder {
            n_vertices,
            ..Default::default()
        }
    }

    /// Embedded builder; the vertex count is the number of coordinates.
    pub fn with_coords(coords: Vec<[f64; 3]>) -> Self {
        ComplexBuilder {
            n_vertices: coords.len(),
            coords: Some(coords),
            ..Default::default()
        }
    }

    /// Adds an edge whose length comes from the embedding.
    pub fn edge(&mut self, a: VertexId, b: VertexId) -> &mut Self {
        self.edges.push((a, b, None));
        self
    }

    pub fn edge_with_length(&mut self, a: VertexId, b: VertexId, length: f64) -> &mut Self {
        self.edges.push((a, b, Some(length)));
        self
    }

    /// Adds a triangle. Missing edges are created with embedded lengths.
    pub fn triangle(&mut self, a: VertexId, b: VertexId, c: VertexId) -> &mut Self {
        self.triangles.push([a, b, c]);
        self
    }

    pub fn build(self) -> Result<SimplicialComplex, ComplexError> {
        let n = self.n_vertices;
        if let Some(c) = &self.coords {
            if c.len() != n {
                return Err(ComplexError::CoordinateCount {
                    expected: n,
                    got: c.len(),
                });
            }
            for (i, p) in c.iter().enumerate() {
                if !p.iter().all(|x| x.is_finite()) {
                    return Err(ComplexError::BadCoordinate(i));
                }
            }
        }
        let euclid = |a: usize, b: usize| -> Option<f64> {
            self.coords.as_ref().map(|c| dist3(&c[a], &c[b]))
        };

        let mut index = std::collections::HashMap::<(usize, usize), EdgeId>::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut lengths = Vec::with_capacity(self.edges.len());
        for &(a, b, len) in &self.edges {
            for v in [a, b] {
                if v >= n {
                    return Err(ComplexError::VertexOutOfRange(v));
                }
            }
            if a == b {
                return Err(ComplexError::DegenerateEdge(a, b));
            }
            let key = (a.min(b), a.max(b));
            if index.contains_key(&key) {
                return Err(ComplexError::DuplicateEdge(key.0, key.1));
            }
            let length = match (len, euclid(key.0, key.1)) {
                (Some(l), Some(e)) => {
                    if (l - e).abs() > LENGTH_REL_TOL * l.abs().max(e) {
                        return Err(ComplexError::LengthMismatch {
                            a: key.0,
                            b: key.1,
                            length: l,
                            euclid: e,
                        });
                    }
                    l
                }
                (Some(l), None) => l,
                (None, Some(e)) => e,
                (None, None) => return Err(ComplexError::MissingLength(key.0, key.1)),
            };
            if !(length.is_finite() && length > 0.0) {
                return Err(ComplexError::BadLength {
                    a: key.0,
                    b: key.1,
                    length,
                });
            }
            index.insert(key, edges.len());
            edges.push([key.0, key.1]);
            lengths.push(length);
        }

        let mut seen_tri = std::collections::HashSet::new();
        let mut triangles = Vec::with_capacity(self.triangles.len());
        let mut triangle_edges = Vec::with_capacity(self.triangles.len());
        for &[a, b, c] in &self.triangles {
            for v in [a, b, c] {
                if v >= n {
                    return Err(ComplexError::VertexOutOfRange(v));
                }
            }
            if a == b || b == c || a == c {
                return Err(ComplexError::DegenerateTriangle(a, b, c));
            }
            let mut s = [a, b, c];
            s.sort_unstable();
            if !seen_tri.insert(s) {
                return Err(ComplexError::DuplicateTriangle(s[0], s[1], s[2]));
            }
            let mut te = [0; 3];
            for (k, (p, q)) in [(s[0], s[1]), (s[1], s[2]), (s[0], s[2])].into_iter().enumerate() {
                te[k] = match index.get(&(p, q)) {
                    Some(&e) => e,
                    None => {
                        let length = euclid(p, q).ok_or(ComplexError::MissingLength(p, q))?;
                        if length.is_nan() || length <= 0.0 {
                            return Err(ComplexError::BadLength { a: p, b: q, length });
                        }
                        let e = edges.len();
                        index.insert((p, q), e);
                        edges.push([p, q]);
                        lengths.push(length);
                        e
                    }
                };
            }
            triangles.push(s);
            triangle_edges.push(te);
        }

        Ok(SimplicialComplex::assemble(
            n,
            self.coords,
            edges,
            lengths,
            triangles,
            triangle_edges,
        ))
    }
}

fn csr(n: usize, pairs: impl Iterator<Item = (usize, usize)> + Clone) -> (Vec<usize>, Vec<usize>) {
    let mut offsets = vec![0usize; n + 1];
    for (k, _) in pairs.clone() {
        offsets[k + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut list = vec![0; offsets[n]];
    for (k, v) in pairs {
        list[fill[k]] = v;
        fill[k] += 1;
    }
    (offsets, list)
}

pub(crate) fn dist3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}

impl SimplicialComplex {
    fn assemble(
        n: usize,
        coords: Option<Vec<[f64; 3]>>,
        edges: Vec<[VertexId; 2]>,
        lengths: Vec<f64>,
        triangles: Vec<[VertexId; 3]>,
        triangle_edges: Vec<[EdgeId; 3]>,
    ) -> Self {
        let (vertex_edge_offsets, vertex_edge_list) = csr(
            n,
            edges
                .iter()
                .enumerate()
                .flat_map(|(e, &[a, b])| [(a, e), (b, e)]),
        );
        let (edge_triangle_offsets, edge_triangle_list) = csr(
            edges.len(),
            triangle_edges
                .iter()
                .enumerate()
                .flat_map(|(t, te)| te.iter().map(move |&e| (e, t))),
        );
        let (vertex_triangle_offsets, vertex_triangle_list) = csr(
            n,
            triangles
                .iter()
                .enumerate()
                .flat_map(|(t, tv)| tv.iter().map(move |&v| (v, t))),
        );
        let mut boundary_edge = vec![false; edges.len()];
        let mut boundary_vertex = vec![false; n];
        if !triangles.is_empty() {
            for (e, &[a, b]) in edges.iter().enumerate() {
                let count = edge_triangle_offsets[e + 1] - edge_triangle_offsets[e];
                if count == 1 {
                    boundary_edge[e] = true;
                    boundary_vertex[a] = true;
                    boundary_vertex[b] = true;
                }
            }
        }
        let mut uf = UnionFind::new(n);
        for &[a, b] in &edges {
            uf.union(a, b);
        }
        let components = uf.components().1;
        SimplicialComplex {
            n_vertices: n,
            coords,
            edges,
            lengths,
            triangles,
            triangle_edges,
            vertex_edge_offsets,
            vertex_edge_list,
            edge_triangle_offsets,
            edge_triangle_list,
            vertex_triangle_offsets,
            vertex_triangle_list,
            boundary_edge,
            boundary_vertex,
            components,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn coords(&self) -> Option<&[[f64; 3]]> {
        self.coords.as_deref()
    }

    pub fn coord(&self, v: VertexId) -> Option<[f64; 3]> {
        self.coords.as_ref().map(|c| c[v])
    }

    pub fn edges(&self) -> &[[VertexId; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e]
    }

    pub fn length(&self, e: EdgeId) -> f64 {
        self.lengths[e]
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn triangles(&self) -> &[[VertexId; 3]] {
        &self.triangles
    }

    /// Edges of triangle `t`, ordered `[v0v1, v1v2, v0v2]` for sorted vertices.
    pub fn triangle_edges(&self, t: TriangleId) -> [EdgeId; 3] {
        self.triangle_edges[t]
    }

    pub fn vertex_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.vertex_edge_list[self.vertex_edge_offsets[v]..self.vertex_edge_offsets[v + 1]]
    }

    pub fn edge_triangles(&self, e: EdgeId) -> &[TriangleId] {
        &self.edge_triangle_list[self.edge_triangle_offsets[e]..self.edge_triangle_offsets[e + 1]]
    }

    pub fn vertex_triangles(&self, v: VertexId) -> &[TriangleId] {
        &self.vertex_triangle_list
            [self.vertex_triangle_offsets[v]..self.vertex_triangle_offsets[v + 1]]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.vertex_edges(a)
            .iter()
            .copied()
            .find(|&e| self.other_end(e, a) == b)
    }

    pub fn is_boundary_edge(&self, e: EdgeId) -> bool {
        self.boundary_edge[e]
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.boundary_vertex[v]
    }

    pub fn has_boundary(&self) -> bool {
        self.boundary_edge.iter().any(|&b| b)
    }

    /// Number of connected components of the underlying graph (isolated
    /// vertices count as components).
    pub fn n_components(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components <= 1
    }

    /// Highest simplex dimension present.
    pub fn dimension(&self) -> usize {
        if !self.triangles.is_empty() {
            2
        } else if !self.edges.is_empty() {
            1
        } else {
            0
        }
    }

    /// True when every edge bounds exactly two triangles and every vertex
    /// link is a single cycle.
    pub fn is_closed_surface(&self) -> bool {
        if self.triangles.is_empty() {
            return false;
        }
        if (0..self.n_edges()).any(|e| self.edge_triangles(e).len() != 2) {
            return false;
        }
        (0..self.n_vertices).all(|v| self.link_is_single_cycle(v))
    }

    fn link_is_single_cycle(&self, v: VertexId) -> bool {
        // Link edges are the edges opposite to v in its triangles; they must
        // form one cycle through all link vertices.
        let tris = self.vertex_triangles(v);
        if tris.is_empty() {
            return false;
        }
        let mut link = Vec::with_capacity(tris.len());
        for &t in tris {
            let others: Vec<_> = self.triangles[t].iter().copied().filter(|&u| u != v).collect();
            link.push((others[0], others[1]));
        }
        let mut verts: Vec<_> = link.iter().flat_map(|&(a, b)| [a, b]).collect();
        verts.sort_unstable();
        verts.dedup();
        if verts.len() != link.len() {
            return false;
        }
        let pos = |u: usize| verts.binary_search(&u).unwrap();
        let mut uf = UnionFind::new(verts.len());
        let mut degree = vec![0u8; verts.len()];
        for &(a, b) in &link {
            degree[pos(a)] += 1;
            degree[pos(b)] += 1;
            uf.union(pos(a), pos(b));
        }
        degree.iter().all(|&d| d == 2) && uf.components().1 == 1
    }

    /// Euclidean position of an edge point at parameter `t` from `edge[0]`.
    pub fn edge_point(&self, e: EdgeId, t: f64) -> Option<[f64; 3]> {
        let c = self.coords.as_ref()?;
        let [a, b] = self.edges[e];
        let (p, q) = (c[a], c[b]);
        Some([
            p[0] + t * (q[0] - p[0]),
            p[1] + t * (q[1] - p[1]),
            p[2] + t * (q[2] - p[2]),
        ])
    }

    pub fn max_edge_length(&self) -> f64 {
        self.lengths.iter().copied().fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        let mut b = ComplexBuilder::with_coords(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        b.triangle(0, 1, 2);
        b.build().unwrap()
    }

    #[test]
    fn triangle_edges_are_created() {
        let c = triangle();
        assert_eq!(c.n_edges(), 3);
        assert!((c.length(c.find_edge(1, 2).unwrap()) - 2f64.sqrt()).abs() < 1e-15);
        assert!(c.has_boundary());
        assert!((0..3).all(|v| c.is_boundary_vertex(v)));
        assert_eq!(c.n_components(), 1);
        assert_eq!(c.dimension(), 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut b = ComplexBuilder::new(2);
        b.edge_with_length(0, 1, 0.0);
        assert!(matches!(b.build(), Err(ComplexError::BadLength { .. })));

        let mut b = ComplexBuilder::new(2);
        b.edge_with_length(0, 1, 1.0).edge_with_length(1, 0, 1.0);
        assert!(matches!(b.build(), Err(ComplexError::DuplicateEdge(0, 1))));

        let mut b = ComplexBuilder::new(3);
        b.edge_with_length(0, 1, 1.0).triangle(0, 1, 2);
        assert!(matches!(b.build(), Err(ComplexError::MissingLength(..))));

        let mut b = ComplexBuilder::with_coords(vec![[0.0; 3], [1.0, 0.0, 0.0]]);
        b.edge_with_length(0, 1, 1.5);
        assert!(matches!(b.build(), Err(ComplexError::LengthMismatch { .. })));

        let mut b = ComplexBuilder::new(2);
        b.edge_with_length(0, 4, 1.0);
        assert_eq!(b.build().unwrap_err(), ComplexError::VertexOutOfRange(4));
    }

    #[test]
    fn components_count_isolated_vertices() {
        let mut b = ComplexBuilder::new(4);
        b.edge_with_length(0, 1, 1.0);
        let c = b.build().unwrap();
        assert_eq!(c.n_components(), 3);
        assert!(!c.is_connected());
    }
}
