//! Shortest-path metric on the weighted edge graph, and the ambient metrics
//! used to measure contour diameters.

use super::{dist3, ContourPoint, SimplicialComplex, VertexId};
use crate::exec::Exec;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

#[derive(Clone, Copy, PartialEq)]
struct Item {
    dist: f64,
    vertex: VertexId,
}

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multi-source Dijkstra; unreachable vertices get `f64::INFINITY`.
fn dijkstra(complex: &SimplicialComplex, seeds: &[(VertexId, f64)]) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; complex.n_vertices()];
    let mut heap = BinaryHeap::new();
    for &(v, d) in seeds {
        if d < dist[v] {
            dist[v] = d;
            heap.push(Item { dist: d, vertex: v });
        }
    }
    while let Some(Item { dist: d, vertex: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &e in complex.vertex_edges(u) {
            let w = complex.other_end(e, u);
            let nd = d + complex.length(e);
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Item { dist: nd, vertex: w });
            }
        }
    }
    dist
}

/// Exact single-source shortest-path distances on the edge graph.
pub fn graph_geodesic(complex: &SimplicialComplex, source: VertexId) -> Vec<f64> {
    dijkstra(complex, &[(source, 0.0)])
}

/// Distances from a point that may lie inside an edge.
pub fn graph_geodesic_from_point(complex: &SimplicialComplex, p: &ContourPoint) -> Vec<f64> {
    dijkstra(complex, &p.anchors(complex))
}

/// Dense all-pairs vertex distance table.
#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn all_pairs(complex: &SimplicialComplex, exec: Exec) -> Self {
        let n = complex.n_vertices();
        let rows = exec.map_range(n, |s| graph_geodesic(complex, s));
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            data.extend(row);
        }
        DistanceMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: VertexId, b: VertexId) -> f64 {
        self.data[a * self.n + b]
    }

    pub fn row(&self, a: VertexId) -> &[f64] {
        &self.data[a * self.n..(a + 1) * self.n]
    }
}

/// A metric on points of the complex (vertices and edge points), used for
/// contour diameters.
pub trait AmbientMetric: Sync {
    fn distance(&self, complex: &SimplicialComplex, p: &ContourPoint, q: &ContourPoint) -> f64;

    /// Largest pairwise distance; 0 for fewer than two points.
    fn diameter(&self, complex: &SimplicialComplex, points: &[ContourPoint]) -> f64 {
        let mut best = 0.0f64;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                best = best.max(self.distance(complex, &points[i], &points[j]));
            }
        }
        best
    }
}

/// Straight-line distance in the embedding.
#[derive(Clone, Copy, Debug, Default)]
pub struct Euclidean;

impl AmbientMetric for Euclidean {
    fn distance(&self, complex: &SimplicialComplex, p: &ContourPoint, q: &ContourPoint) -> f64 {
        let (a, b) = (
            p.position(complex).expect("euclidean metric needs coordinates"),
            q.position(complex).expect("euclidean metric needs coordinates"),
        );
        dist3(&a, &b)
    }

    fn diameter(&self, complex: &SimplicialComplex, points: &[ContourPoint]) -> f64 {
        let pos: Vec<[f64; 3]> = points
            .iter()
            .map(|p| p.position(complex).expect("euclidean metric needs coordinates"))
            .collect();
        let mut best = 0.0f64;
        for (i, a) in pos.iter().enumerate() {
            for b in &pos[i + 1..] {
                best = best.max(dist3(a, b));
            }
        }
        best
    }
}

impl DistanceMatrix {
    fn via_anchors(&self, pa: &[(VertexId, f64)], qa: &[(VertexId, f64)]) -> f64 {
        let mut best = f64::INFINITY;
        for &(a, oa) in pa {
            for &(b, ob) in qa {
                best = best.min(oa + self.get(a, b) + ob);
            }
        }
        best
    }
}

impl AmbientMetric for DistanceMatrix {
    fn distance(&self, complex: &SimplicialComplex, p: &ContourPoint, q: &ContourPoint) -> f64 {
        let direct = p.same_edge_distance(complex, q).unwrap_or(f64::INFINITY);
        direct.min(self.via_anchors(&p.anchors(complex), &q.anchors(complex)))
    }

    fn diameter(&self, complex: &SimplicialComplex, points: &[ContourPoint]) -> f64 {
        let anchors: Vec<Vec<(VertexId, f64)>> = points.iter().map(|p| p.anchors(complex)).collect();
        let mut best = 0.0f64;
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let direct = points[i].same_edge_distance(complex, &points[j]).unwrap_or(f64::INFINITY);
                best = best.max(direct.min(self.via_anchors(&anchors[i], &anchors[j])));
            }
        }
        best
    }
}

/// Graph metric evaluated by one Dijkstra run per point; for complexes too
/// large for a [`DistanceMatrix`].
#[derive(Clone, Copy, Debug, Default)]
pub struct GraphDijkstra {
    pub exec: Exec,
}

impl GraphDijkstra {
    fn from_tree(complex: &SimplicialComplex, tree: &[f64], p: &ContourPoint, q: &ContourPoint) -> f64 {
        let mut best = p.same_edge_distance(complex, q).unwrap_or(f64::INFINITY);
        for (b, ob) in q.anchors(complex) {
            best = best.min(tree[b] + ob);
        }
        best
    }
}

impl AmbientMetric for GraphDijkstra {
    fn distance(&self, complex: &SimplicialComplex, p: &ContourPoint, q: &ContourPoint) -> f64 {
        let tree = graph_geodesic_from_point(complex, p);
        Self::from_tree(complex, &tree, p, q)
    }

    fn diameter(&self, complex: &SimplicialComplex, points: &[ContourPoint]) -> f64 {
        if points.len() < 2 {
            return 0.0;
        }
        self.exec.max_range(points.len(), |i| {
            let tree = graph_geodesic_from_point(complex, &points[i]);
            points[i + 1..]
                .iter()
                .map(|q| Self::from_tree(complex, &tree, &points[i], q))
                .fold(0.0, f64::max)
        })
    }
}

/// Great-circle distance on a round sphere; positions are projected radially
/// onto the sphere first. This is the intrinsic metric of any geodesically
/// convex region of the sphere, such as a closed hemisphere.
#[derive(Clone, Copy, Debug)]
pub struct SphereGeodesic {
    pub center: [f64; 3],
    pub radius: f64,
}

impl SphereGeodesic {
    pub fn unit() -> Self {
        SphereGeodesic {
            center: [0.0; 3],
            radius: 1.0,
        }
    }

    pub fn between(&self, a: [f64; 3], b: [f64; 3]) -> f64 {
        let u = [a[0] - self.center[0], a[1] - self.center[1], a[2] - self.center[2]];
        let v = [b[0] - self.center[0], b[1] - self.center[1], b[2] - self.center[2]];
        let cross = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        let sin = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        let cos = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
        self.radius * sin.atan2(cos)
    }
}

impl AmbientMetric for SphereGeodesic {
    fn distance(&self, complex: &SimplicialComplex, p: &ContourPoint, q: &ContourPoint) -> f64 {
        self.between(
            p.position(complex).expect("sphere metric needs coordinates"),
            q.position(complex).expect("sphere metric needs coordinates"),
        )
    }

    /// Great-circle distance is increasing in the angle, so the farthest
    /// pair is the one with the smallest cosine between unit directions.
    fn diameter(&self, complex: &SimplicialComplex, points: &[ContourPoint]) -> f64 {
        if points.len() < 2 {
            return 0.0;
        }
        let pos: Vec<[f64; 3]> = points
            .iter()
            .map(|p| {
                let x = p.position(complex).expect("sphere metric needs coordinates");
                let u = [x[0] - self.center[0], x[1] - self.center[1], x[2] - self.center[2]];
                let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
                [u[0] / n, u[1] / n, u[2] / n]
            })
            .collect();
        let mut pair = (0, 1);
        let mut low = f64::INFINITY;
        for (i, a) in pos.iter().enumerate() {
            for (j, b) in pos.iter().enumerate().skip(i + 1) {
                let c = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
                if c < low {
                    low = c;
                    pair = (i, j);
                }
            }
        }
        let (a, b) = (pos[pair.0], pos[pair.1]);
        self.between(
            [a[0] + self.center[0], a[1] + self.center[1], a[2] + self.center[2]],
            [b[0] + self.center[0], b[1] + self.center[1], b[2] + self.center[2]],
        )
    }
}
