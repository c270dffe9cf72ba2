//! Brute-force Reeb graph from explicit level sets, independent of the
//! sweep: contours are extracted at every vertex level and at one level
//! inside every gap, and each gap contour is attached to the unique level
//! contour it meets below and above.

use super::graph::{QuotientMap, RawGraph, RawPoint, ReebGraph};
use crate::complex::{level_set, Contour, ContourPoint, ScalarField, SimplicialComplex, VertexId};
use std::collections::HashMap;

pub fn reeb_oracle(complex: &SimplicialComplex, field: &ScalarField) -> (ReebGraph, QuotientMap) {
    // Work with ranks: all levels distinct, same combinatorics.
    let ranked = field.rank_field();
    let order = field.sweep_order();
    let n = complex.n_vertices();

    // Level contours: one node each.
    let mut levels = Vec::new();
    let mut image = vec![RawPoint::Node(0); n];
    // per vertex level j: edge -> node, and the node holding the vertex
    let mut edge_node: Vec<HashMap<usize, usize>> = Vec::with_capacity(n);
    let mut vertex_node = vec![0usize; n];
    for (j, &v) in order.iter().enumerate() {
        let mut by_edge = HashMap::new();
        for c in level_set(complex, &ranked, j as f64) {
            let node = levels.len();
            levels.push(field.value(v));
            for p in &c.points {
                match *p {
                    ContourPoint::Crossing { edge, .. } => {
                        by_edge.insert(edge, node);
                    }
                    ContourPoint::Vertex(u) => {
                        debug_assert_eq!(u, v);
                        vertex_node[u] = node;
                        image[u] = RawPoint::Node(node);
                    }
                }
            }
        }
        edge_node.push(by_edge);
    }

    // Gap contours: one arc each.
    let mut arcs = Vec::new();
    for j in 0..n.saturating_sub(1) {
        for c in level_set(complex, &ranked, j as f64 + 0.5) {
            let below = attach(complex, &c, order[j], &edge_node[j], &vertex_node);
            let above = attach(complex, &c, order[j + 1], &edge_node[j + 1], &vertex_node);
            arcs.push((below, above));
        }
    }

    RawGraph { levels, arcs, image }.finish(field.values())
}

/// The level contour met by gap contour `c` at the level of vertex `v`: the
/// one sharing a straddling edge, or the one through `v` when every
/// crossing of `c` is on an edge incident to `v`.
fn attach(
    complex: &SimplicialComplex,
    c: &Contour,
    v: VertexId,
    edge_node: &HashMap<usize, usize>,
    vertex_node: &[usize],
) -> usize {
    for p in &c.points {
        if let ContourPoint::Crossing { edge, .. } = *p {
            if let Some(&node) = edge_node.get(&edge) {
                return node;
            }
            debug_assert!(complex.edge(edge).contains(&v));
        }
    }
    vertex_node[v]
}
