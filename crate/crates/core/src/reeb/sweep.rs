//! Reeb graph by an upward sweep.
//!
//! Every edge straddling the current level carries the id of the arc whose
//! contour it belongs to. At a vertex `v` only the contours touching `v`
//! can change; their edges, minus the lower star of `v`, plus the upper
//! star, are regrouped by a local union-find over shared triangles. One
//! contour in and one out is a regular point; anything else creates a node.

use super::graph::{QuotientMap, RawGraph, RawPoint, ReebGraph};
use super::ReebError;
use crate::complex::{EdgeId, ScalarField, SimplicialComplex};
use crate::union_find::UnionFind;

const NONE: u32 = u32::MAX;

pub fn build_reeb(
    complex: &SimplicialComplex,
    field: &ScalarField,
) -> Result<(ReebGraph, QuotientMap), ReebError> {
    if field.len() != complex.n_vertices() {
        return Err(ReebError::FieldMismatch {
            expected: complex.n_vertices(),
            got: field.len(),
        });
    }
    let rank = field.ranks();
    let order = field.sweep_order();
    let n_edges = complex.n_edges();
    // edge [a, b] straddles the level just above rank r iff lo ≤ r < hi
    let span: Vec<(usize, usize)> = complex
        .edges()
        .iter()
        .map(|&[a, b]| (rank[a].min(rank[b]), rank[a].max(rank[b])))
        .collect();
    let straddles = |e: EdgeId, r: usize| span[e].0 <= r && r < span[e].1;

    let mut edge_arc = vec![NONE; n_edges];
    let mut arc_edges: Vec<Vec<EdgeId>> = Vec::new();
    let mut levels = Vec::new();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut image = vec![RawPoint::Node(0); complex.n_vertices()];

    let mut stamp = vec![0u32; n_edges];
    let mut slot = vec![0u32; n_edges];
    let mut round = 0u32;
    let mut uf = UnionFind::new(0);
    let mut touching: Vec<usize> = Vec::new();
    let mut set: Vec<EdgeId> = Vec::new();

    for (r, &v) in order.iter().enumerate() {
        touching.clear();
        set.clear();
        round += 1;
        for &e in complex.vertex_edges(v) {
            if span[e].1 == r {
                let a = edge_arc[e];
                debug_assert_ne!(a, NONE, "lower-star edge must be active");
                edge_arc[e] = NONE;
                if !touching.contains(&(a as usize)) {
                    touching.push(a as usize);
                }
            }
        }
        for &a in &touching {
            let list = &mut arc_edges[a];
            list.retain(|&e| edge_arc[e] == a as u32);
            for &e in list.iter() {
                stamp[e] = round;
                slot[e] = set.len() as u32;
                set.push(e);
            }
        }
        let upper_start = set.len();
        for &e in complex.vertex_edges(v) {
            if span[e].0 == r {
                stamp[e] = round;
                slot[e] = set.len() as u32;
                set.push(e);
            }
        }

        uf.reset(set.len());
        for (i, &e) in set.iter().enumerate() {
            for &t in complex.edge_triangles(e) {
                for f in complex.triangle_edges(t) {
                    if f != e && straddles(f, r) {
                        debug_assert_eq!(stamp[f], round, "partner edge belongs to a touched contour");
                        if stamp[f] == round {
                            uf.union(i, slot[f] as usize);
                        }
                    }
                }
            }
        }
        let (labels, k) = uf.components();

        if touching.len() == 1 && k == 1 {
            let a = touching[0];
            for &e in &set[upper_start..] {
                edge_arc[e] = a as u32;
                arc_edges[a].push(e);
            }
            image[v] = RawPoint::Arc(a);
            continue;
        }

        let node = levels.len();
        levels.push(field.value(v));
        image[v] = RawPoint::Node(node);
        for &a in &touching {
            arcs[a].1 = node;
            arc_edges[a].clear();
        }
        let first = arcs.len();
        for _ in 0..k {
            arcs.push((node, usize::MAX));
            arc_edges.push(Vec::new());
        }
        for (i, &e) in set.iter().enumerate() {
            let a = first + labels[i];
            edge_arc[e] = a as u32;
            arc_edges[a].push(e);
        }
    }
    debug_assert!(arcs.iter().all(|a| a.1 != usize::MAX), "every arc closes");

    let raw = RawGraph { levels, arcs, image };
    Ok(raw.finish(field.values()))
}
