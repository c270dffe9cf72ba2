use crate::complex::VertexId;
use crate::union_find::UnionFind;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

pub type NodeId = usize;
pub type ArcId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReebNode {
    pub level: f64,
    /// Smallest complex vertex mapped to this node.
    pub vertex: VertexId,
}

/// An arc of the Reeb graph, oriented upward: `level(lower) < level(upper)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReebArc {
    pub lower: NodeId,
    pub upper: NodeId,
}

/// A point of the Reeb graph: a node, or an interior point of an arc
/// identified by its level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum GraphPoint {
    Node(NodeId),
    Arc { arc: ArcId, level: f64 },
}

/// Image of every complex vertex under the quotient map.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientMap {
    pub image: Vec<GraphPoint>,
}

impl QuotientMap {
    pub fn get(&self, v: VertexId) -> GraphPoint {
        self.image[v]
    }
}

/// A finite graph with levelled nodes. Regular nodes (one arc below, one
/// above) never occur, and nodes are numbered by increasing `(level, vertex)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReebGraph {
    nodes: Vec<ReebNode>,
    arcs: Vec<ReebArc>,
    components: usize,
}

/// Level-labelled form used for isomorphism checks: node keys in order,
/// and arcs as sorted index pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm {
    pub nodes: Vec<(f64, VertexId)>,
    pub arcs: Vec<(usize, usize)>,
}

impl ReebGraph {
    /// Builds a graph from explicit parts; arcs are reoriented upward and
    /// nodes kept as given (no suppression).
    pub fn from_parts(levels: &[f64], arcs: &[(NodeId, NodeId)]) -> Self {
        let nodes: Vec<ReebNode> = levels
            .iter()
            .enumerate()
            .map(|(i, &level)| ReebNode { level, vertex: i })
            .collect();
        let arcs: Vec<ReebArc> = arcs
            .iter()
            .map(|&(a, b)| {
                if (nodes[a].level, a) <= (nodes[b].level, b) {
                    ReebArc { lower: a, upper: b }
                } else {
                    ReebArc { lower: b, upper: a }
                }
            })
            .collect();
        let components = count_components(nodes.len(), &arcs);
        ReebGraph {
            nodes,
            arcs,
            components,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn n_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn nodes(&self) -> &[ReebNode] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[ReebArc] {
        &self.arcs
    }

    pub fn node(&self, n: NodeId) -> ReebNode {
        self.nodes[n]
    }

    pub fn arc(&self, a: ArcId) -> ReebArc {
        self.arcs[a]
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// First Betti number `E − V + components`.
    pub fn cycle_rank(&self) -> usize {
        self.arcs.len() + self.components - self.nodes.len()
    }

    /// Length of an arc in the f-length metric: its level difference.
    pub fn arc_length(&self, a: ArcId) -> f64 {
        let ReebArc { lower, upper } = self.arcs[a];
        self.nodes[upper].level - self.nodes[lower].level
    }

    pub fn degree(&self, n: NodeId) -> usize {
        self.arcs
            .iter()
            .filter(|a| a.lower == n || a.upper == n)
            .map(|a| if a.lower == a.upper { 2 } else { 1 })
            .sum()
    }

    /// Arcs whose open level range contains `level`.
    pub fn arcs_at(&self, level: f64) -> Vec<ArcId> {
        (0..self.arcs.len())
            .filter(|&a| {
                let ReebArc { lower, upper } = self.arcs[a];
                self.nodes[lower].level < level && level < self.nodes[upper].level
            })
            .collect()
    }

    pub fn level_of(&self, p: GraphPoint) -> f64 {
        match p {
            GraphPoint::Node(n) => self.nodes[n].level,
            GraphPoint::Arc { level, .. } => level,
        }
    }

    pub fn canonical(&self) -> CanonicalForm {
        let mut arcs: Vec<(usize, usize)> = self.arcs.iter().map(|a| (a.lower, a.upper)).collect();
        arcs.sort_unstable();
        CanonicalForm {
            nodes: self.nodes.iter().map(|n| (n.level, n.vertex)).collect(),
            arcs,
        }
    }

    /// Shortest-path distances from `p` to every node in the f-length metric.
    pub fn distances_from(&self, p: GraphPoint) -> Vec<f64> {
        let mut adj: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); self.nodes.len()];
        for (a, arc) in self.arcs.iter().enumerate() {
            let l = self.arc_length(a);
            adj[arc.lower].push((arc.upper, l));
            adj[arc.upper].push((arc.lower, l));
        }
        let mut dist = vec![f64::INFINITY; self.nodes.len()];
        let mut heap = BinaryHeap::new();
        let seed = |n: NodeId, d: f64, dist: &mut Vec<f64>, heap: &mut BinaryHeap<Item>| {
            if d < dist[n] {
                dist[n] = d;
                heap.push(Item(d, n));
            }
        };
        match p {
            GraphPoint::Node(n) => seed(n, 0.0, &mut dist, &mut heap),
            GraphPoint::Arc { arc, level } => {
                let ReebArc { lower, upper } = self.arcs[arc];
                seed(lower, level - self.nodes[lower].level, &mut dist, &mut heap);
                seed(upper, self.nodes[upper].level - level, &mut dist, &mut heap);
            }
        }
        while let Some(Item(d, u)) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(w, l) in &adj[u] {
                if d + l < dist[w] {
                    dist[w] = d + l;
                    heap.push(Item(d + l, w));
                }
            }
        }
        dist
    }

    /// Distance from the point whose node distances are `tree` to `q`.
    pub fn distance_via(&self, tree: &[f64], from: GraphPoint, q: GraphPoint) -> f64 {
        match q {
            GraphPoint::Node(n) => tree[n],
            GraphPoint::Arc { arc, level } => {
                let ReebArc { lower, upper } = self.arcs[arc];
                let mut best = (tree[lower] + level - self.nodes[lower].level)
                    .min(tree[upper] + self.nodes[upper].level - level);
                if let GraphPoint::Arc { arc: a, level: l } = from {
                    if a == arc {
                        best = best.min((level - l).abs());
                    }
                }
                best
            }
        }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph reeb {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(s, "  n{i} [label=\"{:.6}\"];", n.level).unwrap();
        }
        for a in &self.arcs {
            writeln!(s, "  n{} -- n{};", a.lower, a.upper).unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "cycle_rank": self.cycle_rank(),
            "components": self.components,
            "nodes": self.nodes.iter().enumerate().map(|(i, n)| serde_json::json!({
                "id": i,
                "level": n.level,
                "vertex": n.vertex,
            })).collect::<Vec<_>>(),
            "edges": self.arcs.iter().map(|a| [a.lower, a.upper]).collect::<Vec<_>>(),
        })
    }
}

/// f-length distance between two graph points; infinite across components.
pub fn reeb_metric(g: &ReebGraph, a: GraphPoint, b: GraphPoint) -> f64 {
    let tree = g.distances_from(a);
    g.distance_via(&tree, a, b)
}

#[derive(PartialEq)]
struct Item(f64, NodeId);

impl Eq for Item {}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn count_components(n: usize, arcs: &[ReebArc]) -> usize {
    let mut uf = UnionFind::new(n);
    for a in arcs {
        uf.union(a.lower, a.upper);
    }
    uf.components().1
}

/// Where a vertex lands in a raw (unsimplified) sweep graph.
#[derive(Clone, Copy, Debug)]
pub(crate) enum RawPoint {
    Node(usize),
    Arc(usize),
}

/// Output of a sweep before simplification. Node levels are the original
/// (unperturbed) field values.
pub(crate) struct RawGraph {
    pub levels: Vec<f64>,
    pub arcs: Vec<(usize, usize)>,
    pub image: Vec<RawPoint>,
}

impl RawGraph {
    /// Contracts arcs with equal endpoint levels (ties in the field), drops
    /// the resulting loops, merges chains through regular nodes, and
    /// numbers nodes canonically.
    pub fn finish(self, values: &[f64]) -> (ReebGraph, QuotientMap) {
        let RawGraph { levels, arcs, image } = self;
        let n = levels.len();

        // 1. flat arcs
        let mut uf = UnionFind::new(n);
        for &(a, b) in &arcs {
            if levels[a] == levels[b] {
                uf.union(a, b);
            }
        }
        let (class, n_class) = uf.components();
        let mut class_arcs: Vec<(usize, usize)> = Vec::new();
        let mut arc_to_class_arc = vec![usize::MAX; arcs.len()];
        for (i, &(a, b)) in arcs.iter().enumerate() {
            let (ca, cb) = (class[a], class[b]);
            if ca != cb {
                arc_to_class_arc[i] = class_arcs.len();
                class_arcs.push((ca, cb));
            }
        }
        let mut class_level = vec![0.0; n_class];
        for i in 0..n {
            class_level[class[i]] = levels[i];
        }
        // a vertex inside an arc at an endpoint's level lies in that
        // endpoint's flat contour
        let image: Vec<RawPoint> = image
            .iter()
            .enumerate()
            .map(|(v, &p)| match p {
                RawPoint::Node(k) => RawPoint::Node(class[k]),
                RawPoint::Arc(a) => {
                    let (lo, hi) = arcs[a];
                    match arc_to_class_arc[a] {
                        usize::MAX => RawPoint::Node(class[lo]),
                        _ if values[v] == levels[lo] => RawPoint::Node(class[lo]),
                        _ if values[v] == levels[hi] => RawPoint::Node(class[hi]),
                        c => RawPoint::Arc(c),
                    }
                }
            })
            .collect();

        // 2. regular nodes: exactly one arc below and one above
        let mut down = vec![0usize; n_class];
        let mut up_arc = vec![usize::MAX; n_class];
        let mut up = vec![0usize; n_class];
        for (i, &(a, b)) in class_arcs.iter().enumerate() {
            up[a] += 1;
            up_arc[a] = i;
            down[b] += 1;
        }
        let regular: Vec<bool> = (0..n_class).map(|k| down[k] == 1 && up[k] == 1).collect();
        let mut chain = vec![usize::MAX; class_arcs.len()];
        let mut chains: Vec<(usize, usize)> = Vec::new();
        for start in 0..class_arcs.len() {
            if regular[class_arcs[start].0] {
                continue;
            }
            let id = chains.len();
            let mut a = start;
            loop {
                chain[a] = id;
                let top = class_arcs[a].1;
                if !regular[top] {
                    chains.push((class_arcs[start].0, top));
                    break;
                }
                a = up_arc[top];
            }
        }

        // 3. canonical numbering of the surviving nodes
        let mut min_vertex = vec![usize::MAX; n_class];
        for (v, p) in image.iter().enumerate() {
            if let RawPoint::Node(k) = *p {
                min_vertex[k] = min_vertex[k].min(v);
            }
        }
        let mut keep: Vec<usize> = (0..n_class).filter(|&k| !regular[k]).collect();
        keep.sort_by(|&x, &y| {
            class_level[x]
                .total_cmp(&class_level[y])
                .then(min_vertex[x].cmp(&min_vertex[y]))
        });
        let mut new_id = vec![usize::MAX; n_class];
        for (i, &k) in keep.iter().enumerate() {
            new_id[k] = i;
        }
        let nodes: Vec<ReebNode> = keep
            .iter()
            .map(|&k| ReebNode {
                level: class_level[k],
                vertex: min_vertex[k],
            })
            .collect();
        let mut order: Vec<usize> = (0..chains.len()).collect();
        order.sort_by_key(|&c| (new_id[chains[c].0], new_id[chains[c].1], c));
        let mut chain_id = vec![0; chains.len()];
        for (i, &c) in order.iter().enumerate() {
            chain_id[c] = i;
        }
        let out_arcs: Vec<ReebArc> = order
            .iter()
            .map(|&c| ReebArc {
                lower: new_id[chains[c].0],
                upper: new_id[chains[c].1],
            })
            .collect();
        let image = image
            .iter()
            .enumerate()
            .map(|(v, &p)| match p {
                RawPoint::Node(k) if !regular[k] => GraphPoint::Node(new_id[k]),
                RawPoint::Node(k) => GraphPoint::Arc {
                    arc: chain_id[chain[up_arc[k]]],
                    level: values[v],
                },
                RawPoint::Arc(a) => GraphPoint::Arc {
                    arc: chain_id[chain[a]],
                    level: values[v],
                },
            })
            .collect();
        let components = count_components(nodes.len(), &out_arcs);
        (
            ReebGraph {
                nodes,
                arcs: out_arcs,
                components,
            },
            QuotientMap { image },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_node_has_no_cycles() {
        let g = ReebGraph::from_parts(&[0.0], &[]);
        assert_eq!(g.cycle_rank(), 0);
        assert_eq!(g.components(), 1);
    }

    #[test]
    fn theta_graph_metric() {
        let g = ReebGraph::from_parts(&[0.0, 1.0], &[(0, 1), (0, 1), (1, 0)]);
        assert_eq!(g.cycle_rank(), 2);
        assert_eq!(reeb_metric(&g, GraphPoint::Node(0), GraphPoint::Node(1)), 1.0);
        let p = GraphPoint::Arc { arc: 0, level: 0.25 };
        let q = GraphPoint::Arc { arc: 1, level: 0.5 };
        assert_eq!(reeb_metric(&g, p, q), 0.75);
        assert_eq!(reeb_metric(&g, p, p), 0.0);
        let r = GraphPoint::Arc { arc: 0, level: 0.75 };
        assert_eq!(reeb_metric(&g, p, r), 0.5);
    }

    #[test]
    fn single_arc_length_is_level_difference() {
        let g = ReebGraph::from_parts(&[0.0, 3.0], &[(1, 0)]);
        assert_eq!(reeb_metric(&g, GraphPoint::Node(0), GraphPoint::Node(1)), 3.0);
        assert_eq!(g.arc(0), ReebArc { lower: 0, upper: 1 });
    }

    #[test]
    fn different_components_are_infinitely_far() {
        let g = ReebGraph::from_parts(&[0.0, 1.0], &[]);
        assert!(reeb_metric(&g, GraphPoint::Node(0), GraphPoint::Node(1)).is_infinite());
    }

    #[test]
    fn finish_collapses_flat_arcs_and_regular_nodes() {
        // min -> two arcs -> two saddles at the same level -> chain -> max
        let raw = RawGraph {
            levels: vec![0.0, 0.5, 0.5, 0.7, 1.0],
            arcs: vec![(0, 1), (1, 2), (1, 2), (2, 3), (3, 4)],
            image: (0..5).map(RawPoint::Node).collect(),
        };
        let values = [0.0, 0.5, 0.5, 0.7, 1.0];
        let (g, map) = raw.finish(&values);
        // the merged saddle and the chain node are both regular afterwards
        assert_eq!((g.n_nodes(), g.n_arcs(), g.cycle_rank()), (2, 1, 0));
        assert_eq!(map.get(0), GraphPoint::Node(0));
        assert_eq!(map.get(2), GraphPoint::Arc { arc: 0, level: 0.5 });
        assert_eq!(map.get(3), GraphPoint::Arc { arc: 0, level: 0.7 });
    }

    #[test]
    fn exports_name_every_node() {
        let g = ReebGraph::from_parts(&[0.0, 1.5], &[(0, 1)]);
        let dot = g.to_dot();
        assert!(dot.contains("label=\"1.500000\""));
        assert!(dot.contains("n0 -- n1"));
        let json = g.to_json();
        assert_eq!(json["schema"], 1);
        assert_eq!(json["edges"][0], serde_json::json!([0, 1]));
    }
}
