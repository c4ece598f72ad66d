//! Tree decompositions, validators, width, and facial completion.

use std::collections::BTreeSet;

use crate::abstract_graph::AbstractGraph;
use crate::error::{Error, Result};
use crate::plane_graph::PlaneGraph;

/// A tree decomposition: nodes `0..bags.len()`, each carrying a bag of
/// host-graph vertices; `tree_edges` must make the nodes a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn single_bag(vertices: impl IntoIterator<Item = usize>) -> Self {
        TreeDecomposition {
            bags: vec![vertices.into_iter().collect()],
            tree_edges: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Max bag size minus one; −1 for an empty decomposition (the error
    /// variant is for callers that require nonempty input).
    pub fn width_value(&self) -> isize {
        self.bags
            .iter()
            .map(|b| b.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    /// Whether the node set with `tree_edges` forms a tree (a single node
    /// with no edges counts; empty does not).
    pub fn is_tree(&self) -> bool {
        let n = self.bags.len();
        if n == 0 || self.tree_edges.len() + 1 != n {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.tree_edges {
            if a >= n || b >= n {
                return false;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    cnt += 1;
                    stack.push(w);
                }
            }
        }
        cnt == n
    }

    /// Nodes whose bags contain `v`.
    fn nodes_with(&self, v: usize) -> Vec<usize> {
        (0..self.bags.len())
            .filter(|&i| self.bags[i].contains(&v))
            .collect()
    }
}

/// Max bag size minus one; errors on an empty decomposition.
pub fn width(t: &TreeDecomposition) -> Result<usize> {
    if t.bags.is_empty() {
        return Err(Error::EmptyDecomposition);
    }
    Ok(t.bags.iter().map(|b| b.len()).max().unwrap().saturating_sub(1))
}

/// Outcome of validating a decomposition against a graph: one flag per
/// property plus the first witness of each violation.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    /// every vertex appears in some bag
    pub vertex_coverage: bool,
    pub missing_vertex: Option<usize>,
    /// every edge's endpoints share a bag
    pub edge_coverage: bool,
    pub missing_edge: Option<(usize, usize)>,
    /// each vertex's nodes induce a connected subtree
    pub subtree_connectivity: bool,
    pub disconnected_vertex: Option<usize>,
    /// every bounded face's vertex set is inside some bag (only evaluated
    /// by the embedded validator; `true` otherwise)
    pub face_coverage: bool,
    pub missing_face: Option<usize>,
    pub width: isize,
}

impl ValidationReport {
    pub fn tree_properties_hold(&self) -> bool {
        self.vertex_coverage && self.edge_coverage && self.subtree_connectivity
    }

    pub fn all_properties_hold(&self) -> bool {
        self.tree_properties_hold() && self.face_coverage
    }
}

/// The pieces of a host graph the validators need.
struct Host {
    vertices: Vec<usize>,
    edges: Vec<(usize, usize)>,
    id_bound: usize,
}

impl Host {
    fn of_abstract(g: &AbstractGraph) -> Host {
        Host {
            vertices: g.vertices().collect(),
            edges: g.edge_ids().map(|e| g.endpoints(e).unwrap()).collect(),
            id_bound: g.id_bound(),
        }
    }

    fn of_plane(g: &PlaneGraph) -> Host {
        Host {
            vertices: g.vertices().collect(),
            edges: g.edge_ids().map(|e| g.endpoints(e)).collect(),
            id_bound: g.vertex_id_bound(),
        }
    }
}

fn validate_against(host: &Host, t: &TreeDecomposition) -> Result<ValidationReport> {
    for bag in &t.bags {
        for &v in bag {
            if v >= host.id_bound || !host.vertices.contains(&v) {
                return Err(Error::ForeignVertexInBag(v));
            }
        }
    }
    if !t.is_tree() {
        return Err(Error::InvalidInputDecomposition(
            "decomposition nodes do not form a tree".into(),
        ));
    }
    let mut report = ValidationReport {
        vertex_coverage: true,
        missing_vertex: None,
        edge_coverage: true,
        missing_edge: None,
        subtree_connectivity: true,
        disconnected_vertex: None,
        face_coverage: true,
        missing_face: None,
        width: t.width_value(),
    };
    for &v in &host.vertices {
        if !t.bags.iter().any(|b| b.contains(&v)) {
            report.vertex_coverage = false;
            report.missing_vertex = Some(v);
            break;
        }
    }
    for &(u, v) in &host.edges {
        if !t.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            report.edge_coverage = false;
            report.missing_edge = Some((u, v));
            break;
        }
    }
    // adjacency of the decomposition tree
    let mut adj = vec![Vec::new(); t.bags.len()];
    for &(a, b) in &t.tree_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    'vertices: for &v in &host.vertices {
        let nodes = t.nodes_with(v);
        if nodes.len() <= 1 {
            continue;
        }
        let inset: BTreeSet<usize> = nodes.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut stack = vec![nodes[0]];
        seen.insert(nodes[0]);
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if inset.contains(&j) && seen.insert(j) {
                    stack.push(j);
                }
            }
        }
        if seen.len() != nodes.len() {
            report.subtree_connectivity = false;
            report.disconnected_vertex = Some(v);
            break 'vertices;
        }
    }
    Ok(report)
}

/// Validate properties 1–3 (vertex coverage, edge coverage, subtree
/// connectivity) against an abstract graph.
pub fn validate_tree_decomposition(
    g: &AbstractGraph,
    t: &TreeDecomposition,
) -> Result<ValidationReport> {
    validate_against(&Host::of_abstract(g), t)
}

/// Properties 1–3 against a plane graph (the embedding is ignored).
pub fn validate_tree_decomposition_plane(
    g: &PlaneGraph,
    t: &TreeDecomposition,
) -> Result<ValidationReport> {
    validate_against(&Host::of_plane(g), t)
}

/// Validate properties 1–4: additionally, every bounded face's distinct
/// boundary vertices must fit in a single bag.
pub fn validate_em_decomposition(
    g: &PlaneGraph,
    t: &TreeDecomposition,
) -> Result<ValidationReport> {
    let mut report = validate_against(&Host::of_plane(g), t)?;
    let fs = g.faces();
    for f in fs.bounded() {
        if !t
            .bags
            .iter()
            .any(|b| f.vertices.iter().all(|v| b.contains(v)))
        {
            report.face_coverage = false;
            report.missing_face = Some(f.id);
            break;
        }
    }
    Ok(report)
}

/// The completion: the simple graph on V(g) with every edge of g plus a
/// clique on each bounded face's boundary vertices. An em-decomposition of
/// g is exactly a tree decomposition of this graph.
pub fn facial_completion(g: &PlaneGraph) -> AbstractGraph {
    let n = g.vertex_id_bound();
    let mut present = BTreeSet::new();
    let mut out = AbstractGraph::new(0);
    for v in 0..n {
        let id = out.add_vertex();
        debug_assert_eq!(id, v);
        if !g.vertex_alive(v) {
            out.remove_vertex(v);
        }
    }
    let mut add = |out: &mut AbstractGraph, u: usize, v: usize| {
        if u == v {
            return;
        }
        let key = (u.min(v), u.max(v));
        if present.insert(key) {
            out.add_edge(key.0, key.1);
        }
    };
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        add(&mut out, u, v);
    }
    let fs = g.faces();
    for f in fs.bounded() {
        for i in 0..f.vertices.len() {
            for j in i + 1..f.vertices.len() {
                add(&mut out, f.vertices[i], f.vertices[j]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{cycle, path, PlaneGraph};

    #[test]
    fn path_decomposition_valid() {
        let g = AbstractGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let t = TreeDecomposition {
            bags: vec![[0, 1].into(), [1, 2].into()],
            tree_edges: vec![(0, 1)],
        };
        let r = validate_tree_decomposition(&g, &t).unwrap();
        assert!(r.tree_properties_hold());
        assert_eq!(r.width, 1);
    }

    #[test]
    fn missing_edge_reported() {
        let g = AbstractGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let t = TreeDecomposition {
            bags: vec![[0, 1].into(), [2].into()],
            tree_edges: vec![(0, 1)],
        };
        let r = validate_tree_decomposition(&g, &t).unwrap();
        assert!(!r.edge_coverage);
        assert_eq!(r.missing_edge, Some((1, 2)));
    }

    #[test]
    fn broken_subtree_reported() {
        let g = AbstractGraph::from_edges(2, &[(0, 1)]);
        let t = TreeDecomposition {
            bags: vec![[0, 1].into(), [1].into(), [0, 1].into()],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        let r = validate_tree_decomposition(&g, &t).unwrap();
        assert!(!r.subtree_connectivity);
        assert_eq!(r.disconnected_vertex, Some(0));
    }

    #[test]
    fn foreign_vertex_rejected() {
        let g = AbstractGraph::from_edges(2, &[(0, 1)]);
        let t = TreeDecomposition::single_bag([0, 1, 7]);
        assert!(matches!(
            validate_tree_decomposition(&g, &t),
            Err(Error::ForeignVertexInBag(7))
        ));
    }

    #[test]
    fn non_tree_rejected() {
        let g = AbstractGraph::from_edges(2, &[(0, 1)]);
        let t = TreeDecomposition {
            bags: vec![[0].into(), [0, 1].into(), [1].into()],
            tree_edges: vec![(0, 1)],
        };
        assert!(matches!(
            validate_tree_decomposition(&g, &t),
            Err(Error::InvalidInputDecomposition(_))
        ));
    }

    #[test]
    fn em_validation_on_four_cycle() {
        let g = cycle(4);
        let all = TreeDecomposition::single_bag(0..4);
        let r = validate_em_decomposition(&g, &all).unwrap();
        assert!(r.all_properties_hold());
        assert_eq!(r.width, 3);

        let split = TreeDecomposition {
            bags: vec![[0, 1, 2].into(), [0, 2, 3].into()],
            tree_edges: vec![(0, 1)],
        };
        let r = validate_em_decomposition(&g, &split).unwrap();
        assert!(r.tree_properties_hold());
        assert!(!r.face_coverage);
        assert!(r.missing_face.is_some());
    }

    #[test]
    fn tree_em_decomposition_width_one() {
        // path = a tree: no bounded faces, edge bags suffice
        let g = path(4);
        let t = TreeDecomposition {
            bags: vec![[0, 1].into(), [1, 2].into(), [2, 3].into()],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        let r = validate_em_decomposition(&g, &t).unwrap();
        assert!(r.all_properties_hold());
        assert_eq!(r.width, 1);
    }

    #[test]
    fn completion_examples() {
        let c4 = facial_completion(&cycle(4));
        assert_eq!(c4.edge_count(), 6); // K4

        let c3 = facial_completion(&cycle(3));
        assert_eq!(c3.edge_count(), 3);

        let t = facial_completion(&path(5));
        assert_eq!(t.edge_count(), 4);
    }

    #[test]
    fn completion_collapses_parallel_edges() {
        let g = PlaneGraph::build_embedding(&[vec![1, 1], vec![0, 0]]).unwrap();
        let c = facial_completion(&g);
        assert_eq!(c.edge_count(), 1);
    }

    #[test]
    fn width_values() {
        assert_eq!(width(&TreeDecomposition::single_bag(0..4)).unwrap(), 3);
        let t = TreeDecomposition {
            bags: vec![[0].into(), [0, 1, 2, 3, 4].into(), [2, 3, 4].into()],
            tree_edges: vec![(0, 1), (1, 2)],
        };
        assert_eq!(width(&t).unwrap(), 4);
        let empty = TreeDecomposition { bags: vec![], tree_edges: vec![] };
        assert!(matches!(width(&empty), Err(Error::EmptyDecomposition)));
        assert_eq!(empty.width_value(), -1);
    }
}
