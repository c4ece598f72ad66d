//! Embedding-free multigraphs: targets of weak duals, contractions, and
//! facial completions, and the input type of the exact treewidth solver.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// An undirected multigraph over dense integer vertex ids. Loops are
/// representable; vertices can be marked dead so ids stay stable.
#[derive(Debug, Clone, Default)]
pub struct AbstractGraph {
    alive: Vec<bool>,
    /// edge id -> endpoints, `None` once deleted
    edges: Vec<Option<(usize, usize)>>,
}

impl AbstractGraph {
    pub fn new(n: usize) -> Self {
        AbstractGraph {
            alive: vec![true; n],
            edges: Vec::new(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = AbstractGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self) -> usize {
        self.alive.push(true);
        self.alive.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        assert!(self.alive[u] && self.alive[v], "edge endpoints must be alive");
        self.edges.push(Some((u, v)));
        self.edges.len() - 1
    }

    pub fn remove_edge(&mut self, e: usize) {
        self.edges[e] = None;
    }

    pub fn remove_vertex(&mut self, v: usize) {
        for e in self.edges.iter_mut() {
            if let Some((a, b)) = *e {
                if a == v || b == v {
                    *e = None;
                }
            }
        }
        self.alive[v] = false;
    }

    pub fn id_bound(&self) -> usize {
        self.alive.len()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        v < self.alive.len() && self.alive[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.alive.len()).filter(move |&v| self.alive[v])
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(move |&e| self.edges[e].is_some())
    }

    pub fn edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_some()).count()
    }

    pub fn endpoints(&self, e: usize) -> Option<(usize, usize)> {
        self.edges.get(e).copied().flatten()
    }

    /// Degree counting multiplicity; a loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        let mut d = 0;
        for e in self.edges.iter().flatten() {
            if e.0 == v {
                d += 1;
            }
            if e.1 == v {
                d += 1;
            }
        }
        d
    }

    /// Incident edges as (edge id, other endpoint); loops reported once.
    pub fn incident(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (e, ep) in self.edges.iter().enumerate() {
            if let Some((a, b)) = *ep {
                if a == v {
                    out.push((e, b));
                } else if b == v {
                    out.push((e, a));
                }
            }
        }
        out
    }

    /// Distinct neighbors, loops excluded.
    pub fn neighbor_set(&self, v: usize) -> BTreeSet<usize> {
        self.incident(v)
            .into_iter()
            .map(|(_, w)| w)
            .filter(|&w| w != v)
            .collect()
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().flatten().any(|&(a, b)| a == b)
    }

    pub fn is_connected(&self) -> bool {
        let verts: Vec<usize> = self.vertices().collect();
        if verts.is_empty() {
            return true;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.alive.len()];
        for &(a, b) in self.edges.iter().flatten() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.alive.len()];
        let mut stack = vec![verts[0]];
        seen[verts[0]] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        verts.into_iter().all(|v| seen[v])
    }

    /// Connected components as vertex sets.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.alive.len()];
        for &(a, b) in self.edges.iter().flatten() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.alive.len()];
        let mut comps = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// The subgraph induced by `keep`, same id space.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> AbstractGraph {
        let mut g = AbstractGraph {
            alive: vec![false; self.alive.len()],
            edges: Vec::new(),
        };
        for &v in keep {
            assert!(self.is_alive(v));
            g.alive[v] = true;
        }
        for &(a, b) in self.edges.iter().flatten() {
            if keep.contains(&a) && keep.contains(&b) {
                g.edges.push(Some((a, b)));
            }
        }
        g
    }

    /// Simple-graph view: deduplicated non-loop adjacency sets.
    pub fn simple_adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.alive.len()];
        for &(a, b) in self.edges.iter().flatten() {
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if self.is_alive(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }
}

/// Subdivide edge `e` once: replace (u,v) with u-x-v. Returns x.
pub fn subdivide_edge(g: &mut AbstractGraph, e: usize) -> usize {
    let (u, v) = g.endpoints(e).expect("edge must exist");
    g.remove_edge(e);
    let x = g.add_vertex();
    g.add_edge(u, x);
    g.add_edge(x, v);
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_counts_loops_twice() {
        let mut g = AbstractGraph::new(2);
        g.add_edge(0, 1);
        g.add_edge(0, 0);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 1);
    }

    #[test]
    fn connectivity_and_components() {
        let g = AbstractGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(!g.is_connected());
        assert_eq!(g.components().len(), 2);
        let h = AbstractGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(h.is_connected());
    }

    #[test]
    fn subdivision_keeps_endpoints() {
        let mut g = AbstractGraph::from_edges(2, &[(0, 1)]);
        let x = subdivide_edge(&mut g, 0);
        assert_eq!(g.neighbor_set(x), BTreeSet::from([0, 1]));
        assert_eq!(g.edge_count(), 2);
    }
}
