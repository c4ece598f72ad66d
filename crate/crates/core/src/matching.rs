//! Matchings in plane graphs with degree-2 structure: r-families and
//! their embeddings, a blossom-based maximum-matching oracle, orientations
//! with at most one sink, and the two constructive linear-size matching
//! guarantees used by the contraction pipeline.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::abstract_graph::AbstractGraph;
use crate::error::{Error, Result};
use crate::plane_graph::{embedded_subgraph, EdgeId, PlaneGraph, VertexId};

/// A set of edges, no two sharing an endpoint.
#[derive(Debug, Clone, Default)]
pub struct Matching {
    pub edges: Vec<EdgeId>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Check the matching property against a plane graph.
    pub fn is_valid_on(&self, g: &PlaneGraph) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&e| {
            if !g.edge_alive(e) {
                return false;
            }
            let (u, v) = g.endpoints(e);
            u != v && seen.insert(u) && seen.insert(v)
        })
    }

    pub fn is_valid_on_abstract(&self, g: &AbstractGraph) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&e| match g.endpoints(e) {
            Some((u, v)) => u != v && seen.insert(u) && seen.insert(v),
            None => false,
        })
    }
}

// ----- maximum matching (blossom algorithm) -----

/// Maximum-cardinality matching; loops are ignored and parallel edges
/// collapse. Edge ids in the result are the lowest ids realizing each
/// matched pair.
pub fn maximum_matching(g: &AbstractGraph) -> Matching {
    let ids: Vec<usize> = g.vertices().collect();
    let n = ids.len();
    let index = |v: usize| ids.binary_search(&v).unwrap();
    let mut adj = vec![Vec::new(); n];
    let mut lowest_edge: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e).unwrap();
        if u == v {
            continue;
        }
        let (a, b) = (index(u), index(v));
        let key = (a.min(b), a.max(b));
        if !lowest_edge.contains_key(&key) {
            lowest_edge.insert(key, e);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mate = blossom(n, &adj);
    let mut edges = Vec::new();
    for a in 0..n {
        if let Some(b) = mate[a] {
            if a < b {
                edges.push(lowest_edge[&(a, b)]);
            }
        }
    }
    Matching { edges }
}

/// Classic O(V^3) blossom implementation; returns the mate array.
fn blossom(n: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
    const NONE: usize = usize::MAX;
    let mut mate = vec![NONE; n];
    let mut p = vec![NONE; n];
    let mut base = vec![0usize; n];

    fn lca(
        mate: &[usize],
        base: &[usize],
        p: &[usize],
        mut a: usize,
        mut b: usize,
    ) -> usize {
        let n = mate.len();
        let mut used = vec![false; n];
        loop {
            a = base[a];
            used[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = p[mate[a]];
        }
        loop {
            b = base[b];
            if used[b] {
                return b;
            }
            b = p[mate[b]];
        }
    }

    fn mark_path(
        mate: &[usize],
        base: &[usize],
        blossom_flag: &mut [bool],
        p: &mut [usize],
        mut v: usize,
        b: usize,
        mut child: usize,
    ) {
        while base[v] != b {
            blossom_flag[base[v]] = true;
            blossom_flag[base[mate[v]]] = true;
            p[v] = child;
            child = mate[v];
            v = p[mate[v]];
        }
    }

    fn find_path(
        adj: &[Vec<usize>],
        mate: &mut [usize],
        p: &mut [usize],
        base: &mut [usize],
        root: usize,
    ) -> usize {
        let n = adj.len();
        let mut used = vec![false; n];
        for (i, b) in base.iter_mut().enumerate() {
            *b = i;
        }
        p.iter_mut().for_each(|x| *x = NONE);
        used[root] = true;
        let mut q = VecDeque::new();
        q.push_back(root);
        while let Some(v) = q.pop_front() {
            for &to in &adj[v] {
                if base[v] == base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && p[mate[to]] != NONE) {
                    let curbase = lca(mate, base, p, v, to);
                    let mut blossom_flag = vec![false; n];
                    mark_path(mate, base, &mut blossom_flag, p, v, curbase, to);
                    mark_path(mate, base, &mut blossom_flag, p, to, curbase, v);
                    for i in 0..n {
                        if blossom_flag[base[i]] {
                            base[i] = curbase;
                            if !used[i] {
                                used[i] = true;
                                q.push_back(i);
                            }
                        }
                    }
                } else if p[to] == NONE {
                    p[to] = v;
                    if mate[to] == NONE {
                        return to;
                    }
                    used[mate[to]] = true;
                    q.push_back(mate[to]);
                }
            }
        }
        NONE
    }

    for v in 0..n {
        if mate[v] != NONE {
            continue;
        }
        let mut u = find_path(adj, &mut mate, &mut p, &mut base, v);
        while u != NONE {
            let pv = p[u];
            let ppv = mate[pv];
            mate[u] = pv;
            mate[pv] = u;
            u = ppv;
        }
    }
    mate.into_iter()
        .map(|m| (m != NONE).then_some(m))
        .collect()
}

/// Maximal matching by scanning edges in id order; never smaller than
/// half a maximum matching.
pub fn greedy_maximal_matching(g: &PlaneGraph) -> Matching {
    let mut used = BTreeSet::new();
    let mut edges = Vec::new();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        if u != v && !used.contains(&u) && !used.contains(&v) {
            used.insert(u);
            used.insert(v);
            edges.push(e);
        }
    }
    Matching { edges }
}

// ----- orientation with at most one sink -----

/// A direction for every edge plus the resulting sinks.
#[derive(Debug, Clone)]
pub struct Orientation {
    /// per oriented edge: (edge id, tail, head)
    pub directed: Vec<(EdgeId, VertexId, VertexId)>,
    pub sinks: Vec<VertexId>,
}

impl Orientation {
    /// Lowest-id outgoing edge of `v`, if any.
    pub fn outgoing(&self, v: VertexId) -> Option<(EdgeId, VertexId)> {
        self.directed
            .iter()
            .filter(|&&(_, t, _)| t == v)
            .min_by_key(|&&(e, _, _)| e)
            .map(|&(e, _, h)| (e, h))
    }
}

/// Orient a connected graph so that at most one vertex is a sink: edges
/// inside 2-edge-connected components get a strong orientation (DFS tree
/// edges down, back edges up), bridges point toward a root chosen in a
/// non-trivial component when one exists.
pub fn orient_one_sink(g: &AbstractGraph) -> Result<Orientation> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let ids: Vec<usize> = g.vertices().collect();
    if ids.is_empty() {
        return Ok(Orientation {
            directed: vec![],
            sinks: vec![],
        });
    }
    // incidence lists
    let mut inc: BTreeMap<usize, Vec<(EdgeId, usize)>> = ids.iter().map(|&v| (v, vec![])).collect();
    let mut loops = Vec::new();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e).unwrap();
        if u == v {
            loops.push((e, u, v));
            continue;
        }
        inc.get_mut(&u).unwrap().push((e, v));
        inc.get_mut(&v).unwrap().push((e, u));
    }
    // iterative DFS computing discovery times, parents and bridges
    let mut disc: BTreeMap<usize, usize> = BTreeMap::new();
    let mut low: BTreeMap<usize, usize> = BTreeMap::new();
    let mut parent_edge: BTreeMap<usize, EdgeId> = BTreeMap::new();
    let mut order = Vec::new();
    let mut bridges: BTreeSet<EdgeId> = BTreeSet::new();
    let root0 = ids[0];
    let mut timer = 0;
    let mut stack: Vec<(usize, usize)> = vec![(root0, 0)];
    disc.insert(root0, timer);
    low.insert(root0, timer);
    order.push(root0);
    timer += 1;
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i < inc[&v].len() {
            let (e, w) = inc[&v][*i];
            *i += 1;
            if Some(&e) == parent_edge.get(&v) {
                continue;
            }
            if let Some(&dw) = disc.get(&w) {
                let lv = low[&v].min(dw);
                low.insert(v, lv);
            } else {
                disc.insert(w, timer);
                low.insert(w, timer);
                order.push(w);
                timer += 1;
                parent_edge.insert(w, e);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
            if let Some(&pe) = parent_edge.get(&v) {
                let (a, b) = g.endpoints(pe).unwrap();
                let u = if a == v { b } else { a };
                if low[&v] > disc[&u] {
                    bridges.insert(pe);
                }
                let lu = low[&u].min(low[&v]);
                low.insert(u, lu);
            }
        }
    }
    // choose the DFS root so it lies in a non-trivial block when one
    // exists: redo nothing, instead orient bridges "up" toward root0 only
    // if root0's own component is non-trivial; otherwise flip everything
    // so the bridge tree points at a vertex with a non-bridge edge.
    let has_nonbridge = |v: usize| inc[&v].iter().any(|&(e, _)| !bridges.contains(&e));
    let target_root = ids
        .iter()
        .copied()
        .find(|&v| has_nonbridge(v))
        .unwrap_or(root0);
    // recompute DFS orientation from target_root
    let (disc, parent_edge) = {
        let mut disc: BTreeMap<usize, usize> = BTreeMap::new();
        let mut parent_edge: BTreeMap<usize, EdgeId> = BTreeMap::new();
        let mut timer = 0;
        let mut stack: Vec<(usize, usize)> = vec![(target_root, 0)];
        disc.insert(target_root, timer);
        timer += 1;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < inc[&v].len() {
                let (e, w) = inc[&v][*i];
                *i += 1;
                if Some(&e) == parent_edge.get(&v) || disc.contains_key(&w) {
                    continue;
                }
                disc.insert(w, timer);
                timer += 1;
                parent_edge.insert(w, e);
                stack.push((w, 0));
            } else {
                stack.pop();
            }
        }
        (disc, parent_edge)
    };
    let mut directed = Vec::new();
    let mut seen_edges = BTreeSet::new();
    for (&w, &e) in &parent_edge {
        // tree edge u -> w in the DFS
        let (a, b) = g.endpoints(e).unwrap();
        let u = if a == w { b } else { a };
        seen_edges.insert(e);
        if bridges.contains(&e) {
            // bridge: orient toward the root, i.e. child -> parent
            directed.push((e, w, u));
        } else {
            // non-bridge tree edge: parent -> child
            directed.push((e, u, w));
        }
    }
    for e in g.edge_ids() {
        if seen_edges.contains(&e) {
            continue;
        }
        let (u, v) = g.endpoints(e).unwrap();
        if u == v {
            directed.push((e, u, v));
            continue;
        }
        // non-tree edge: later discovery -> earlier (back edge up)
        if disc[&u] > disc[&v] {
            directed.push((e, u, v));
        } else {
            directed.push((e, v, u));
        }
    }
    let mut outdeg: BTreeMap<usize, usize> = ids.iter().map(|&v| (v, 0)).collect();
    for &(_, t, _) in &directed {
        *outdeg.get_mut(&t).unwrap() += 1;
    }
    let sinks: Vec<usize> = ids.iter().copied().filter(|v| outdeg[v] == 0).collect();
    Ok(Orientation { directed, sinks })
}

// ----- r-families -----

/// A maximal set of degree-2 vertices sharing the neighbor pair
/// `neighbors`, ordered so consecutive members bound a common face.
#[derive(Debug, Clone)]
pub struct RFamily {
    pub neighbors: (VertexId, VertexId),
    pub members: Vec<VertexId>,
    pub nicely_embedded: bool,
    /// vertex sets strictly enclosed by bounded faces of the family
    /// subgraph
    pub obstructions: Vec<Vec<VertexId>>,
}

impl RFamily {
    pub fn r(&self) -> usize {
        self.members.len()
    }

    fn check_fresh(&self, g: &PlaneGraph) -> Result<()> {
        let (a, b) = self.neighbors;
        for &m in &self.members {
            if !g.vertex_alive(m) || g.degree(m) != 2 {
                return Err(Error::StaleFamily(format!("member {m} is no longer degree 2")));
            }
            let ns = g.neighbor_set(m);
            if ns != BTreeSet::from([a, b]) {
                return Err(Error::StaleFamily(format!(
                    "member {m} no longer has neighbors {{{a}, {b}}}"
                )));
            }
        }
        Ok(())
    }

    /// Edges of the family subgraph H: the edges incident to members.
    fn h_edges(&self, g: &PlaneGraph) -> BTreeSet<EdgeId> {
        let mut out = BTreeSet::new();
        for &m in &self.members {
            for d in g.darts_at(m) {
                out.insert(g.edge_of(d));
            }
        }
        out
    }
}

/// All maximal families with at least `r_min` members, each with its
/// embedding flag and obstructions filled in.
pub fn find_r_families(g: &PlaneGraph, r_min: usize) -> Vec<RFamily> {
    let mut buckets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for v in g.vertices() {
        if g.degree(v) != 2 {
            continue;
        }
        let ns: Vec<usize> = g.neighbor_set(v).into_iter().collect();
        if ns.len() != 2 || ns.contains(&v) {
            continue;
        }
        buckets.entry((ns[0], ns[1])).or_default().push(v);
    }
    let mut out = Vec::new();
    for ((a, b), members) in buckets {
        if members.len() < r_min {
            continue;
        }
        let mut fam = RFamily {
            neighbors: (a, b),
            members,
            nicely_embedded: true,
            obstructions: Vec::new(),
        };
        order_members(g, &mut fam);
        let (nice, obstructions) =
            is_nicely_embedded(g, &fam).expect("family freshly computed");
        fam.nicely_embedded = nice;
        fam.obstructions = obstructions;
        out.push(fam);
    }
    out
}

/// Order family members along the lens structure: consecutive members
/// bound a common bounded face of the family subgraph; the unbounded side
/// breaks the cycle, and the lower-id endpoint comes first.
fn order_members(g: &PlaneGraph, fam: &mut RFamily) {
    let r = fam.members.len();
    if r <= 2 {
        fam.members.sort_unstable();
        return;
    }
    let member_set: BTreeSet<usize> = fam.members.iter().copied().collect();
    let sub = embedded_subgraph(g, &fam.h_edges(g)).expect("family subgraph nonempty");
    // each bounded face of H touches exactly two members; collect the
    // consecutive pairs
    let mut next: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for f in sub.sub_faces.bounded() {
        let ms: Vec<usize> = f
            .vertices
            .iter()
            .copied()
            .filter(|v| member_set.contains(v))
            .collect();
        debug_assert_eq!(ms.len(), 2, "family lens with unexpected member count");
        next.entry(ms[0]).or_default().push(ms[1]);
        next.entry(ms[1]).or_default().push(ms[0]);
    }
    // the adjacency is a path on the members; find its endpoints
    let endpoints: Vec<usize> = fam
        .members
        .iter()
        .copied()
        .filter(|m| next.get(m).map_or(0, |l| l.len()) <= 1)
        .collect();
    debug_assert_eq!(endpoints.len(), 2, "family lens order is not a path");
    let start = *endpoints.iter().min().unwrap();
    let mut order = vec![start];
    let mut prev = usize::MAX;
    while order.len() < r {
        let cur = *order.last().unwrap();
        let step = next[&cur]
            .iter()
            .copied()
            .find(|&m| m != prev)
            .expect("path continues");
        prev = cur;
        order.push(step);
    }
    fam.members = order;
}

/// Obstruction vertex sets per lens of the family: entry i holds the
/// vertices strictly enclosed by the lens face between members[i] and
/// members[i+1] of the family subgraph.
pub fn lens_obstructions(g: &PlaneGraph, fam: &RFamily) -> Result<Vec<Vec<VertexId>>> {
    fam.check_fresh(g)?;
    let h_vertices: BTreeSet<usize> = fam
        .members
        .iter()
        .copied()
        .chain([fam.neighbors.0, fam.neighbors.1])
        .collect();
    let position: BTreeMap<usize, usize> = fam
        .members
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let sub = embedded_subgraph(g, &fam.h_edges(g))?;
    // each bounded face of H is the lens between two consecutive members
    let mut lens_of_region: BTreeMap<usize, usize> = BTreeMap::new();
    for f in sub.sub_faces.bounded() {
        let ps: Vec<usize> = f
            .vertices
            .iter()
            .filter_map(|v| position.get(v).copied())
            .collect();
        debug_assert_eq!(ps.len(), 2, "family lens with unexpected member count");
        lens_of_region.insert(f.id, *ps.iter().min().unwrap());
    }
    let mut out = vec![Vec::new(); fam.members.len().saturating_sub(1)];
    for v in g.vertices() {
        if h_vertices.contains(&v) {
            continue;
        }
        // all faces around a vertex outside H merge into one region
        let d = g.darts_at(v)[0];
        let region = sub.assignment[sub.g_faces.face_of_dart[d]];
        if sub.sub_faces.faces[region].bounded {
            out[lens_of_region[&region]].push(v);
        }
    }
    Ok(out)
}

/// Whether the family is nicely embedded: no bounded face of the family
/// subgraph strictly encloses a vertex of g. Returns the obstruction
/// vertex sets otherwise, grouped per enclosing face.
pub fn is_nicely_embedded(g: &PlaneGraph, fam: &RFamily) -> Result<(bool, Vec<Vec<VertexId>>)> {
    let obstructions: Vec<Vec<usize>> = lens_obstructions(g, fam)?
        .into_iter()
        .filter(|o| !o.is_empty())
        .collect();
    Ok((obstructions.is_empty(), obstructions))
}

// ----- constructive matchings -----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// fewer than 33 vertices: direct maximum matching
    Small,
    /// few degree-2 vertices: augment to minimum degree 3
    Case1,
    /// many lonely degree-2 vertices: paths and cycles
    Case2a,
    /// many social degree-2 vertices: orient the contracted graph
    Case2b,
    /// many family vertices: harvest obstruction edges
    NiceCase1,
    /// few family vertices: trim families, reuse the r-family bound
    NiceCase2,
}

/// Record of which proof case produced the matching and the quantities
/// the case analysis branched on.
#[derive(Debug, Clone)]
pub struct MatchingConstructionTrace {
    pub case: CaseTag,
    /// fraction of vertices of degree 2
    pub c: f64,
    /// fraction of degree-2 vertices that are social
    pub q: f64,
    /// social vertices with a social neighbor (matched pairwise)
    pub t1: usize,
    /// isolated social vertices
    pub t2: usize,
    /// edges of the intermediate subgraph the case worked on
    pub h_edges: Vec<EdgeId>,
    /// simple contracted graph size (case 2b)
    pub fbar_vertices: usize,
    pub fbar_edges: usize,
    /// harvested obstruction count (family-obstruction case)
    pub obstruction_count: usize,
    /// trace of the inner family-free construction (trimmed-family case)
    pub inner: Option<Box<MatchingConstructionTrace>>,
}

impl MatchingConstructionTrace {
    fn new(case: CaseTag) -> Self {
        MatchingConstructionTrace {
            case,
            c: 0.0,
            q: 0.0,
            t1: 0,
            t2: 0,
            h_edges: Vec::new(),
            fbar_vertices: 0,
            fbar_edges: 0,
            obstruction_count: 0,
            inner: None,
        }
    }
}

fn require_min_degree_two(g: &PlaneGraph) -> Result<()> {
    for v in g.vertices() {
        if g.degree(v) < 2 {
            return Err(Error::PreconditionViolated(format!(
                "vertex {v} has degree {}",
                g.degree(v)
            )));
        }
    }
    Ok(())
}

/// Lowest-id alive edge between u and v.
fn edge_between(g: &PlaneGraph, u: VertexId, v: VertexId) -> Option<EdgeId> {
    g.darts_at(u)
        .into_iter()
        .filter(|&d| g.dart_head(d) == v)
        .map(|d| g.edge_of(d))
        .min()
}

/// A matching of size at least n/(12r−3) in a connected plane graph of
/// minimum degree 2 with no r-family.
pub fn matching_no_r_family(
    g: &PlaneGraph,
    r: usize,
) -> Result<(Matching, MatchingConstructionTrace)> {
    if r < 3 {
        return Err(Error::PreconditionViolated("r must be at least 3".into()));
    }
    g.require_connected()?;
    require_min_degree_two(g)?;
    if !find_r_families(g, r).is_empty() {
        return Err(Error::PreconditionViolated(format!("graph has an {r}-family")));
    }
    let n = g.vertex_count();
    let deg2: Vec<usize> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    let mut trace = MatchingConstructionTrace::new(CaseTag::Small);
    trace.c = deg2.len() as f64 / n as f64;
    if n < 33 {
        let (h, map) = g.to_abstract_with_ids();
        let m = maximum_matching(&h);
        let edges = m.edges.iter().map(|e| map[e]).collect();
        return Ok((Matching { edges }, trace));
    }
    // case split on c vs (2r−1)/(4r−1), in integers
    if deg2.len() * (4 * r - 1) <= n * (2 * r - 1) {
        trace.case = CaseTag::Case1;
        let m = case1_augment(g, &deg2);
        debug_assert!(m.is_valid_on(g));
        return Ok((m, trace));
    }
    // lonely vs social
    let is_deg2 = |v: usize| g.degree(v) == 2;
    let lonely: Vec<usize> = deg2
        .iter()
        .copied()
        .filter(|&v| g.neighbors(v).iter().all(|&w| is_deg2(w)))
        .collect();
    let social: Vec<usize> = deg2
        .iter()
        .copied()
        .filter(|&v| !g.neighbors(v).iter().all(|&w| is_deg2(w)))
        .collect();
    trace.q = social.len() as f64 / deg2.len() as f64;
    if social.len() * (2 * r - 1) <= deg2.len() * (2 * r - 2) {
        // case 2a: edges incident to lonely vertices form paths/cycles
        trace.case = CaseTag::Case2a;
        let lonely_set: BTreeSet<usize> = lonely.iter().copied().collect();
        let mut h = AbstractGraph::new(g.vertex_id_bound());
        let mut edge_map = Vec::new();
        for e in g.edge_ids() {
            let (u, v) = g.endpoints(e);
            if lonely_set.contains(&u) || lonely_set.contains(&v) {
                let id = h.add_edge(u, v);
                edge_map.push((id, e));
                trace.h_edges.push(e);
            }
        }
        let m = maximum_matching(&h);
        let edges = m
            .edges
            .iter()
            .map(|&he| edge_map.iter().find(|&&(a, _)| a == he).unwrap().1)
            .collect();
        let m = Matching { edges };
        debug_assert!(m.is_valid_on(g));
        return Ok((m, trace));
    }
    // case 2b: social structure
    trace.case = CaseTag::Case2b;
    let social_set: BTreeSet<usize> = social.iter().copied().collect();
    let mut edges = Vec::new();
    let mut isolated = Vec::new();
    for &s in &social {
        let social_nb: Vec<usize> = g
            .neighbor_set(s)
            .into_iter()
            .filter(|w| social_set.contains(w))
            .collect();
        match social_nb.first() {
            Some(&w) => {
                if s < w {
                    edges.push(edge_between(g, s, w).unwrap());
                    trace.t1 += 2;
                }
            }
            None => {
                isolated.push(s);
                trace.t2 += 1;
            }
        }
    }
    // contract each isolated social vertex into one endpoint: the
    // contracted multigraph F has one edge per isolated vertex; its
    // simple version F̄ is what we orient
    let mut fbar = AbstractGraph::new(g.vertex_id_bound());
    let mut fbar_pairs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for &i in &isolated {
        for d in g.darts_at(i) {
            trace.h_edges.push(g.edge_of(d));
        }
        let nb: Vec<usize> = g.neighbors(i);
        let (u, w) = (nb[0], nb[1]);
        if u == w {
            continue; // member of a parallel pair; contributes a loop in F
        }
        let key = (u.min(w), u.max(w));
        if !fbar_pairs.contains_key(&key) {
            fbar.add_edge(key.0, key.1);
        }
        fbar_pairs.entry(key).or_default().push(i);
    }
    trace.fbar_vertices = fbar.vertices().filter(|&v| fbar.degree(v) > 0).count();
    trace.fbar_edges = fbar.edge_count();
    // no r-family means at most r−1 subdividers share a neighbor pair, so
    // the simple contracted graph keeps its guaranteed size
    let contracted: usize = fbar_pairs.values().map(|v| v.len()).sum();
    debug_assert!(trace.fbar_edges * (r - 1) >= contracted);
    debug_assert!(trace.fbar_vertices * 3 * (r - 1) >= contracted);
    // per component of F̄: orient with at most one sink, each non-sink
    // contributes an edge through its subdividing social vertex
    let comps = fbar.components();
    let mut used_isolated: BTreeSet<usize> = BTreeSet::new();
    for comp in comps {
        if comp.len() < 2 && fbar.degree(comp[0]) == 0 {
            continue;
        }
        let sub = fbar.induced(&comp.iter().copied().collect::<BTreeSet<_>>());
        let orientation = orient_one_sink(&sub)?;
        let mut picked: BTreeSet<EdgeId> = BTreeSet::new();
        for &u in &comp {
            let out = orientation
                .directed
                .iter()
                .filter(|&&(e, t, _)| t == u && !picked.contains(&e))
                .min_by_key(|&&(e, _, _)| e);
            if let Some(&(fe, _, head)) = out {
                picked.insert(fe);
                let key = (u.min(head), u.max(head));
                let i = *fbar_pairs[&key]
                    .iter()
                    .find(|i| !used_isolated.contains(i))
                    .expect("each F̄ edge has a subdividing vertex");
                used_isolated.insert(i);
                edges.push(edge_between(g, u, i).unwrap());
            }
        }
    }
    let m = Matching { edges };
    debug_assert!(m.is_valid_on(g));
    Ok((m, trace))
}

/// Few-degree-2-vertices case: add a degree-3 apex beside every degree-2 vertex,
/// take a maximum matching of the augmented graph, and keep the edges
/// that live in g.
fn case1_augment(g: &PlaneGraph, _deg2: &[usize]) -> Matching {
    let (mut h, edge_map) = g.to_abstract_with_ids();
    let original_bound = h.id_bound();
    loop {
        let v = match h.vertices().find(|&v| h.degree(v) == 2) {
            Some(v) => v,
            None => break,
        };
        let nb: Vec<usize> = h.neighbor_set(v).into_iter().collect();
        let x = h.add_vertex();
        h.add_edge(x, v);
        for w in nb {
            h.add_edge(x, w);
        }
    }
    let m = maximum_matching(&h);
    let edges = m
        .edges
        .iter()
        .filter_map(|&he| {
            let (u, v) = h.endpoints(he)?;
            (u < original_bound && v < original_bound)
                .then(|| edge_map.get(&he).copied())
                .flatten()
        })
        .collect();
    Matching { edges }
}

/// A matching of size at least n/37 in a connected plane graph of minimum
/// degree 2 with no nicely embedded r-family (r ≥ 3).
pub fn matching_no_nice_family(
    g: &PlaneGraph,
) -> Result<(Matching, MatchingConstructionTrace)> {
    g.require_connected()?;
    require_min_degree_two(g)?;
    let families = find_r_families(g, 3);
    if let Some(f) = families.iter().find(|f| f.nicely_embedded) {
        return Err(Error::PreconditionViolated(format!(
            "nicely embedded {}-family at neighbors {:?}",
            f.r(),
            f.neighbors
        )));
    }
    // sub-families count too: two consecutive unobstructed lenses are a
    // nicely embedded 3-family, and the case-1 obstruction harvest below
    // relies on every other lens being obstructed
    for f in &families {
        let lenses = lens_obstructions(g, f)?;
        if lenses.windows(2).any(|w| w[0].is_empty() && w[1].is_empty()) {
            return Err(Error::PreconditionViolated(format!(
                "nicely embedded 3-family inside the {}-family at neighbors {:?}",
                f.r(),
                f.neighbors
            )));
        }
    }
    let n = g.vertex_count();
    if n < 33 {
        let trace = MatchingConstructionTrace::new(CaseTag::Small);
        let (h, map) = g.to_abstract_with_ids();
        let m = maximum_matching(&h);
        let edges = m.edges.iter().map(|e| map[e]).collect();
        return Ok((Matching { edges }, trace));
    }
    let p: usize = families.iter().map(|f| f.r()).sum();
    if p * 37 >= 4 * n {
        // case 1: harvest one edge per obstruction
        let mut trace = MatchingConstructionTrace::new(CaseTag::NiceCase1);
        let mut used: BTreeSet<usize> = BTreeSet::new();
        let mut edges = Vec::new();
        for fam in &families {
            for obs in &fam.obstructions {
                let inside: BTreeSet<usize> = obs.iter().copied().collect();
                let pick = g
                    .edge_ids()
                    .filter(|&e| {
                        let (u, v) = g.endpoints(e);
                        u != v
                            && inside.contains(&u)
                            && inside.contains(&v)
                            && !used.contains(&u)
                            && !used.contains(&v)
                    })
                    .min();
                if let Some(e) = pick {
                    let (u, v) = g.endpoints(e);
                    used.insert(u);
                    used.insert(v);
                    edges.push(e);
                    trace.obstruction_count += 1;
                }
            }
        }
        let m = Matching { edges };
        debug_assert!(m.is_valid_on(g));
        return Ok((m, trace));
    }
    // case 2: keep only the first and last member of each family, then
    // apply the 3-family-free bound; edge ids survive vertex deletion
    let mut trimmed = g.clone();
    for fam in &families {
        for &m in &fam.members[1..fam.r() - 1] {
            trimmed.delete_vertex(m);
        }
    }
    let (m, inner) = matching_no_r_family(&trimmed, 3)?;
    let mut trace = MatchingConstructionTrace::new(CaseTag::NiceCase2);
    trace.inner = Some(Box::new(inner));
    debug_assert!(m.is_valid_on(g));
    Ok((m, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::{cycle, grid, k2r, path, PlaneGraph};

    #[test]
    fn maximum_matching_examples() {
        // K_{2,5}
        let g = k2r(5).to_abstract();
        assert_eq!(maximum_matching(&g).size(), 2);
        // C5
        let g = cycle(5).to_abstract();
        assert_eq!(maximum_matching(&g).size(), 2);
        // Petersen graph has a perfect matching
        let outer: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let spokes: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 5)).collect();
        let inner: Vec<(usize, usize)> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
        let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
        let g = AbstractGraph::from_edges(10, &edges);
        let m = maximum_matching(&g);
        assert_eq!(m.size(), 5);
        assert!(m.is_valid_on_abstract(&g));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_maximal_matching(&cycle(4)).size(), 2);
        // star: path star via build: center 0 with 5 leaves
        let mut lists = vec![(1..6).collect::<Vec<_>>()];
        lists.extend((0..5).map(|_| vec![0]));
        let star = PlaneGraph::build_embedding(&lists).unwrap();
        assert_eq!(greedy_maximal_matching(&star).size(), 1);
    }

    #[test]
    fn greedy_at_least_half_max() {
        for g in [cycle(7), grid(3, 4), k2r(4), path(9)] {
            let greedy = greedy_maximal_matching(&g).size();
            let max = maximum_matching(&g.to_abstract()).size();
            assert!(2 * greedy >= max);
        }
    }

    #[test]
    fn orientation_examples() {
        let c5 = cycle(5).to_abstract();
        assert_eq!(orient_one_sink(&c5).unwrap().sinks.len(), 0);

        let p3 = path(3).to_abstract();
        assert_eq!(orient_one_sink(&p3).unwrap().sinks.len(), 1);

        // two triangles joined by a bridge
        let g = AbstractGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)],
        );
        assert_eq!(orient_one_sink(&g).unwrap().sinks.len(), 0);
    }

    #[test]
    fn orientation_covers_every_edge_once() {
        let g = grid(3, 3).to_abstract();
        let o = orient_one_sink(&g).unwrap();
        assert_eq!(o.directed.len(), g.edge_count());
        assert!(o.sinks.len() <= 1);
    }

    #[test]
    fn families_in_k23() {
        let g = k2r(3);
        let fams = find_r_families(&g, 3);
        assert_eq!(fams.len(), 1);
        let f = &fams[0];
        assert_eq!(f.r(), 3);
        assert_eq!(f.neighbors, (0, 1));
        assert!(f.nicely_embedded);
        // members ordered by shared lenses
        assert_eq!(f.members.len(), 3);
    }

    #[test]
    fn four_cycle_has_no_3_family() {
        assert!(find_r_families(&cycle(4), 3).is_empty());
        assert_eq!(find_r_families(&cycle(4), 2).len(), 2);
    }

    #[test]
    fn k24_with_chord_still_a_family() {
        // K_{2,4} plus the edge (a,b) threaded through the outermost lens
        let mut g = k2r(4);
        let fs = g.faces();
        // find a bounded face containing both 0 and 1 next to each other
        let f = fs
            .bounded()
            .find(|f| f.vertices.contains(&0) && f.vertices.contains(&1))
            .unwrap();
        let d0 = *f
            .walk
            .iter()
            .find(|&&d| g.dart_origin(d) == 0)
            .unwrap();
        let d1 = *f
            .walk
            .iter()
            .find(|&&d| g.dart_origin(d) == 1)
            .unwrap();
        let corners = if f.walk.iter().position(|&d| d == d0) < f.walk.iter().position(|&d| d == d1)
        {
            vec![d0, d1]
        } else {
            vec![d1, d0]
        };
        let x = g.add_vertex_in_face(&corners).unwrap();
        // contract one of the two new edges to create a direct chord
        let e = g
            .darts_at(x)
            .into_iter()
            .map(|d| g.edge_of(d))
            .min()
            .unwrap();
        let (g, _) = crate::plane_graph::contract_matching(&g, &[e]).unwrap();
        let fams = find_r_families(&g, 3);
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].r(), 4);
    }

    #[test]
    fn obstruction_detected() {
        // K_{2,3} with an isolated-ish edge drawn inside one lens
        let mut g = k2r(3);
        let fs = g.faces();
        let lens = fs.bounded().next().unwrap();
        // anchor inside the lens at a common neighbor so the members keep
        // degree 2
        let corner = *lens
            .walk
            .iter()
            .find(|&&d| g.dart_origin(d) == 0 || g.dart_origin(d) == 1)
            .unwrap();
        let corners = vec![corner];
        let x = g.add_vertex_in_face(&corners).unwrap();
        // hang a second vertex off x so the enclosed piece has an edge
        let fs = g.faces();
        let f = fs.bounded().find(|f| f.vertices.contains(&x)).unwrap();
        let cx = *f.walk.iter().find(|&&d| g.dart_origin(d) == x).unwrap();
        let y = g.add_vertex_in_face(&[cx]).unwrap();
        g.validate().unwrap();
        let fams = find_r_families(&g, 3);
        assert_eq!(fams.len(), 1);
        assert!(!fams[0].nicely_embedded);
        let obs: BTreeSet<usize> = fams[0].obstructions.iter().flatten().copied().collect();
        assert!(obs.contains(&x));
        assert!(obs.contains(&y));
    }

    #[test]
    fn no_family_matching_on_cycles() {
        let (m, trace) = matching_no_r_family(&cycle(9), 3).unwrap();
        assert!(m.is_valid_on(&cycle(9)));
        assert!(m.size() >= 1); // 9 < 33: small case
        assert_eq!(trace.case, CaseTag::Small);
        assert_eq!(m.size(), 4);

        let g = cycle(40);
        let (m, trace) = matching_no_r_family(&g, 3).unwrap();
        assert_eq!(trace.case, CaseTag::Case2a);
        assert!(m.is_valid_on(&g));
        assert!(m.size() * 33 >= 40);
    }

    #[test]
    fn no_family_matching_case1() {
        // a 6x7 grid has no degree-2 interior...corners are degree 2 but
        // share no neighbors; c = 4/42 is small -> case 1
        let g = grid(6, 7);
        let (m, trace) = matching_no_r_family(&g, 3).unwrap();
        assert_eq!(trace.case, CaseTag::Case1);
        assert!(m.is_valid_on(&g));
        assert!(m.size() * 33 >= 42);
    }

    #[test]
    fn no_nice_family_matching_on_plain_graphs() {
        let g = cycle(12);
        let (m, _) = matching_no_nice_family(&g).unwrap();
        assert_eq!(m.size(), 6);

        let g = cycle(40);
        let (m, _) = matching_no_nice_family(&g).unwrap();
        assert!(m.size() * 37 >= 40);
    }

    #[test]
    fn nice_family_rejected() {
        let g = k2r(3);
        assert!(matches!(
            matching_no_nice_family(&g),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            matching_no_r_family(&k2r(3), 3),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn degree_one_rejected() {
        assert!(matches!(
            matching_no_r_family(&path(5), 3),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
