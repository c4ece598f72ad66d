//! The embedded-width decision pipeline and the exact desk-scale solvers.
//!
//! The exact treewidth solver is a memoized branch-and-bound over
//! elimination orders: a graph has treewidth at most k iff its vertices
//! can be eliminated so that, at each step, the eliminated vertex reaches
//! at most k uneliminated vertices through already-eliminated ones.

use std::collections::{BTreeSet, HashSet};

use crate::abstract_graph::AbstractGraph;
use crate::decomposition::{validate_em_decomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::plane_graph::PlaneGraph;

pub const DEFAULT_EXACT_CAP: usize = 20;

/// The answer to "does g have em-width at most k?": a witness
/// decomposition accompanies every yes.
#[derive(Debug, Clone)]
pub struct EmWidthAnswer {
    pub decision: bool,
    pub decomposition: Option<TreeDecomposition>,
    pub certificate_width: Option<usize>,
}

impl EmWidthAnswer {
    pub fn no() -> Self {
        EmWidthAnswer {
            decision: false,
            decomposition: None,
            certificate_width: None,
        }
    }

    pub fn yes(t: TreeDecomposition) -> Self {
        let w = t.width_value().max(0) as usize;
        EmWidthAnswer {
            decision: true,
            decomposition: Some(t),
            certificate_width: Some(w),
        }
    }
}

// ----- elimination-order engine -----

struct ElimSearch {
    adj: Vec<u128>,
    k: usize,
    all: u128,
    failed: HashSet<u128>,
}

impl ElimSearch {
    /// Uneliminated vertices reachable from `v` via eliminated ones: the
    /// neighborhood of `v` in the fill graph at this state.
    fn reach(&self, eliminated: u128, v: usize) -> u128 {
        let mut out = 0u128;
        let mut visited = 1u128 << v;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            let mut fresh = self.adj[u] & !visited;
            visited |= fresh;
            while fresh != 0 {
                let w = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                if eliminated & (1 << w) != 0 {
                    stack.push(w);
                } else {
                    out |= 1 << w;
                }
            }
        }
        out
    }

    /// Try to complete an elimination order from this state; returns the
    /// order of the remaining vertices on success.
    fn search(&mut self, eliminated: u128) -> Option<Vec<usize>> {
        if eliminated == self.all {
            return Some(Vec::new());
        }
        if self.failed.contains(&eliminated) {
            return None;
        }
        let mut alive: Vec<usize> = Vec::new();
        {
            let mut rest = self.all & !eliminated;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                alive.push(v);
            }
        }
        let reaches: Vec<u128> = alive.iter().map(|&v| self.reach(eliminated, v)).collect();
        // safe move: a simplicial vertex (fill neighborhood is a clique)
        // of fill degree <= k can always be eliminated first
        for (i, &v) in alive.iter().enumerate() {
            let r = reaches[i];
            let q = r.count_ones() as usize;
            if q > self.k {
                continue;
            }
            let simplicial = alive
                .iter()
                .enumerate()
                .filter(|&(_, &a)| r & (1 << a) != 0)
                .all(|(j, &a)| reaches[j] & r == r & !(1u128 << a));
            if simplicial {
                return match self.search(eliminated | (1 << v)) {
                    Some(mut ord) => {
                        ord.insert(0, v);
                        Some(ord)
                    }
                    None => {
                        self.failed.insert(eliminated);
                        None
                    }
                };
            }
        }
        let mut candidates: Vec<(usize, usize)> = alive
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| {
                let q = reaches[i].count_ones() as usize;
                (q <= self.k).then_some((q, v))
            })
            .collect();
        candidates.sort_unstable();
        for (_, v) in candidates {
            if let Some(mut ord) = self.search(eliminated | (1 << v)) {
                ord.insert(0, v);
                return Some(ord);
            }
        }
        self.failed.insert(eliminated);
        None
    }
}

/// Dense view of an abstract graph for the elimination engine.
struct Dense {
    ids: Vec<usize>, // dense index -> original vertex id
    adj: Vec<u128>,
}

fn densify(g: &AbstractGraph) -> Result<Dense> {
    let ids: Vec<usize> = g.vertices().collect();
    if ids.len() > 128 {
        return Err(Error::InstanceTooLarge {
            n: ids.len(),
            cap: 128,
        });
    }
    let index = |v: usize| ids.binary_search(&v).unwrap();
    let mut adj = vec![0u128; ids.len()];
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e).unwrap();
        if u == v {
            continue;
        }
        adj[index(u)] |= 1 << index(v);
        adj[index(v)] |= 1 << index(u);
    }
    Ok(Dense { ids, adj })
}

/// Build the decomposition induced by an elimination order: the bag of
/// the i-th eliminated vertex is itself plus its fill neighborhood at
/// elimination time; it attaches to the node of the earliest-eliminated
/// vertex of that neighborhood.
fn decomposition_from_order(d: &Dense, order: &[usize]) -> TreeDecomposition {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let search = ElimSearch {
        adj: d.adj.clone(),
        k: n,
        all: if n == 128 { u128::MAX } else { (1u128 << n) - 1 },
        failed: HashSet::new(),
    };
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    let mut eliminated = 0u128;
    for (i, &v) in order.iter().enumerate() {
        let r = search.reach(eliminated, v);
        let mut bag = BTreeSet::new();
        bag.insert(d.ids[v]);
        let mut attach: Option<usize> = None;
        let mut rest = r;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            bag.insert(d.ids[w]);
            attach = Some(match attach {
                Some(a) if pos[a] <= pos[w] => a,
                _ => w,
            });
        }
        bags.push(bag);
        match attach {
            Some(a) => tree_edges.push((i, pos[a])),
            None if i + 1 < n => tree_edges.push((i, i + 1)),
            None => {}
        }
        eliminated |= 1 << v;
    }
    TreeDecomposition { bags, tree_edges }
}

/// Decide whether `g` (simple view; parallel edges and loops ignored) has
/// treewidth at most k, returning a witness decomposition. No size cap
/// beyond the 128-vertex engine limit.
pub fn treewidth_at_most(g: &AbstractGraph, k: usize) -> Result<Option<TreeDecomposition>> {
    let d = densify(g)?;
    let n = d.ids.len();
    if n == 0 {
        return Ok(Some(TreeDecomposition {
            bags: vec![],
            tree_edges: vec![],
        }));
    }
    let mut search = ElimSearch {
        adj: d.adj.clone(),
        k,
        all: if n == 128 { u128::MAX } else { (1u128 << n) - 1 },
        failed: HashSet::new(),
    };
    match search.search(0) {
        Some(order) => Ok(Some(decomposition_from_order(&d, &order))),
        None => Ok(None),
    }
}

/// Heuristic tree decomposition from a minimum-fill-in elimination
/// order; no optimality guarantee, but valid on any graph up to the
/// 128-vertex engine limit.
pub fn min_fill_decomposition(g: &AbstractGraph) -> Result<TreeDecomposition> {
    let d = densify(g)?;
    let n = d.ids.len();
    if n == 0 {
        return Ok(TreeDecomposition {
            bags: vec![],
            tree_edges: vec![],
        });
    }
    let mut adj = d.adj.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while !remaining.is_empty() {
        let fill = |v: usize| {
            let nb = adj[v];
            let mut missing = 0usize;
            let mut rest = nb;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                missing += (nb & !adj[w] & !(1u128 << w)).count_ones() as usize;
            }
            missing / 2
        };
        let (pos, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| (fill(v), adj[v].count_ones(), v))
            .unwrap();
        remaining.swap_remove(pos);
        // make the neighborhood a clique, then drop v
        let nb = adj[v];
        let mut rest = nb;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            adj[w] |= nb & !(1u128 << w);
            adj[w] &= !(1u128 << v);
        }
        adj[v] = 0;
        order.push(v);
    }
    Ok(decomposition_from_order(&d, &order))
}

/// Degeneracy: a lower bound on treewidth.
fn degeneracy(g: &AbstractGraph) -> usize {
    let adj = g.simple_adjacency();
    let mut deg: Vec<usize> = adj.iter().map(|s| s.len()).collect();
    let mut alive: BTreeSet<usize> = g.vertices().collect();
    let mut removed: HashSet<usize> = HashSet::new();
    let mut best = 0;
    while let Some(&v) = alive.iter().min_by_key(|&&v| deg[v]) {
        best = best.max(deg[v]);
        alive.remove(&v);
        removed.insert(v);
        for &w in &adj[v] {
            if !removed.contains(&w) {
                deg[w] -= 1;
            }
        }
    }
    best
}

/// Exact treewidth with a witness, for instances up to `cap` vertices.
pub fn exact_treewidth_capped(
    g: &AbstractGraph,
    cap: usize,
) -> Result<(usize, TreeDecomposition)> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::InstanceTooLarge { n, cap });
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::single_bag([])));
    }
    let mut k = degeneracy(g);
    loop {
        if let Some(t) = treewidth_at_most(g, k)? {
            return Ok((k, t));
        }
        k += 1;
    }
}

/// Exact treewidth under the default cap.
pub fn exact_treewidth(g: &AbstractGraph) -> Result<(usize, TreeDecomposition)> {
    exact_treewidth_capped(g, DEFAULT_EXACT_CAP)
}

/// Exact em-width: exact treewidth of the facial completion. The witness
/// is an em-decomposition of g.
pub fn exact_emwidth_capped(g: &PlaneGraph, cap: usize) -> Result<(usize, TreeDecomposition)> {
    exact_treewidth_capped(&crate::decomposition::facial_completion(g), cap)
}

pub fn exact_emwidth(g: &PlaneGraph) -> Result<(usize, TreeDecomposition)> {
    exact_emwidth_capped(g, DEFAULT_EXACT_CAP)
}

/// Turn a valid em-decomposition of any width into one of width <= k, or
/// answer no. The input decomposition short-circuits the search when it
/// is already good enough; otherwise the exact solver runs on the facial
/// completion.
pub fn improve_decomposition(
    g: &PlaneGraph,
    t: &TreeDecomposition,
    k: usize,
) -> Result<EmWidthAnswer> {
    let report = validate_em_decomposition(g, t)?;
    if !report.all_properties_hold() {
        return Err(Error::InvalidInputDecomposition(format!(
            "input is not an em-decomposition: {report:?}"
        )));
    }
    if report.width >= 0 && (report.width as usize) <= k {
        return Ok(EmWidthAnswer::yes(t.clone()));
    }
    let completion = crate::decomposition::facial_completion(g);
    match treewidth_at_most(&completion, k)? {
        Some(w) => Ok(EmWidthAnswer::yes(w)),
        None => Ok(EmWidthAnswer::no()),
    }
}

// ----- the recursive decision pipeline -----

/// One reduction applied on the way from G to G'; replaying the events
/// forward transforms G into G'.
#[derive(Debug, Clone)]
pub enum ReductionEvent {
    DegreeOneRemoved {
        vertex: usize,
        neighbor: usize,
        face_bounded: bool,
        /// distinct boundary vertices of the face the pendant edge was
        /// embedded in, including `vertex`
        face_vertices: Vec<usize>,
    },
    /// members f_2..f_{r-1} of a nicely embedded family were deleted
    FamilyCompressed {
        a: usize,
        b: usize,
        /// the full ordered member list f_1..f_r
        members: Vec<usize>,
    },
    EdgeContracted {
        edge: usize,
        merged: usize,
        u: usize,
        v: usize,
    },
    ParallelEdgeDeleted {
        edge: usize,
        endpoints: (usize, usize),
    },
}

/// Ordered log of one reduction level.
#[derive(Debug, Clone, Default)]
pub struct ReductionScript {
    pub events: Vec<ReductionEvent>,
}

/// Per-level statistics of the recursion, for tracing and for the
/// progress/edge-density checks.
#[derive(Debug, Clone)]
pub struct LevelTrace {
    pub vertices: usize,
    pub edges: usize,
    pub reduced_vertices: usize,
    pub reduced_edges: usize,
    pub script: ReductionScript,
}

/// Apply one round of reductions: strip degree-1 vertices, compress
/// nicely embedded families, contract a greedy maximal matching, and
/// delete parallel edges that bound a face.
pub fn reduce_once(g: &PlaneGraph) -> Result<(PlaneGraph, ReductionScript)> {
    let mut script = ReductionScript::default();
    let (mut h, removals) = crate::plane_graph::strip_degree_one(g);
    for r in removals {
        script.events.push(ReductionEvent::DegreeOneRemoved {
            vertex: r.vertex,
            neighbor: r.neighbor,
            face_bounded: r.face_bounded,
            face_vertices: r.face_vertices,
        });
    }
    if h.vertex_count() > 1 {
        for fam in crate::matching::find_r_families(&h, 3) {
            if !fam.nicely_embedded {
                continue;
            }
            let members = fam.members.clone();
            for &f in &members[1..members.len() - 1] {
                h.delete_vertex(f);
            }
            script.events.push(ReductionEvent::FamilyCompressed {
                a: fam.neighbors.0,
                b: fam.neighbors.1,
                members,
            });
        }
        let m = crate::matching::greedy_maximal_matching(&h);
        let (contracted, map) = crate::plane_graph::contract_matching(&h, &m.edges)?;
        for (i, &(merged, u, v)) in map.merged.iter().enumerate() {
            script.events.push(ReductionEvent::EdgeContracted {
                edge: m.edges[i],
                merged,
                u,
                v,
            });
        }
        h = contracted;
        let (simplified, deletions) = crate::plane_graph::simplify_parallel_faces(&h);
        for d in deletions {
            script.events.push(ReductionEvent::ParallelEdgeDeleted {
                edge: d.edge,
                endpoints: d.endpoints,
            });
        }
        h = simplified;
    }
    Ok((h, script))
}

/// Undo a reduction script on a decomposition of the reduced graph,
/// yielding an em-decomposition of the original graph of width at most
/// max{ℓ+1, 2w+2} − 1.
pub fn expand_decomposition(
    t: &TreeDecomposition,
    script: &ReductionScript,
) -> Result<TreeDecomposition> {
    let mut bags = t.bags.clone();
    let mut tree_edges = t.tree_edges.clone();
    for ev in script.events.iter().rev() {
        match ev {
            ReductionEvent::ParallelEdgeDeleted { .. } => {
                // the surviving copy already witnesses the edge and the
                // restored two-sided face
            }
            ReductionEvent::EdgeContracted { merged, u, v, .. } => {
                for bag in bags.iter_mut() {
                    if bag.remove(merged) {
                        bag.insert(*u);
                        bag.insert(*v);
                    }
                }
            }
            ReductionEvent::FamilyCompressed { a, b, members } => {
                let f1 = members[0];
                let fr = *members.last().unwrap();
                let x = bags
                    .iter()
                    .position(|bag| {
                        bag.contains(a) && bag.contains(b) && bag.contains(&f1) && bag.contains(&fr)
                    })
                    .ok_or(Error::BagForFamilyMissing)?;
                let mut prev = x;
                for w in members.windows(2).take(members.len() - 2) {
                    let id = bags.len();
                    bags.push([*a, *b, w[0], w[1], fr].into());
                    tree_edges.push((prev, id));
                    prev = id;
                }
            }
            ReductionEvent::DegreeOneRemoved {
                vertex,
                neighbor,
                face_bounded,
                face_vertices,
            } => {
                let (bag, anchor): (BTreeSet<usize>, _) = if *face_bounded {
                    let rest: BTreeSet<usize> = face_vertices
                        .iter()
                        .copied()
                        .filter(|w| w != vertex)
                        .collect();
                    let anchor = bags.iter().position(|b| rest.is_subset(b));
                    (face_vertices.iter().copied().collect(), anchor)
                } else {
                    let anchor = bags.iter().position(|b| b.contains(neighbor));
                    ([*vertex, *neighbor].into(), anchor)
                };
                let anchor = anchor.ok_or_else(|| {
                    Error::InvalidInputDecomposition(format!(
                        "no bag supports restoring pendant vertex {vertex}"
                    ))
                })?;
                let id = bags.len();
                bags.push(bag);
                tree_edges.push((anchor, id));
            }
        }
    }
    Ok(TreeDecomposition { bags, tree_edges })
}

fn decide_rec(g: &PlaneGraph, k: usize, trace: &mut Vec<LevelTrace>) -> Result<EmWidthAnswer> {
    if g.faces().max_bounded_length() > k + 1 {
        return Ok(EmWidthAnswer::no());
    }
    let n = g.vertex_count();
    if n <= DEFAULT_EXACT_CAP {
        let all = TreeDecomposition::single_bag(g.vertices());
        return improve_decomposition(g, &all, k);
    }
    let (reduced, script) = reduce_once(g)?;
    trace.push(LevelTrace {
        vertices: n,
        edges: g.edge_count(),
        reduced_vertices: reduced.vertex_count(),
        reduced_edges: reduced.edge_count(),
        script: ReductionScript {
            events: script.events.clone(),
        },
    });
    let comps = reduced.to_abstract().components();
    let inner = if comps.len() <= 1 {
        decide_rec(&reduced, k, trace)?
    } else {
        // reductions keep the graph connected, but recurse per component
        // just in case: join the parts by arbitrary tree edges
        let mut bags = Vec::new();
        let mut tree_edges = Vec::new();
        let mut roots = Vec::new();
        for comp in &comps {
            let mut part = reduced.clone();
            for v in reduced.vertices() {
                if !comp.contains(&v) {
                    part.delete_vertex(v);
                }
            }
            let ans = decide_rec(&part, k, trace)?;
            let Some(pt) = ans.decomposition else {
                return Ok(EmWidthAnswer::no());
            };
            let off = bags.len();
            roots.push(off);
            bags.extend(pt.bags);
            tree_edges.extend(pt.tree_edges.iter().map(|&(a, b)| (a + off, b + off)));
        }
        for w in roots.windows(2) {
            tree_edges.push((w[0], w[1]));
        }
        EmWidthAnswer::yes(TreeDecomposition { bags, tree_edges })
    };
    let Some(inner_t) = inner.decomposition else {
        // reductions never increase the em-width, so "no" propagates up
        return Ok(EmWidthAnswer::no());
    };
    let expanded = expand_decomposition(&inner_t, &script)?;
    improve_decomposition(g, &expanded, k)
}

/// Decide whether the em-width of `g` is at most `k`, with a witness
/// decomposition on yes, and record per-level reduction statistics.
pub fn decide_emwidth_traced(
    g: &PlaneGraph,
    k: usize,
) -> Result<(EmWidthAnswer, Vec<LevelTrace>)> {
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be at least 1".into()));
    }
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        if u == v {
            return Err(Error::SelfLoopInput);
        }
    }
    g.require_connected()?;
    let mut trace = Vec::new();
    let ans = decide_rec(g, k, &mut trace)?;
    Ok((ans, trace))
}

/// Decide whether the em-width of `g` is at most `k`, with a witness
/// decomposition on yes.
pub fn decide_emwidth(g: &PlaneGraph, k: usize) -> Result<EmWidthAnswer> {
    decide_emwidth_traced(g, k).map(|(ans, _)| ans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{validate_em_decomposition, validate_tree_decomposition};
    use crate::plane_graph::{cycle, fan, grid, path};

    #[test]
    fn treewidth_of_small_graphs() {
        let tree = AbstractGraph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let (w, t) = exact_treewidth(&tree).unwrap();
        assert_eq!(w, 1);
        assert!(validate_tree_decomposition(&tree, &t)
            .unwrap()
            .tree_properties_hold());

        let c4 = AbstractGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(exact_treewidth(&c4).unwrap().0, 2);

        let k4 = AbstractGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(exact_treewidth(&k4).unwrap().0, 3);
    }

    #[test]
    fn treewidth_of_grids() {
        for (p, q, want) in [(2, 2, 2), (3, 3, 3), (2, 5, 2), (3, 4, 3)] {
            let g = grid(p, q).to_abstract();
            let (w, t) = exact_treewidth(&g).unwrap();
            assert_eq!(w, want, "grid {p}x{q}");
            let r = validate_tree_decomposition(&g, &t).unwrap();
            assert!(r.tree_properties_hold());
            assert_eq!(r.width, want as isize);
        }
    }

    #[test]
    fn cap_enforced() {
        let g = grid(5, 5).to_abstract();
        assert!(matches!(
            exact_treewidth(&g),
            Err(Error::InstanceTooLarge { n: 25, cap: 20 })
        ));
        assert_eq!(exact_treewidth_capped(&g, 25).unwrap().0, 5);
    }

    #[test]
    fn emwidth_examples() {
        assert_eq!(exact_emwidth(&path(6)).unwrap().0, 1);
        assert_eq!(exact_emwidth(&fan(5)).unwrap().0, 2);
        assert_eq!(exact_emwidth(&cycle(4)).unwrap().0, 3);
        let (w, t) = exact_emwidth(&grid(3, 3)).unwrap();
        let r = validate_em_decomposition(&grid(3, 3), &t).unwrap();
        assert!(r.all_properties_hold());
        assert_eq!(r.width as usize, w);
    }

    #[test]
    fn improve_on_four_cycle() {
        let g = cycle(4);
        let t = TreeDecomposition::single_bag(0..4);
        let a = improve_decomposition(&g, &t, 3).unwrap();
        assert!(a.decision);
        assert_eq!(a.certificate_width, Some(3));
        let a = improve_decomposition(&g, &t, 2).unwrap();
        assert!(!a.decision);
    }

    #[test]
    fn improve_deflates_tree_decomposition() {
        let g = path(4);
        let t = TreeDecomposition {
            bags: vec![[0, 1, 2, 3].into(), [1, 2, 3].into()],
            tree_edges: vec![(0, 1)],
        };
        let a = improve_decomposition(&g, &t, 1).unwrap();
        assert!(a.decision);
        let w = a.decomposition.as_ref().unwrap().width_value();
        assert_eq!(w, 1);
        let r = validate_em_decomposition(&g, a.decomposition.as_ref().unwrap()).unwrap();
        assert!(r.all_properties_hold());
    }

    #[test]
    fn improve_rejects_bad_input() {
        let g = cycle(4);
        let t = TreeDecomposition {
            bags: vec![[0, 1, 2].into(), [0, 2, 3].into()],
            tree_edges: vec![(0, 1)],
        };
        assert!(matches!(
            improve_decomposition(&g, &t, 3),
            Err(Error::InvalidInputDecomposition(_))
        ));
    }

    #[test]
    fn expand_empty_script_is_identity() {
        let t = TreeDecomposition::single_bag([0, 1, 2]);
        let out = expand_decomposition(&t, &ReductionScript::default()).unwrap();
        assert_eq!(out.bags, t.bags);
        assert_eq!(out.tree_edges, t.tree_edges);
    }

    #[test]
    fn expand_substitutes_contracted_pairs() {
        let t = TreeDecomposition::single_bag([7, 3]);
        let script = ReductionScript {
            events: vec![ReductionEvent::EdgeContracted {
                edge: 0,
                merged: 7,
                u: 1,
                v: 2,
            }],
        };
        let out = expand_decomposition(&t, &script).unwrap();
        assert_eq!(out.bags, vec![BTreeSet::from([1, 2, 3])]);
    }

    #[test]
    fn expand_restores_compressed_family() {
        use crate::plane_graph::k2r;
        // reduced graph: k2r(4) with f_2, f_3 deleted (the 4-cycle 0-2-1-5)
        let t = TreeDecomposition::single_bag([0, 1, 2, 5]);
        let script = ReductionScript {
            events: vec![ReductionEvent::FamilyCompressed {
                a: 0,
                b: 1,
                members: vec![2, 3, 4, 5],
            }],
        };
        let out = expand_decomposition(&t, &script).unwrap();
        assert_eq!(
            out.bags,
            vec![
                BTreeSet::from([0, 1, 2, 5]),
                BTreeSet::from([0, 1, 2, 3, 5]),
                BTreeSet::from([0, 1, 3, 4, 5]),
            ]
        );
        assert_eq!(out.tree_edges, vec![(0, 1), (1, 2)]);
        let r = validate_em_decomposition(&k2r(4), &out).unwrap();
        assert!(r.all_properties_hold());

        let bad = TreeDecomposition::single_bag([0, 1]);
        assert!(matches!(
            expand_decomposition(&bad, &script),
            Err(Error::BagForFamilyMissing)
        ));
    }

    #[test]
    fn decide_on_trees() {
        let g = path(30);
        let a = decide_emwidth(&g, 1).unwrap();
        assert!(a.decision);
        let t = a.decomposition.unwrap();
        let r = validate_em_decomposition(&g, &t).unwrap();
        assert!(r.all_properties_hold());
        assert!(r.width <= 1);
    }

    #[test]
    fn decide_on_four_cycle() {
        let g = cycle(4);
        assert!(!decide_emwidth(&g, 2).unwrap().decision);
        let a = decide_emwidth(&g, 3).unwrap();
        assert!(a.decision);
        assert!(a.certificate_width.unwrap() <= 3);
    }

    #[test]
    fn decide_agrees_with_oracle_above_base_case() {
        for g in [grid(3, 9), cycle(30)] {
            let (w, _) = exact_emwidth_capped(&g, 30).unwrap();
            for k in [w.saturating_sub(1).max(1), w, w + 1] {
                let (a, trace) = decide_emwidth_traced(&g, k).unwrap();
                assert_eq!(a.decision, w <= k, "n={} k={k} w={w}", g.vertex_count());
                if let Some(t) = &a.decomposition {
                    let r = validate_em_decomposition(&g, t).unwrap();
                    assert!(r.all_properties_hold());
                    assert!(r.width <= k as isize);
                }
                for lvl in &trace {
                    assert!(lvl.reduced_vertices < lvl.vertices);
                }
            }
        }
    }

    #[test]
    fn decide_rejects_bad_input() {
        let g = cycle(4);
        assert!(matches!(
            decide_emwidth(&g, 0),
            Err(Error::PreconditionViolated(_))
        ));
        let mut h = g.clone();
        h.delete_edge(0);
        h.delete_edge(2);
        assert!(matches!(
            decide_emwidth(&h, 3),
            Err(Error::DisconnectedInput)
        ));
    }

    #[test]
    fn subdivision_preserves_treewidth() {
        let mut g = grid(3, 3).to_abstract();
        let (w0, _) = exact_treewidth(&g).unwrap();
        let e = g.edge_ids().next().unwrap();
        crate::abstract_graph::subdivide_edge(&mut g, e);
        let (w1, _) = exact_treewidth(&g).unwrap();
        assert_eq!(w0, w1);
    }
}
