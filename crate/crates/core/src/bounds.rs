//! Constructive upper bounds on em-width via weak duals and pseudo-block
//! decompositions, plus the subdivided-grid lower-bound gadget.

use std::collections::{BTreeMap, BTreeSet};

use crate::decomposition::TreeDecomposition;
use crate::emwidth::{exact_treewidth_capped, min_fill_decomposition};
use crate::error::{Error, Result};
use crate::plane_graph::{
    embedded_subgraph, outerplanarity, weak_dual, EdgeId, OuterplanarityLabeling, PlaneGraph,
    VertexId,
};

/// Default size cap below which weak-dual decompositions are computed
/// exactly; above it a min-fill heuristic stands in.
pub const WEAK_DUAL_EXACT_CAP: usize = 18;

/// A partition of the edges into blocks obtained by cutting only at cut
/// vertices that meet the outer face more than once; blocks form a tree.
#[derive(Debug, Clone)]
pub struct PseudoBlockDecomposition {
    /// edge sets, each sorted
    pub blocks: Vec<Vec<EdgeId>>,
    /// tree structure: (block, block, shared cut vertex)
    pub shared: Vec<(usize, usize, VertexId)>,
}

/// Decompose the edges into pseudo-blocks: two edges sharing a vertex
/// stay in one block unless every rotation corner between them at that
/// vertex lies on the outer face. This cuts the graph exactly at the cut
/// vertices that meet the outer face more than once, and keeps anything
/// embedded inside a bounded face with that face's block.
pub fn pseudo_block_decomposition(g: &PlaneGraph) -> Result<PseudoBlockDecomposition> {
    g.require_connected()?;
    let edge_bound = g.edge_ids().max().map_or(0, |e| e + 1);
    let mut parent: Vec<usize> = (0..edge_bound).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let fs = g.faces();
    for v in g.vertices() {
        let darts = g.darts_at(v);
        for &d in &darts {
            // the corner between d and rot_next(d) belongs to the face
            // entered along twin(d)
            if fs.face_of_dart[g.twin(d)] == fs.outer {
                continue;
            }
            let a = find(&mut parent, g.edge_of(d));
            let b = find(&mut parent, g.edge_of(g.rot_next(d)));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut block_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut blocks: Vec<Vec<EdgeId>> = Vec::new();
    for e in g.edge_ids() {
        let r = find(&mut parent, e);
        let bi = *block_of_root.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[bi].push(e);
    }
    // tree structure: at each vertex with edges in several blocks,
    // connect every block to the lowest-indexed block at that vertex
    let mut shared = Vec::new();
    for v in g.vertices() {
        let mut bs: Vec<usize> = g
            .darts_at(v)
            .iter()
            .map(|&d| block_of_root[&find(&mut parent, g.edge_of(d))])
            .collect();
        bs.sort_unstable();
        bs.dedup();
        if bs.is_empty() {
            continue;
        }
        for &other in &bs[1..] {
            shared.push((bs[0], other, v));
        }
    }
    Ok(PseudoBlockDecomposition { blocks, shared })
}

/// A width-respecting tree decomposition of an abstract graph: exact
/// under the cap, min-fill heuristic above it.
fn weak_dual_decomposition(g: &crate::abstract_graph::AbstractGraph) -> Result<TreeDecomposition> {
    if g.vertex_count() <= WEAK_DUAL_EXACT_CAP {
        Ok(exact_treewidth_capped(g, WEAK_DUAL_EXACT_CAP)?.1)
    } else {
        min_fill_decomposition(g)
    }
}

/// Em-decomposition of a block with a connected weak dual: weak-dual bags
/// expanded to face boundaries, then pendant outer-face trees attached
/// with width-1 edge bags.
fn block_em_decomposition(b: &PlaneGraph) -> Result<TreeDecomposition> {
    if b.edge_count() == 0 {
        return Ok(TreeDecomposition::single_bag(b.vertices()));
    }
    let wd = weak_dual(b)?;
    if wd.graph.vertex_count() == 0 {
        // no bounded faces: a single edge (or a bare cycle-free block)
        let mut bags: Vec<BTreeSet<usize>> = Vec::new();
        let mut tree_edges = Vec::new();
        let mut bag_of: BTreeMap<usize, usize> = BTreeMap::new();
        for e in b.edge_ids() {
            let (u, v) = b.endpoints(e);
            let id = bags.len();
            bags.push([u, v].into());
            for w in [u, v] {
                if let Some(&prev) = bag_of.get(&w) {
                    if prev != id {
                        tree_edges.push((prev, id));
                    }
                }
                bag_of.insert(w, id);
            }
        }
        return Ok(TreeDecomposition { bags, tree_edges });
    }
    let inner = weak_dual_decomposition(&wd.graph)?;
    // step 1: expand each weak-dual bag to the union of its faces'
    // boundary vertices
    let mut bags: Vec<BTreeSet<usize>> = inner
        .bags
        .iter()
        .map(|bag| {
            bag.iter()
                .flat_map(|&a| wd.face_vertices[a].iter().copied())
                .collect()
        })
        .collect();
    let mut tree_edges = inner.tree_edges.clone();
    // step 2: vertices only on the outer face form pendant trees; cover
    // them with edge bags chained along each tree and anchored at a
    // step-1 bag
    let covered: BTreeSet<usize> = bags.iter().flatten().copied().collect();
    let anchor_bag = |bags: &[BTreeSet<usize>], v: usize| {
        bags.iter().position(|b| b.contains(&v))
    };
    let mut last_bag_of: BTreeMap<usize, usize> = BTreeMap::new();
    for e in b.edge_ids() {
        let (u, v) = b.endpoints(e);
        if covered.contains(&u) && covered.contains(&v) {
            continue;
        }
        let id = bags.len();
        bags.push([u, v].into());
        for w in [u, v] {
            if covered.contains(&w) {
                let a = anchor_bag(&bags, w).expect("covered vertex has a step-1 bag");
                tree_edges.push((a, id));
            } else if let Some(&prev) = last_bag_of.get(&w) {
                tree_edges.push((prev, id));
                last_bag_of.insert(w, id);
            } else {
                last_bag_of.insert(w, id);
            }
        }
    }
    Ok(TreeDecomposition { bags, tree_edges })
}

/// Glue per-block em-decompositions at their shared cut vertices.
fn glue_blocks(
    g: &PlaneGraph,
    pbd: &PseudoBlockDecomposition,
    parts: Vec<TreeDecomposition>,
) -> TreeDecomposition {
    let mut bags = Vec::new();
    let mut tree_edges = Vec::new();
    let mut offset = Vec::with_capacity(parts.len());
    for part in &parts {
        offset.push(bags.len());
        bags.extend(part.bags.iter().cloned());
        tree_edges.extend(
            part.tree_edges
                .iter()
                .map(|&(a, b)| (a + bags.len() - part.bags.len(), b + bags.len() - part.bags.len())),
        );
    }
    for &(a, b, s) in &pbd.shared {
        let find_bag = |block: usize| {
            parts[block]
                .bags
                .iter()
                .position(|bag| bag.contains(&s))
                .map(|i| i + offset[block])
        };
        if let (Some(x), Some(y)) = (find_bag(a), find_bag(b)) {
            tree_edges.push((x, y));
        }
    }
    // a connected graph with one vertex and no edges has no blocks
    if bags.is_empty() {
        return TreeDecomposition::single_bag(g.vertices());
    }
    TreeDecomposition { bags, tree_edges }
}

/// Em-decomposition of width at most (tw(g)+2)·ℓ − 1, where ℓ bounds the
/// bounded-face lengths (exact weak-dual decompositions under the cap).
pub fn emw_upper_weak_dual(g: &PlaneGraph) -> Result<TreeDecomposition> {
    g.require_connected()?;
    let pbd = pseudo_block_decomposition(g)?;
    let mut parts = Vec::with_capacity(pbd.blocks.len());
    for block in &pbd.blocks {
        let keep: BTreeSet<EdgeId> = block.iter().copied().collect();
        let sub = embedded_subgraph(g, &keep)?;
        parts.push(block_em_decomposition(&sub.graph)?);
    }
    Ok(glue_blocks(g, &pbd, parts))
}

/// Em-decomposition of width at most 3kℓ − 1 for a k-outerplanar input;
/// the weak dual of every block is at most k-outerplanar, so the same
/// expansion applies.
pub fn emw_upper_outerplanar(g: &PlaneGraph) -> Result<TreeDecomposition> {
    emw_upper_weak_dual(g)
}

// ----- lower-bound gadget -----

/// Parameters of the subdivided-grid gadget: p×q grid, vertical edges
/// subdivided k−1 times, optionally padded with a pendant path to reach
/// `n` vertices.
#[derive(Debug, Clone, Copy)]
pub struct GadgetSpec {
    pub p: usize,
    pub q: usize,
    pub k: usize,
    pub n: Option<usize>,
}

impl GadgetSpec {
    /// Vertex count before padding: pq + (p−1)q(k−1).
    pub fn base_vertices(&self) -> usize {
        self.p * self.q + (self.p - 1) * self.q * (self.k - 1)
    }

    /// Every bounded face of the gadget has this many vertices.
    pub fn face_length(&self) -> usize {
        2 * self.k + 2
    }
}

/// Build the gadget: vertex (i,j) of the grid has id i·q+j; subdivision
/// vertices follow, then padding-path vertices.
pub fn generate_gadget(spec: &GadgetSpec) -> Result<PlaneGraph> {
    let GadgetSpec { p, q, k, n } = *spec;
    if p < 2 || q < 2 || k < 1 {
        return Err(Error::InvalidSpec(format!(
            "need p ≥ 2, q ≥ 2, k ≥ 1, got p={p}, q={q}, k={k}"
        )));
    }
    let base = spec.base_vertices();
    if let Some(n) = n {
        if n < base {
            return Err(Error::InvalidSpec(format!(
                "target n={n} below the gadget's {base} vertices"
            )));
        }
    }
    let id = |i: usize, j: usize| i * q + j;
    // chain vertex t (0-based) on the vertical segment below (i,j)
    let chain = |i: usize, j: usize, t: usize| p * q + (i * q + j) * (k - 1) + t;
    // the neighbor of (i,j) going down: first chain vertex or the cell below
    let down = |i: usize, j: usize| {
        if k > 1 {
            chain(i, j, 0)
        } else {
            id(i + 1, j)
        }
    };
    let up = |i: usize, j: usize| {
        if k > 1 {
            chain(i - 1, j, k - 2)
        } else {
            id(i - 1, j)
        }
    };
    let total = base;
    let mut lists = vec![Vec::new(); total];
    for i in 0..p {
        for j in 0..q {
            let mut l = Vec::new();
            if i > 0 {
                l.push(up(i, j));
            }
            if j + 1 < q {
                l.push(id(i, j + 1));
            }
            if i + 1 < p {
                l.push(down(i, j));
            }
            if j > 0 {
                l.push(id(i, j - 1));
            }
            lists[id(i, j)] = l;
        }
    }
    if k > 1 {
        for i in 0..p - 1 {
            for j in 0..q {
                for t in 0..k - 1 {
                    let above = if t == 0 { id(i, j) } else { chain(i, j, t - 1) };
                    let below = if t == k - 2 {
                        id(i + 1, j)
                    } else {
                        chain(i, j, t + 1)
                    };
                    lists[chain(i, j, t)] = vec![above, below];
                }
            }
        }
    }
    let mut g = PlaneGraph::build_embedding(&lists)?;
    g.designate_outer_default();
    if let Some(n) = n {
        // pendant path on the outer face, hanging off corner (0,0)
        let mut tip = 0usize;
        while g.vertex_count() < n {
            let d = g
                .outer_walk()
                .into_iter()
                .find(|&d| g.dart_origin(d) == tip)
                .unwrap_or_else(|| g.darts_at(tip)[0]);
            tip = g.add_vertex_in_face(&[d])?;
        }
    }
    Ok(g)
}

/// Outerplanarity labeling of the weak dual derived from the primal
/// labeling: each bounded face takes k+1 minus the smallest primal layer
/// on its boundary.
pub fn dual_outerplanarity_labeling(g: &PlaneGraph) -> Result<OuterplanarityLabeling> {
    let primal = outerplanarity(g)?;
    let k = primal.k;
    let wd = weak_dual(g)?;
    let vertex_label: Vec<usize> = wd
        .face_vertices
        .iter()
        .map(|vs| {
            let m = vs.iter().map(|&v| primal.vertex_label[v]).min().unwrap();
            k + 1 - m
        })
        .collect();
    let max = vertex_label.iter().copied().max().unwrap_or(0);
    Ok(OuterplanarityLabeling {
        vertex_label,
        face_label: Vec::new(),
        k: max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{validate_em_decomposition, width};
    use crate::emwidth::exact_treewidth;
    use crate::plane_graph::{cycle, grid, weak_dual_plane, PlaneGraph};

    #[test]
    fn blocks_of_biconnected_graph() {
        let pbd = pseudo_block_decomposition(&cycle(4)).unwrap();
        assert_eq!(pbd.blocks.len(), 1);
        assert!(pbd.shared.is_empty());
    }

    #[test]
    fn blocks_of_two_triangles_sharing_a_vertex() {
        // triangles 0,1,2 and 2,3,4 share vertex 2 on the outer face
        let lists = vec![
            vec![1, 2],
            vec![2, 0],
            vec![0, 1, 3, 4],
            vec![4, 2],
            vec![2, 3],
        ];
        let g = PlaneGraph::build_embedding(&lists).unwrap();
        let pbd = pseudo_block_decomposition(&g).unwrap();
        assert_eq!(pbd.blocks.len(), 2);
        assert_eq!(pbd.shared.len(), 1);
        assert_eq!(pbd.shared[0].2, 2);
    }

    #[test]
    fn blocks_of_triangle_with_pendant() {
        let lists = vec![vec![1, 2, 3], vec![2, 0], vec![0, 1], vec![0]];
        let g = PlaneGraph::build_embedding(&lists).unwrap();
        let pbd = pseudo_block_decomposition(&g).unwrap();
        assert_eq!(pbd.blocks.len(), 2);
        let sizes: Vec<usize> = pbd.blocks.iter().map(|b| b.len()).collect();
        assert!(sizes.contains(&1) && sizes.contains(&3));
    }

    #[test]
    fn upper_bound_on_four_cycle() {
        let g = cycle(4);
        let t = emw_upper_weak_dual(&g).unwrap();
        let r = validate_em_decomposition(&g, &t).unwrap();
        assert!(r.all_properties_hold());
        assert_eq!(width(&t).unwrap(), 3);
    }

    #[test]
    fn upper_bound_on_grid() {
        let g = grid(2, 3);
        let t = emw_upper_weak_dual(&g).unwrap();
        let r = validate_em_decomposition(&g, &t).unwrap();
        assert!(r.all_properties_hold());
        let (tw, _) = exact_treewidth(&g.to_abstract()).unwrap();
        let ell = g.faces().max_bounded_length();
        assert!(width(&t).unwrap() + 1 <= (tw + 2) * ell);
    }

    #[test]
    fn upper_bound_with_pendant_path() {
        // 4-cycle with a pendant path of two edges on the outer face
        let lists = vec![
            vec![1, 3, 4],
            vec![2, 0],
            vec![3, 1],
            vec![0, 2],
            vec![0, 5],
            vec![4],
        ];
        let g = PlaneGraph::build_embedding(&lists).unwrap();
        let t = emw_upper_weak_dual(&g).unwrap();
        let r = validate_em_decomposition(&g, &t).unwrap();
        assert!(r.all_properties_hold());
        assert_eq!(width(&t).unwrap(), 3);
    }

    #[test]
    fn outerplanar_bound_examples() {
        for (g, k, ell) in [(cycle(4), 1, 4), (grid(3, 3), 2, 4), (cycle(3), 1, 3)] {
            let t = emw_upper_outerplanar(&g).unwrap();
            let r = validate_em_decomposition(&g, &t).unwrap();
            assert!(r.all_properties_hold());
            assert!(width(&t).unwrap() + 1 <= 3 * k * ell);
        }
    }

    #[test]
    fn gadget_construction() {
        let g = generate_gadget(&GadgetSpec {
            p: 2,
            q: 2,
            k: 1,
            n: None,
        })
        .unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 4);

        let spec = GadgetSpec {
            p: 3,
            q: 5,
            k: 2,
            n: None,
        };
        let g = generate_gadget(&spec).unwrap();
        assert_eq!(g.vertex_count(), 25);
        let fs = g.faces();
        assert!(fs.bounded().all(|f| f.length() == 6));

        let padded = generate_gadget(&GadgetSpec {
            n: Some(30),
            ..spec
        })
        .unwrap();
        assert_eq!(padded.vertex_count(), 30);
        padded.validate().unwrap();
        let fs = padded.faces();
        assert!(fs.bounded().all(|f| f.length() == 6));
    }

    #[test]
    fn gadget_rejects_bad_spec() {
        assert!(matches!(
            generate_gadget(&GadgetSpec { p: 1, q: 2, k: 1, n: None }),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            generate_gadget(&GadgetSpec { p: 3, q: 5, k: 2, n: Some(10) }),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn dual_labels_bounded_by_primal() {
        for g in [cycle(4), grid(3, 3), grid(5, 5)] {
            let primal = outerplanarity(&g).unwrap();
            let dual = dual_outerplanarity_labeling(&g).unwrap();
            assert!(dual.k <= primal.k);
            // sanity: inherited-embedding weak dual is no deeper either
            let wdp = weak_dual_plane(&g).unwrap();
            if wdp.vertex_count() > 0 {
                let wd_op = outerplanarity(&wdp).unwrap();
                assert!(wd_op.k <= primal.k);
            }
        }
    }
}
