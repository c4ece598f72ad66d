//! Property tests: format round-trips and relabeling invariance.

use std::collections::BTreeSet;

use emw_core::{
    exact_treewidth, parse_pg, parse_td, print_pg, print_td, AbstractGraph, PlaneGraph,
    TreeDecomposition,
};
use proptest::prelude::*;

/// Rotation lists of a random tree on `n` vertices from a parent vector.
fn tree_lists(parents: &[usize]) -> Vec<Vec<usize>> {
    let n = parents.len() + 1;
    let mut lists = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        let v = i + 1;
        let p = p % v;
        lists[v].push(p);
        lists[p].push(v);
    }
    lists
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pg_round_trip_on_random_trees(parents in prop::collection::vec(0usize..64, 1..10)) {
        let g = PlaneGraph::build_embedding(&tree_lists(&parents)).unwrap();
        let text = print_pg(&g);
        let h = parse_pg(&text).unwrap();
        prop_assert_eq!(print_pg(&h), text);
        prop_assert_eq!(h.vertex_count(), g.vertex_count());
        prop_assert_eq!(h.edge_count(), g.edge_count());
    }

    #[test]
    fn td_round_trip(raw in prop::collection::vec(prop::collection::btree_set(0usize..20, 1..5), 1..6)) {
        let bags: Vec<BTreeSet<usize>> = raw;
        let tree_edges: Vec<(usize, usize)> = (1..bags.len()).map(|i| (i - 1, i)).collect();
        let t = TreeDecomposition { bags, tree_edges };
        let text = print_td(&t);
        let u = parse_td(&text).unwrap();
        prop_assert_eq!(u.bags, t.bags);
        prop_assert_eq!(u.tree_edges, t.tree_edges);
    }

    #[test]
    fn treewidth_invariant_under_relabeling(
        parents in prop::collection::vec(0usize..64, 3..8),
        shift in 1usize..5,
    ) {
        let lists = tree_lists(&parents);
        let n = lists.len();
        // a tree plus one extra edge closing a cycle
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (v, l) in lists.iter().enumerate() {
            for &w in l {
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        edges.push((0, n - 1));
        let g = AbstractGraph::from_edges(n, &edges);
        // relabel by a cyclic shift
        let relabeled: Vec<(usize, usize)> =
            edges.iter().map(|&(u, v)| ((u + shift) % n, (v + shift) % n)).collect();
        let h = AbstractGraph::from_edges(n, &relabeled);
        prop_assert_eq!(exact_treewidth(&g).unwrap().0, exact_treewidth(&h).unwrap().0);
    }
}
