//! Corpus generation for the emwidth binary and test harnesses: seeded
//! random plane graphs built by stacking triangulations and deleting
//! edges, plus an implanter for obstructed degree-2 families.

use emw_core::{DartId, FaceSet, PlaneGraph, Result, VertexId};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Seeded random planar triangulation: start from a triangle and insert
/// each new vertex into a random bounded (triangular) face, connected to
/// all three corners.
pub fn random_plane_triangulation(n: usize, seed: u64) -> PlaneGraph {
    assert!(n >= 3, "triangulations need at least 3 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = emw_core::cycle(3);
    while g.vertex_count() < n {
        let fs = g.faces();
        let bounded: Vec<Vec<DartId>> = fs.bounded().map(|f| f.walk.clone()).collect();
        let corners = &bounded[rng.gen_range(0..bounded.len())];
        g.add_vertex_in_face(corners).expect("triangular face corners");
    }
    g
}

/// Seeded random connected plane graph: a random triangulation followed
/// by random edge deletions that preserve connectivity and the given
/// minimum degree.
pub fn random_plane_graph(n: usize, seed: u64, min_degree: usize) -> PlaneGraph {
    let mut g = random_plane_triangulation(n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let attempts = rng.gen_range(0..=g.edge_count());
    for _ in 0..attempts {
        let edges: Vec<usize> = g.edge_ids().collect();
        let e = edges[rng.gen_range(0..edges.len())];
        let (u, v) = g.endpoints(e);
        if g.degree(u) <= min_degree || g.degree(v) <= min_degree {
            continue;
        }
        let (mut a, ids) = g.to_abstract_with_ids();
        let ae = *ids.iter().find(|&(_, &pe)| pe == e).unwrap().0;
        a.remove_edge(ae);
        if a.is_connected() {
            g.delete_edge(e);
        }
    }
    g
}

fn dart_at(g: &PlaneGraph, fs: &FaceSet, face: usize, v: VertexId) -> Option<DartId> {
    fs.faces[face]
        .walk
        .iter()
        .copied()
        .find(|&d| g.dart_origin(d) == v)
}

/// Implant an r-family that is not nicely embedded: r degree-2 vertices
/// sharing two neighbors on a bounded face, with a two-vertex chain
/// enclosed in one of the lens faces as the obstruction. Returns the two
/// shared neighbors.
pub fn implant_obstructed_family(
    g: &mut PlaneGraph,
    r: usize,
    seed: u64,
) -> Result<(VertexId, VertexId)> {
    assert!(r >= 3, "families have at least 3 members");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs = g.faces();
    let walks: Vec<Vec<DartId>> = fs.bounded().map(|f| f.walk.clone()).collect();
    let walk = &walks[rng.gen_range(0..walks.len())];
    let a = g.dart_origin(walk[0]);
    let b = g.dart_origin(walk[1]);
    for _ in 0..r {
        let fs = g.faces();
        let host = fs
            .bounded()
            .find(|f| {
                dart_at(g, &fs, f.id, a).is_some() && dart_at(g, &fs, f.id, b).is_some()
            })
            .map(|f| f.id)
            .expect("a bounded face touching both shared neighbors");
        let da = dart_at(g, &fs, host, a).unwrap();
        let db = dart_at(g, &fs, host, b).unwrap();
        g.add_vertex_in_face(&[da, db])?;
    }
    // hang an obstruction chain a–x–y–b inside every lens, so that no
    // sub-family of the implant stays nicely embedded
    let is_member = |g: &PlaneGraph, v: VertexId| {
        g.degree(v) == 2 && g.neighbor_set(v) == [a, b].into()
    };
    loop {
        let fs = g.faces();
        let lens = fs
            .bounded()
            .find(|f| {
                f.vertices.len() == 4
                    && f.vertices.contains(&a)
                    && f.vertices.contains(&b)
                    && f.vertices.iter().all(|&v| v == a || v == b || is_member(g, v))
            })
            .map(|f| f.id);
        let Some(lens) = lens else {
            break;
        };
        let da = dart_at(g, &fs, lens, a).unwrap();
        let x = g.add_vertex_in_face(&[da])?;
        let fs = g.faces();
        let inside = fs
            .bounded()
            .find(|f| dart_at(g, &fs, f.id, x).is_some())
            .map(|f| f.id)
            .expect("the face holding the pendant");
        let dx = dart_at(g, &fs, inside, x).unwrap();
        let db = dart_at(g, &fs, inside, b).unwrap();
        g.add_vertex_in_face(&[dx, db])?;
    }
    Ok((a, b))
}
