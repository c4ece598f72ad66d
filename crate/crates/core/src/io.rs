//! Text formats: ".pg" plane graphs (clockwise neighbor lists) and ".td"
//! tree decompositions (PACE style).

use std::collections::BTreeSet;

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::plane_graph::PlaneGraph;

/// Parse a ".pg" document: `#` comments, one `v: n1 n2 ...` line per
/// vertex with neighbors in clockwise order (repeated entries are parallel
/// edges paired by rank of occurrence), and an optional `outer: v1 v2 ...`
/// line naming a boundary walk of the outer face.
pub fn parse_pg(text: &str) -> Result<PlaneGraph> {
    let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut outer: Option<Vec<usize>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| err("expected `vertex:` or `outer:`".into()))?;
        let ids: Vec<usize> = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad id `{t}`"))))
            .collect::<Result<_>>()?;
        if head.trim() == "outer" {
            if outer.is_some() {
                return Err(err("duplicate outer line".into()));
            }
            outer = Some(ids);
        } else {
            let v: usize = head
                .trim()
                .parse()
                .map_err(|_| err(format!("bad vertex id `{}`", head.trim())))?;
            if rows.iter().any(|(u, _)| *u == v) {
                return Err(err(format!("duplicate line for vertex {v}")));
            }
            rows.push((v, ids));
        }
    }
    let n = rows.iter().map(|(v, _)| v + 1).max().unwrap_or(0);
    let mut lists = vec![Vec::new(); n];
    let mut given = vec![false; n];
    for (v, l) in rows {
        lists[v] = l;
        given[v] = true;
    }
    for (v, g) in given.iter().enumerate() {
        if !g {
            return Err(Error::UnknownVertex(v));
        }
    }
    let mut g = PlaneGraph::build_embedding(&lists)?;
    if let Some(walk) = outer {
        g.set_outer_face_by_walk(&walk)?;
    }
    Ok(g)
}

/// Print a plane graph in ".pg" format. Vertex ids are compacted to a
/// dense range; the outer walk is always emitted.
pub fn print_pg(g: &PlaneGraph) -> String {
    let vs: Vec<usize> = g.vertices().collect();
    let rename = |v: usize| vs.binary_search(&v).unwrap();
    let mut out = String::new();
    for &v in &vs {
        out.push_str(&format!("{}:", rename(v)));
        for w in g.neighbors(v) {
            out.push_str(&format!(" {}", rename(w)));
        }
        out.push('\n');
    }
    let walk = g.outer_walk();
    if !walk.is_empty() {
        out.push_str("outer:");
        for d in walk {
            out.push_str(&format!(" {}", rename(g.dart_origin(d))));
        }
        out.push('\n');
    }
    out
}

/// Parse a ".td" document: header `s td <#nodes> <width+1> <#vertices>`,
/// bag lines `b <node> <v...>`, then tree-edge lines `<i> <j>`; ids on
/// disk are 1-based.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<BTreeSet<usize>>> = Vec::new();
    let mut tree_edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "s" {
            if header.is_some() {
                return Err(err("duplicate header".into()));
            }
            if toks.len() != 5 || toks[1] != "td" {
                return Err(err("bad header".into()));
            }
            let nums: Vec<usize> = toks[2..]
                .iter()
                .map(|t| t.parse().map_err(|_| err(format!("bad number `{t}`"))))
                .collect::<Result<_>>()?;
            header = Some((nums[0], nums[1], nums[2]));
            bags = vec![None; nums[0]];
        } else if toks[0] == "b" {
            let (n_nodes, ..) = header.ok_or_else(|| err("bag before header".into()))?;
            let node: usize = toks
                .get(1)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| err("bad bag node id".into()))?;
            if node == 0 || node > n_nodes {
                return Err(err(format!("bag node {node} out of range")));
            }
            let mut bag = BTreeSet::new();
            for t in &toks[2..] {
                let v: usize = t.parse().map_err(|_| err(format!("bad vertex `{t}`")))?;
                if v == 0 {
                    return Err(err("vertex ids are 1-based".into()));
                }
                bag.insert(v - 1);
            }
            if bags[node - 1].replace(bag).is_some() {
                return Err(err(format!("duplicate bag for node {node}")));
            }
        } else {
            let (n_nodes, ..) = header.ok_or_else(|| err("edge before header".into()))?;
            if toks.len() != 2 {
                return Err(err("expected `<i> <j>` tree edge".into()));
            }
            let a: usize = toks[0].parse().map_err(|_| err("bad edge".into()))?;
            let b: usize = toks[1].parse().map_err(|_| err("bad edge".into()))?;
            if a == 0 || b == 0 || a > n_nodes || b > n_nodes {
                return Err(err("tree edge out of range".into()));
            }
            tree_edges.push((a - 1, b - 1));
        }
    }
    let (n_nodes, ..) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header".into(),
    })?;
    let bags: Vec<BTreeSet<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| {
            b.ok_or(Error::Parse {
                line: 0,
                msg: format!("missing bag for node {}", i + 1),
            })
        })
        .collect::<Result<_>>()?;
    debug_assert_eq!(bags.len(), n_nodes);
    Ok(TreeDecomposition { bags, tree_edges })
}

/// Print a decomposition in ".td" format (1-based on disk). The vertex
/// count in the header is the number of distinct vertices across bags.
pub fn print_td(t: &TreeDecomposition) -> String {
    let verts: BTreeSet<usize> = t.bags.iter().flatten().copied().collect();
    let mut out = format!(
        "s td {} {} {}\n",
        t.bags.len(),
        t.bags.iter().map(|b| b.len()).max().unwrap_or(0),
        verts.len()
    );
    for (i, bag) in t.bags.iter().enumerate() {
        out.push_str(&format!("b {}", i + 1));
        for v in bag {
            out.push_str(&format!(" {}", v + 1));
        }
        out.push('\n');
    }
    for &(a, b) in &t.tree_edges {
        out.push_str(&format!("{} {}\n", a + 1, b + 1));
    }
    out
}
