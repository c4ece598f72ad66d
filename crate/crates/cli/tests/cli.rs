//! End-to-end tests of the emwidth binary: exit codes, round trips, and
//! generator determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use emw_cli::random_plane_graph;
use emw_core::{parse_pg, print_pg};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emwidth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("emw-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn emw_decision_exit_codes() {
    let c4 = tmp("c4.pg");
    std::fs::write(&c4, print_pg(&emw_core::cycle(4))).unwrap();
    let td = tmp("c4.td");

    let yes = run(&["emw", "--input", c4.to_str().unwrap(), "--k", "3", "--output", td.to_str().unwrap()]);
    assert_eq!(yes.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&yes.stdout).starts_with("yes"));
    assert!(td.exists());

    let validate = run(&["validate", "--input", c4.to_str().unwrap(), "--td", td.to_str().unwrap()]);
    assert_eq!(validate.status.code(), Some(0));

    let no = run(&["emw", "--input", c4.to_str().unwrap(), "--k", "2"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&no.stdout).trim(), "no");

    let err = run(&["emw", "--input", "/nonexistent.pg", "--k", "2"]);
    assert_eq!(err.status.code(), Some(2));
}

#[test]
fn emw_search_reports_tree_value() {
    let tree = tmp("tree.pg");
    std::fs::write(&tree, print_pg(&emw_core::path(7))).unwrap();
    let out = run(&["emw", "--input", tree.to_str().unwrap(), "--search"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "emw = 1");
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let a = run(&["generate", "--random", "--n", "10", "--seed", "7"]);
    let b = run(&["generate", "--random", "--n", "10", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let g = parse_pg(&text).unwrap();
    assert_eq!(print_pg(&g), text);

    let gadget = run(&["generate", "--gadget", "2,2,1"]);
    let g = parse_pg(&String::from_utf8(gadget.stdout).unwrap()).unwrap();
    assert_eq!(g.vertex_count(), 4);
    assert_eq!(g.edge_count(), 4);

    let bad = run(&["generate", "--gadget", "1,1,0"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn matching_csv_schema() {
    let pg = tmp("c9.pg");
    std::fs::write(&pg, print_pg(&emw_core::cycle(9))).unwrap();
    let out = run(&["matching", "--input", pg.to_str().unwrap(), "--mode", "no-family"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("instance,n,m,mode,value,bound,pass"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[1..4], &["9", "9", "no-family"]);
    assert_eq!(row[5], "1"); // bound ceil(9/33)
    assert_eq!(row[6], "true");
}

#[test]
fn library_round_trip_on_random_corpus() {
    for seed in 0..30u64 {
        let g = random_plane_graph(5 + (seed as usize) % 8, seed, 1);
        let text = print_pg(&g);
        let h = parse_pg(&text).unwrap();
        assert_eq!(print_pg(&h), text, "seed {seed}");
    }
}
