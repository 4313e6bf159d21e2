use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use reconf_core::engine::{solve, MoveRule};
use reconf_core::generate::{gen_random_graph, GraphConstraints};
use reconf_core::io::{canonical, encode, Witness};
use reconf_core::reductions::{desynchronize_path_multi, ds_to_sync_multi};
use reconf_core::{DsrInstance, Graph, VertexSet};
use serde_json::{json, Value};
use tempfile::TempDir;

fn reconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reconf")).args(args).output().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn p3() -> DsrInstance {
    DsrInstance::new(
        Graph::path(3),
        2,
        VertexSet::from([0, 1]),
        VertexSet::from([1, 2]),
        MoveRule::Slide,
    )
}

#[test]
fn solve_path() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.json", &encode(&p3()));
    let o = reconf(&["solve", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), json!({ "reachable": true, "witnessLength": 2 }));
}

#[test]
fn solve_matches_library() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.json", &encode(&p3()));
    let o = reconf(&["solve", s(&f)]);
    let r = solve(&p3()).unwrap();
    let expected = canonical(&json!({ "reachable": r.reachable, "witnessLength": r.witness_length() }));
    assert_eq!(String::from_utf8(o.stdout).unwrap().trim_end(), expected);
}

#[test]
fn w2_on_five_cycle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c5.json", &encode(&Graph::cycle(5)));
    let o = reconf(&["verify-reduction", "--lemma", "w2", s(&f), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), json!({ "agree": true }));
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", "{\"kind\": \"graph\", ");
    let o = reconf(&["solve", s(&f)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn wrong_kind_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c5.json", &encode(&Graph::cycle(5)));
    assert_eq!(reconf(&["solve", s(&f)]).status.code(), Some(2));
}

#[test]
fn unknown_subcommand_exits_2() {
    assert_eq!(reconf(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn state_cap_exits_3() {
    let dir = TempDir::new().unwrap();
    let inst = DsrInstance::new(
        Graph::path(8),
        4,
        VertexSet::from([0, 2, 4, 6]),
        VertexSet::from([1, 3, 5, 7]),
        MoveRule::Jump,
    );
    let f = write(&dir, "p8.json", &encode(&inst));
    let o = reconf(&["--state-cap", "1", "solve", s(&f)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_is_reproducible() {
    let args = ["gen", "graph", "--seed", "7", "--n", "9", "--p", "0.3", "--connected"];
    let a = reconf(&args);
    let b = reconf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lib = gen_random_graph(
        7,
        9,
        0.3,
        GraphConstraints {
            connected: true,
            k3d_free: None,
        },
    )
    .unwrap();
    assert_eq!(String::from_utf8(a.stdout).unwrap().trim_end(), encode(&lib));
}

#[test]
fn verify_witness_verdicts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.json", &encode(&p3()));
    let good = Witness {
        sequence: vec![
            VertexSet::from([0, 1]),
            VertexSet::from([0, 2]),
            VertexSet::from([1, 2]),
        ],
    };
    let bad = Witness {
        sequence: vec![VertexSet::from([0, 1]), VertexSet::from([1, 2])],
    };
    let g = write(&dir, "good.json", &encode(&good));
    let b = write(&dir, "bad.json", &encode(&bad));
    let o = reconf(&["verify-witness", s(&f), s(&g)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), json!({ "valid": true }));
    let o = reconf(&["verify-witness", s(&f), s(&b)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), json!({ "valid": false }));
}

#[test]
fn reduce_chains_through_artifacts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c5.json", &encode(&Graph::cycle(5)));
    let o = reconf(&[
        "reduce",
        "--from",
        "graph",
        "--to",
        "sync-multi-tape",
        s(&f),
        "--k",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let first = write(&dir, "multi.json", std::str::from_utf8(&o.stdout).unwrap());
    let o = reconf(&["reduce", "--from", "sync-multi-tape", "--to", "multi-tape", s(&first)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout(&o);
    assert_eq!(v["kind"], "multi-tape-artifact");
    let lib = desynchronize_path_multi(&ds_to_sync_multi(&Graph::cycle(5), 2).unwrap().instance).unwrap();
    assert_eq!(v["instance"], serde_json::to_value(&lib.instance).unwrap());
}
