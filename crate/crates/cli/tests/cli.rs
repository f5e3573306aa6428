use std::process::{Command, Output};

use polysurg::genetics::GeneticCode;
use polysurg::posets::PosetJson;

fn polysurg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polysurg")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = polysurg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code_json(args: &[&str]) -> GeneticCode {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn gencode_examples() {
    let g = code_json(&["gencode", "1", "1", "1", "1", "3"]);
    assert_eq!(g.notation(), "<5>");
    let g = code_json(&["gencode", "1", "2", "3", "3", "4"]);
    assert_eq!(g.notation(), "<25>");
    let compact: serde_json::Value = serde_json::from_str(&stdout(&["gencode", "1", "2", "3", "3", "4"])).unwrap();
    assert_eq!(compact, serde_json::json!({"m": 5, "genes": [[2, 5]]}));
}

#[test]
fn user_errors_exit_2() {
    assert_eq!(polysurg(&["gencode", "1", "1"]).status.code(), Some(2));
    let non_generic = polysurg(&["gencode", "1", "1", "1", "1"]);
    assert_eq!(non_generic.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&non_generic.stderr).contains("{1,4}"));
    assert_eq!(polysurg(&["run", "<16>", "--mode", "attach"]).status.code(), Some(2));
    assert_eq!(polysurg(&["chain", "<nonsense>"]).status.code(), Some(2));
    assert_eq!(polysurg(&["run", "<15>", "--mode", "sideways"]).status.code(), Some(2));
}

#[test]
fn realize_and_round_trip() {
    assert_eq!(stdout(&["realize", "<2469>", "--m", "9"]).trim(), "UNREALIZABLE");
    assert_eq!(stdout(&["realize", "<[2,4,6,9]>", "--m", "9"]).trim(), "UNREALIZABLE");
    let lengths = stdout(&["realize", "<125>"]);
    let mut args = vec!["gencode"];
    args.extend(lengths.split_whitespace());
    assert_eq!(code_json(&args).notation(), "<125>");
}

#[test]
fn chain_lists_codes() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["chain", "<125>"])).unwrap();
    assert_eq!(v["codes"], serde_json::json!(["<5>", "<15>", "<25>", "<125>"]));
}

#[test]
fn run_125_collapse_ends_in_two_tori() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["run", "<125>", "--mode", "collapse"])).unwrap();
    let last = v["steps"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["homology"]["components"], 2);
    assert_eq!(last["identification"]["name"], "T² ⊔ T²");
    assert_eq!(last["identification"]["description"], "disjoint union of 2 copies of the torus");
}

#[test]
fn output_is_deterministic() {
    for args in [&["run", "<45>", "--projective"][..], &["poset", "<26>", "--surgery", "345"], &["run", "--figures"]] {
        assert_eq!(polysurg(args).stdout, polysurg(args).stdout, "{args:?}");
    }
}

#[test]
fn poset_outputs() {
    let dot = stdout(&["poset", "<26>", "--surgery", "345"]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("[(1,2,345,6);"));
    let p: PosetJson = serde_json::from_str(&stdout(&["poset", "<5>", "--projective", "--json"])).unwrap();
    // Π_4 without its top
    assert_eq!(p.to_poset().unwrap().len(), 14);
    let bar = stdout(&["poset", "<15>", "--bar"]);
    assert!(bar.contains("bar("));
}

#[test]
fn dumped_cells_read_back() {
    let dir = std::env::temp_dir().join(format!("polysurg-dump-{}", std::process::id()));
    stdout(&["run", "<45>", "--projective", "--dump-cells", dir.to_str().unwrap()]);
    let h: serde_json::Value =
        serde_json::from_str(&stdout(&["homology", dir.join("step_4.json").to_str().unwrap()])).unwrap();
    assert_eq!(h["betti"], serde_json::json!([1, 4, 0]));
    assert_eq!(h["torsion"][1], serde_json::json!([2]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn figures_table() {
    let t = stdout(&["run", "--figures"]);
    assert!(t.contains("(24,54,30)"));
    assert!(t.contains("(12,27,15)"));
}
