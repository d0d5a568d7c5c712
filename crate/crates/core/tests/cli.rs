use std::path::{Path, PathBuf};
use std::process::Command;

use dedup_layout::fixtures::designed_reduction_code;
use dedup_layout::io::{hk_to_value, sha256_hex};
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_dedup-layout"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    assert_eq!(r.code, 0, "{}", r.stderr);
    serde_json::from_str(&r.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dedup-layout-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn stretch_layout_round_trip() {
    let d = scratch("stretch");
    assert_eq!(
        run(
            &d,
            &["gen", "--family", "cycle_odd", "--n", "5", "--out", "g.json"]
        )
        .code,
        0
    );
    let lay = run(&d, &["layout-stretch", "--graph", "g.json", "--out", "s.json"]);
    assert_eq!(lay.code, 0, "{}", lay.stderr);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(d.join("s.json")).unwrap()).unwrap();
    assert_eq!(report["displacement"], 2);
    let graph_text = std::fs::read(d.join("g.json")).unwrap();
    assert_eq!(report["input_sha256"], sha256_hex(&graph_text));

    let ev = json(&run(
        &d,
        &["eval", "--graph", "g.json", "--store", "s.json", "--csv", "m.csv"],
    ));
    assert_eq!(ev["stretch_metric"], "3/2");
    assert_eq!(ev["jump_metric"], 2);
    assert!(std::fs::read_to_string(d.join("m.csv"))
        .unwrap()
        .starts_with("path,stretch,jump\n"));

    let ok = run(
        &d,
        &[
            "eval",
            "--graph",
            "g.json",
            "--store",
            "s.json",
            "--max-stretch",
            "3/2",
        ],
    );
    assert_eq!(ok.code, 0);
    let tight = run(
        &d,
        &[
            "eval",
            "--graph",
            "g.json",
            "--store",
            "s.json",
            "--max-stretch",
            "1/1",
        ],
    );
    assert_eq!(tight.code, 1);
    let jump = run(
        &d,
        &[
            "eval",
            "--graph",
            "g.json",
            "--store",
            "s.json",
            "--max-jump",
            "1",
        ],
    );
    assert_eq!(jump.code, 1);
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn outputs_are_deterministic() {
    let d = scratch("determinism");
    run(&d, &["gen", "--family", "three_arc", "--out", "g.json"]);
    let a = run(&d, &["layout-stretch", "--graph", "g.json"]);
    let b = run(&d, &["layout-stretch", "--graph", "g.json"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let z1 = run(&d, &["zerofrag", "--graph", "g.json"]);
    let z2 = run(&d, &["zerofrag", "--graph", "g.json"]);
    assert_eq!(z1.stdout, z2.stdout);
    assert_eq!(json(&z1)["stretch_metric"], "1/1");
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn jump_layouts() {
    let d = scratch("jump");
    run(&d, &["gen", "--family", "caterpillar2", "--out", "t.json"]);
    let two = json(&run(
        &d,
        &["layout-jump", "--tree", "t.json", "--layout", "two-hair"],
    ));
    assert_eq!(two["jump_metric"], 2);
    run(&d, &["gen", "--family", "caterpillar12", "--out", "c.json"]);
    let cat = json(&run(
        &d,
        &["layout-jump", "--tree", "c.json", "--layout", "caterpillar"],
    ));
    assert!(cat["jump_metric"].as_u64().unwrap() <= 3);
    run(&d, &["gen", "--family", "example1j", "--out", "e.json"]);
    let dec = json(&run(&d, &["layout-jump", "--tree", "e.json"]));
    assert_eq!(dec["uf"], 2);
    assert!(dec["decomposition"].is_array());
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn reduce_code_designed_input() {
    let d = scratch("reduce");
    std::fs::write(
        d.join("hk.json"),
        hk_to_value(&designed_reduction_code()).to_string(),
    )
    .unwrap();
    let r = json(&run(&d, &["reduce-code", "--in", "hk.json"]));
    let cols: Vec<Vec<u64>> = serde_json::from_value(r["store"]["columns"].clone()).unwrap();
    assert_eq!(
        cols,
        vec![vec![1], vec![2], vec![4], vec![5], vec![2, 3], vec![3]]
    );
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn oracle_and_guard() {
    let d = scratch("oracle");
    run(
        &d,
        &["gen", "--family", "cycle_odd", "--n", "5", "--out", "g.json"],
    );
    let b = json(&run(&d, &["oracle", "--graph", "g.json", "--what", "bandwidth"]));
    assert_eq!(b["value"], 2);
    let s = json(&run(
        &d,
        &["oracle", "--graph", "g.json", "--what", "stretch", "--jobs", "2"],
    ));
    assert_eq!(s["value"], "3/2");
    run(
        &d,
        &["gen", "--family", "cycle_odd", "--n", "11", "--out", "big.json"],
    );
    let guarded = run(&d, &["oracle", "--graph", "big.json", "--what", "bandwidth"]);
    assert_eq!(guarded.code, 2);
    assert!(guarded.stderr.contains("size guard"), "{}", guarded.stderr);
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn fixture_suite_passes() {
    let d = scratch("fixtures");
    let r = json(&run(&d, &["paper-examples", "--max-n", "1"]));
    assert_eq!(r["all_pass"], true, "{}", r["rows"]);
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn bad_input_exits_two() {
    let d = scratch("bad");
    assert_eq!(run(&d, &["no-such-command"]).code, 2);
    assert_eq!(
        run(
            &d,
            &["eval", "--graph", "missing.json", "--store", "missing.json"]
        )
        .code,
        2
    );
    std::fs::write(d.join("junk.json"), "{\"format\": \"nope\"}").unwrap();
    assert_eq!(run(&d, &["layout-stretch", "--graph", "junk.json"]).code, 2);
    assert_eq!(run(&d, &["gen", "--family", "cycle_odd", "--n", "4"]).code, 2);
    std::fs::remove_dir_all(d).unwrap();
}
