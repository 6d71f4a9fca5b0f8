use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperreg"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hyperreg-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn powerset_instance_has_six_vertices_and_four_edges() {
    let out = run(&["gen", "--kind", "powerset", "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(v["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn counting_suite_passes() {
    let out = run(&["verify", "--suite", "counting", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v[0]["name"], "counting");
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn stats_of_empty_instance_is_zero() {
    let dir = scratch("empty");
    let f = write(&dir, "empty.json", r#"{"vertices":[],"edges":[]}"#);
    let out = run(&["stats", &f]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["density"]["value"], 0.0);
    assert_eq!(v["edges"], 0);
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--kind", "powerset"]).status.code(), Some(2));
    assert_eq!(run(&["stats", "/nonexistent/instance.json"]).status.code(), Some(2));

    let dir = scratch("exits");
    let t = dir.join("t.json");
    let out = run(&["gen", "--kind", "random-triad", "--n", "20", "--p", "0.6", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::rename(dir.join("instance.json"), &t).unwrap();
    // the literal ε is astronomically small
    assert_eq!(run(&["delta-reg", t.to_str().unwrap()]).status.code(), Some(3));

    // every triple inside one half of the vertices: far from quasirandom at a fine ε₁
    let edges: Vec<String> = (0..6)
        .flat_map(|a| (a + 1..6).flat_map(move |b| (b + 1..6).map(move |c| format!("[{a},{b},{c}]"))))
        .collect();
    let h = write(&dir, "h.json", &format!(r#"{{"vertices":[0,1,2,3,4,5,6,7,8,9,10,11],"edges":[{}]}}"#, edges.join(",")));
    let trivial = r#"{"partition":{"n":12,"parts":[[0,1,2,3,4,5,6,7,8,9,10,11]]},"ell":1,"eps1":0.1,"eps2":{"family":"constant","value":0.5},"cells":[[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0]]}"#;
    let d = write(&dir, "d.json", trivial);
    let out = run(&["audit", &h, "--decomposition", &d, "--epsilon1", "0.0001"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn manifest_replay_reproduces_outputs() {
    let dir = scratch("replay");
    let a = dir.join("a");
    let out = run(&["gen", "--kind", "random-graph", "--n", "40", "--p", "0.3", "--seed", "5", "--out", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let g = a.join("instance.json");
    let first = dir.join("first");
    let out = run(&["partition", g.to_str().unwrap(), "--epsilon", "0.3", "--seed", "2", "--out", first.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let manifest: Value = serde_json::from_str(&std::fs::read_to_string(first.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "partition");
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 1);

    // replay the recorded argv into a fresh directory, on one thread
    let second = dir.join("second");
    let argv: Vec<String> = manifest["argv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .map(|s| if s == first.to_str().unwrap() { second.to_str().unwrap().to_string() } else { s })
        .collect();
    let out = bin().args(&argv).env("HYPERREG_THREADS", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let again: Value = serde_json::from_str(&std::fs::read_to_string(second.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["outputs"], again["outputs"]);
    assert_eq!(manifest["inputs"], again["inputs"]);
    for name in ["partition.json", "ledger.csv", "report.json"] {
        assert_eq!(std::fs::read(first.join(name)).unwrap(), std::fs::read(second.join(name)).unwrap(), "{name}");
    }
}

#[test]
fn decompose_then_audit() {
    let dir = scratch("decompose");
    let out = run(&["gen", "--kind", "random3graph", "--n", "24", "--p", "0.5", "--seed", "3"]);
    let h = write(&dir, "h.json", &String::from_utf8(out.stdout).unwrap());
    let o = dir.join("o");
    let out = run(&["decompose", &h, "--epsilon1", "0.3", "--out", o.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let ledger = std::fs::read_to_string(o.join("ledger.csv")).unwrap();
    assert!(ledger.starts_with("round,t,ell,eps2,msd"));
    let out = run(&["audit", &h, "--decomposition", o.join("decomposition.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json_of(&out)["triple_pass"].as_f64().unwrap() >= 0.7);
}

#[test]
fn delta_reg_output_audits_clean() {
    let dir = scratch("delta");
    let out = run(&["gen", "--kind", "random-triad", "--sizes", "90,90,90", "--p", "0.6", "--seed", "1"]);
    let t = write(&dir, "t.json", &String::from_utf8(out.stdout).unwrap());
    let o = dir.join("o");
    let out = run(&["delta-reg", &t, "--delta", "0.1", "--eps-override", "0.05", "--out", o.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(o.join("delta.json")).unwrap()).unwrap();
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 3);
    let out = run(&["audit", &t, "--decomposition", o.join("delta.json").to_str().unwrap(), "--delta", "0.1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["regular"], true);
}

#[test]
fn vc2_of_dummy_extension_is_at_most_one() {
    let dir = scratch("vc2");
    let g = write(&dir, "g.json", r#"{"vertices":[0,1,2,3],"edges":[[0,2],[0,3],[1,3]]}"#);
    let out = run(&["gen", "--kind", "bip", "--base", &g]);
    let b = write(&dir, "b.json", &String::from_utf8(out.stdout).unwrap());
    let out = run(&["gen", "--kind", "dummy-extend", "--base", &b, "--n", "3"]);
    let h = write(&dir, "h.json", &String::from_utf8(out.stdout).unwrap());
    let out = run(&["vcdim", &h, "--kind", "vc2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_of(&out)["dimension"].as_u64().unwrap() <= 1);
}

#[test]
fn sweep_writes_csv_and_json() {
    let dir = scratch("sweep");
    let out = run(&["sweep", "--experiment", "counting", "--n", "15", "--p", "0.3,0.7", "--seeds", "2", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 5);
    assert!(csv.starts_with("p,index,seed,eps"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("sweep.json")).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
}
