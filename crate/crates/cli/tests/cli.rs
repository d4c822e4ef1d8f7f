use std::path::PathBuf;
use std::process::{Command, Output};

use hgood::check::Bundle;
use hgood::search::{longest_mono_ell_path, Limits};
use hgood::{Color, TwoColoring};

fn hgood(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgood")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hgood-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ramsey_of_two_edges() {
    let out = hgood(&["ramsey", "--red", "edge:3", "--blue", "edge:3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["value"], 3);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.lines().any(|l| l.starts_with("manifest: {")), "{err}");
}

#[test]
fn tampered_certificate_is_rejected() {
    let c = TwoColoring::from_fn(3, 6, |m| if m.count_ones() == 3 && m & 0b11 != 0 { Color::Red } else { Color::Blue }).unwrap();
    let cert = longest_mono_ell_path(&c, 2, Color::Red, &Limits::default()).unwrap().certificate;
    let mut bundle = Bundle { certificate: cert.clone(), coloring: Some(c.clone()), hypergraph: None, tournament: None, target: None };
    let good = scratch("good.json");
    std::fs::write(&good, serde_json::to_string(&bundle).unwrap()).unwrap();
    assert_eq!(hgood(&["check", good.to_str().unwrap()]).status.code(), Some(0));

    let w = &cert.witness;
    let mut bad = c;
    bad.set_mask(1 << w[0] | 1 << w[1] | 1 << w[2], Color::Blue);
    bundle.coloring = Some(bad);
    let path = scratch("bad.json");
    std::fs::write(&path, serde_json::to_string(&bundle).unwrap()).unwrap();
    assert_eq!(hgood(&["check", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn table_is_reproducible_across_runs_and_jobs() {
    let a = hgood(&["table", "--seed", "3", "--format", "json"]);
    let b = hgood(&["table", "--seed", "3", "--format", "json"]);
    let one = hgood(&["--jobs", "1", "table", "--seed", "3", "--format", "json"]);
    let eight = hgood(&["--jobs", "8", "table", "--seed", "3", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(one.stdout, eight.stdout);
    assert_eq!(a.stdout, one.stdout);
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(hgood(&["ramsey", "--red", "wheel:5", "--blue", "edge:3"]).status.code(), Some(1));
    assert_eq!(hgood(&["--jobs", "0", "tau", "--k", "2", "--alpha", "3"]).status.code(), Some(1));
    assert_eq!(hgood(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn strict_guard_exits_two() {
    let out = scratch("nt.json");
    let o = hgood(&["construct", "non-transitive", "--m", "3", "--t", "6", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_hgood"))
        .args(["verify", "--coloring", out.to_str().unwrap(), "--red", "path:3:2:12", "--blue", "edge:3"])
        .env("HGOOD_STRICT", "1")
        .env("HGOOD_TIGHT_PATH", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_writes_a_manifest_sidecar() {
    let out = scratch("burr.json");
    let o = hgood(&["construct", "burr", "--k", "3", "--chi", "2", "--sigma", "1", "--vg", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let body = std::fs::read(&out).unwrap();
    let side: serde_json::Value = serde_json::from_slice(&std::fs::read(scratch("burr.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(side["exit_code"], 0);
    assert_eq!(side["tool"], "hgood");
    let digest = side["outputs"][0]["sha256"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    assert!(!body.is_empty());
}
