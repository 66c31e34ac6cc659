use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harper-torus")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("harper-torus-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn every_document_carries_the_header() {
    let out = run(&["lattice", "describe", "gyroid"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["header"]["command"], "lattice-describe");
    assert!(v["header"]["artifact_version"].is_string());
    assert!(v["header"]["config"].is_object());
}

#[test]
fn gyroid_loops_at_a() {
    let v = json(&run(&["loops", "gyroid", "--base", "A"]));
    let loops = v["loops"].as_array().unwrap();
    assert_eq!(loops.len(), 30);
    for l in loops {
        assert_eq!(l["length"], 10);
        assert!(l["word"].is_string());
        assert_eq!(l["n_eff"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn spectrum_csv_has_one_row_per_character() {
    let out = run(&["spectrum", "honeycomb", "--grid", "4", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# "));
    let _: Value = serde_json::from_str(&header[2..]).unwrap();
    let body = lines.collect::<Vec<_>>().join("\n");
    let mut rdr = csv::Reader::from_reader(body.as_bytes());
    let cols: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(cols, ["k1", "k2", "E_1", "E_2"]);
    assert_eq!(rdr.records().count(), 16);
}

#[test]
fn verify_props_passes_for_generic_honeycomb() {
    let out = run(&["verify-props", "honeycomb", "--theta", "1/5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["ok"], true);
}

#[test]
fn verify_props_refuses_outside_the_hypotheses() {
    let out = run(&["verify-props", "honeycomb", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["error"]["kind"], "hypothesis");
}

#[test]
fn invalid_input_exits_with_two() {
    for args in [
        vec!["loops", "kagome"],
        vec!["harper", "honeycomb", "--theta", "1/x"],
        vec!["harper", "honeycomb", "--theta", "1/3", "--phi", "1/6"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn check_algebra_reports() {
    let v = json(&run(&["check-algebra", "honeycomb", "--theta", "1/3", "--twist", "0.3,0.7"]));
    assert_eq!(v["dimension"], 36);
    assert_eq!(v["ambient"], 36);
    let out = run(&["check-algebra", "--check", "clifford"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["clifford_dimension"], 8);
    let out = run(&["check-algebra", "--check", "ramified"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vanishing_points"], 2);
}

#[test]
fn gaps_with_refinement() {
    let v = json(&run(&["gaps", "honeycomb", "--theta", "1/5", "--grid", "32", "--refine", "--n-bound", "5"]));
    assert_eq!(v["stable"], true);
    assert_eq!(v["persistent_gap_count"], 8);
    for g in v["persistent_gaps"].as_array().unwrap() {
        assert!(g["residual"].as_f64().unwrap() < 1e-3);
    }
}

#[test]
fn butterfly_csv() {
    let out = run(&["butterfly", "zn2", "--q-max", "3", "--grid", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# "));
    assert_eq!(text.lines().nth(1).unwrap(), "flux_num,flux_den,eigenvalue");
}

#[test]
fn out_directory_files_are_byte_identical_across_runs() {
    let a = scratch("a");
    let b = scratch("b");
    for dir in [&a, &b] {
        let d = dir.to_str().unwrap();
        let cmd = ["--out", d, "spectrum", "gyroid", "--theta", "1/2,1/2,1/2", "--grid", "2", "--twist-seed", "5", "--random-samples", "3"];
        assert_eq!(run(&cmd).status.code(), Some(0));
    }
    let fa = std::fs::read(a.join("spectrum.csv")).unwrap();
    let fb = std::fs::read(b.join("spectrum.csv")).unwrap();
    // the header echoes the output directory, so compare the data rows
    let body = |f: &[u8]| String::from_utf8(f.to_vec()).unwrap().lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&fa), body(&fb));
    assert_eq!(std::fs::read(a.join("spectrum.csv")).unwrap(), fa);
    // identical configuration, identical directory: identical bytes
    let d = a.to_str().unwrap();
    let again = ["--out", d, "spectrum", "gyroid", "--theta", "1/2,1/2,1/2", "--grid", "2", "--twist-seed", "5", "--random-samples", "3"];
    run(&again);
    assert_eq!(std::fs::read(a.join("spectrum.csv")).unwrap(), fa);
    let _ = std::fs::remove_dir_all(&a);
    let _ = std::fs::remove_dir_all(&b);
}

#[test]
fn errors_go_to_a_json_file_under_out() {
    let dir = scratch("err");
    let out = run(&["--out", dir.to_str().unwrap(), "verify-props", "honeycomb", "--theta", "0"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&std::fs::read(dir.join("error.json")).unwrap()).unwrap();
    assert_eq!(v["error"]["kind"], "hypothesis");
    assert!(v["error"]["message"].is_string());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn harper_document_lists_operator_and_symmetries() {
    let v = json(&run(&["harper", "honeycomb", "--phi", "1/6"]));
    assert_eq!(v["header"]["command"], "harper");
    let s = v.to_string();
    assert!(s.contains("rho") && s.contains("theta"));
}
