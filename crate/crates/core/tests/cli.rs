use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use biplane::connectivity::vertex_connectivity;
use biplane::geom::parse_points;
use biplane::graph::parse_layered_edges;

fn biplane(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biplane")).args(args).output().unwrap()
}

fn dir(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("biplane-cli-test-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn identical_runs_are_byte_identical() {
    let d = dir("det");
    let pts = d.join("mixed.txt");
    assert!(biplane(&["gen", "--shape", "mixed", "--n", "14", "--extra", "7", "--seed", "11", "--out", s(&pts)])
        .status
        .success());
    let a = biplane(&["build", "--mode", "general5", s(&pts), "--format", "json"]);
    let b = biplane(&["build", "--mode", "general5", s(&pts), "--format", "json"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let r1 = biplane(&["gen", "--shape", "random", "--n", "20", "--seed", "7"]);
    let r2 = biplane(&["gen", "--shape", "random", "--n", "20", "--seed", "7"]);
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn reported_kappa_matches_emitted_graph() {
    let d = dir("kappa");
    let pts = d.join("t.txt");
    biplane(&["gen", "--shape", "triangulation", "--n", "11", "--seed", "3", "--out", s(&pts)]);
    let out = d.join("aug.edges");
    let res = biplane(&[
        "augment",
        "--target",
        "4",
        s(&pts),
        &format!("{}.edges", s(&pts)),
        "--out",
        s(&out),
        "--format",
        "json",
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let g = parse_layered_edges(
        &std::fs::read_to_string(&out).unwrap(),
        parse_points(&std::fs::read_to_string(&pts).unwrap()).unwrap(),
    )
    .unwrap();
    assert_eq!(report["kappa"], vertex_connectivity(&g.abstract_graph()));
    assert!(report["kappa"].as_u64().unwrap() >= 4);
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn trace_writes_one_file_per_step() {
    let d = dir("trace");
    let pts = d.join("m.txt");
    biplane(&["gen", "--shape", "mixed", "--n", "14", "--extra", "5", "--seed", "2", "--out", s(&pts)]);
    let out = d.join("m.edges");
    let res = biplane(&["build", "--mode", "general5", "--trace", s(&pts), "--out", s(&out), "--format", "json"]);
    assert!(res.status.success());
    let report: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let files = report["phase_checkpoints"].as_array().unwrap();
    assert!(files.len() >= 2);
    for f in files {
        assert!(Path::new(f.as_str().unwrap()).exists());
    }
}

#[test]
fn render_emits_svg_and_exit_codes_follow_the_error_kind() {
    let d = dir("render");
    let pts = d.join("p.txt");
    biplane(&["gen", "--shape", "regular", "--n", "12", "--out", s(&pts)]);
    let edges = d.join("p.edges");
    assert!(biplane(&["build", "--mode", "convex5", s(&pts), "--out", s(&edges)]).status.success());
    let svg = biplane(&["render", s(&pts), s(&edges)]);
    assert!(String::from_utf8(svg.stdout).unwrap().starts_with("<svg"));

    assert_eq!(biplane(&["build", "--mode", "general5", s(&pts)]).status.code(), Some(3));
    let fan = d.join("fan.txt");
    biplane(&["gen", "--shape", "fan", "--n", "7", "--out", s(&fan)]);
    assert_eq!(biplane(&["augment", "--target", "4", s(&fan), &format!("{}.edges", s(&fan))]).status.code(), Some(2));
    assert_eq!(biplane(&["augment", "--target", "9", s(&fan), s(&fan)]).status.code(), Some(3));
}
