//! End-to-end checks of the command-line interface.

use std::path::Path;
use std::process::{Command, Output};

fn reorilat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reorilat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

fn tempdir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("reorilat-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn analyze_reports_the_lattice_verdict() {
    let dir = tempdir("analyze");
    let c4 = write(&dir, "c4.txt", "4\n1 2\n2 3\n3 4\n1 4\n");
    let out = reorilat(&["analyze", "--graph", &c4]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lattice: yes (vertebrate)"));
    assert!(text.contains("semidistributive: false"));
    assert!(text.contains("|AR| = 14"));

    let dia = write(&dir, "dia.txt", "4\n1 2\n1 3\n2 4\n3 4\n");
    let out = reorilat(&["analyze", "--graph", &dia]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("lattice: no"));
}

#[test]
fn analyze_rejects_malformed_input_with_line_number() {
    let dir = tempdir("badparse");
    let bad = write(&dir, "bad.txt", "3\n1 2\noops\n");
    let out = reorilat(&["analyze", "--graph", &bad]);
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("error:"), "stderr was {err:?}");
    assert!(err.contains("line 3"));
}

#[test]
fn size_cap_env_var_refuses_enumeration() {
    let dir = tempdir("cap");
    let k4 = write(&dir, "k4.txt", "4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let out = Command::new(env!("CARGO_BIN_EXE_reorilat"))
        .args(["analyze", "--graph", &k4])
        .env("REORILAT_MAX_ELEMENTS", "10")
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("predicted 24"), "stderr was {err:?}");
}

#[test]
fn quotient_emits_files_and_counts_classes() {
    let dir = tempdir("quotient");
    let k4 = write(&dir, "k4.txt", "4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n");
    let outdir = dir.join("out");
    let out = reorilat(&[
        "quotient",
        "--graph",
        &k4,
        "--sylvester",
        "--out",
        outdir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("classes: 14"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(outdir.join("quotient.json")).unwrap())
            .unwrap();
    assert_eq!(json["classes"].as_array().unwrap().len(), 14);
    assert_eq!(json["partial_reorientations"].as_array().unwrap().len(), 14);
}

#[test]
fn quotient_refuses_non_skeletal_graphs() {
    let dir = tempdir("nonskeletal");
    let c4 = write(&dir, "c4.txt", "4\n1 2\n2 3\n3 4\n1 4\n");
    let out = reorilat(&["quotient", "--graph", &c4, "--sylvester"]);
    assert!(!out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("skeletal"));
}

#[test]
fn polytope_pentagon_is_deterministic() {
    let dir = tempdir("polytope");
    let k3 = write(&dir, "k3.txt", "3\n1 2\n1 3\n2 3\n");
    let out1 = dir.join("p1");
    let out2 = dir.join("p2");
    for out in [&out1, &out2] {
        let r = reorilat(&[
            "polytope",
            "--graph",
            &k3,
            "--sylvester",
            "--weights-seed",
            "7",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(r.status.success());
        assert!(String::from_utf8(r.stdout)
            .unwrap()
            .contains("verified: true"));
    }
    for name in [
        "vertices.txt",
        "vertices.json",
        "hrep.txt",
        "associahedron_vertices.txt",
    ] {
        assert_eq!(
            std::fs::read(out1.join(name)).unwrap(),
            std::fs::read(out2.join(name)).unwrap(),
            "{name} must be byte-identical across runs"
        );
    }
    // the associahedron of the triangle is a pentagon
    let vertices = std::fs::read_to_string(out1.join("associahedron_vertices.txt")).unwrap();
    assert_eq!(vertices.lines().count(), 5);
}

#[test]
fn principal_congruence_of_a_bare_rope() {
    let dir = tempdir("principal");
    let k3 = write(&dir, "k3.txt", "3\n1 2\n1 3\n2 3\n");
    let out = reorilat(&[
        "quotient",
        "--graph",
        &k3,
        "--principal",
        "1 2 | |",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // contracting everything except the bare rope of (1,2) leaves 2 classes
    assert!(text.contains("classes: 2"), "output was {text:?}");
}

#[test]
fn classify_restriction_prints_the_trichotomy() {
    let dir = tempdir("classify");
    let k3 = write(&dir, "k3.txt", "3\n1 2\n1 3\n2 3\n");
    let path = write(&dir, "p3.txt", "3\n1 2\n2 3\n");
    let out = reorilat(&["classify-restriction", "--graph", &k3, "--subgraph", &path]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("weakly pathful (fibers are intervals): true"));
    assert!(text.contains("pathful (lattice quotient map): true"));
    assert!(text.contains("strongly pathful (interval isomorphism): false"));
    assert!(text.contains("witness"));
}

#[test]
fn verify_small_scale_passes_and_emits_json() {
    let out = reorilat(&["verify", "--max-vertices", "3", "--json"]);
    assert!(out.status.success());
    let json: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let reports = json.as_array().unwrap();
    assert_eq!(reports.len(), 14);
    assert!(reports.iter().all(|r| r["passed"].as_bool().unwrap()));
}

#[test]
fn corpus_counts_match() {
    let out = reorilat(&["corpus", "--max-vertices", "4"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("40 graphs"));
}
