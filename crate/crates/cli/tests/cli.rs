use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn pcnnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcnnf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixture(dir: &Path, name: &str, file: &str) -> PathBuf {
    let p = dir.join(file);
    assert_eq!(code(&pcnnf(&["fixture", name, "--out", path(&p)])), 0);
    p
}

#[test]
fn fig1_booleanized_full_encoding_misses_the_conflict_on_c_and_d() {
    let dir = tempfile::tempdir().unwrap();
    let fig1 = fixture(dir.path(), "fig1", "fig1.dnnf");
    let cnf = dir.path().join("full.cnf");
    let out = pcnnf(&[
        "compile",
        path(&fig1),
        "--kind",
        "full",
        "--booleanize",
        "--out",
        path(&cnf),
    ]);
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("full.stats.json").exists());

    let out = pcnnf(&["verify", path(&cnf), "--property", "urc"]);
    assert_eq!(code(&out), 4, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "counterexample");
    assert_eq!(report["witness_names"], serde_json::json!(["c", "d"]));
    assert_eq!(report["missed"], "bot");
}

#[test]
fn psi_p_passes_pc_and_full_passes_domain_consistency() {
    let dir = tempfile::tempdir().unwrap();
    let fig1 = fixture(dir.path(), "fig1", "fig1.dnnf");
    for kind in ["pc", "pc-compact"] {
        let cnf = dir.path().join(format!("{kind}.cnf"));
        assert_eq!(
            code(&pcnnf(&["compile", path(&fig1), "--kind", kind, "--out", path(&cnf)])),
            0
        );
        let out = pcnnf(&["verify", path(&cnf), "--property", "pc"]);
        assert_eq!(code(&out), 0);
        let report: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["verdict"], "holds");
        assert_eq!(report["exhaustive"], true);
    }
    let cnf = dir.path().join("full.cnf");
    assert_eq!(
        code(&pcnnf(&["compile", path(&fig1), "--kind", "full", "--out", path(&cnf)])),
        0
    );
    let out = pcnnf(&[
        "verify",
        path(&cnf),
        "--property",
        "domain-consistency",
        "--direct-encoding",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn non_smooth_input_is_rejected_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ns.dnnf");
    fs::write(
        &input,
        "domain x 0 1\ndomain y 0 1\nleaf l1 x=0\nleaf l2 x=1\nleaf l3 y=0\nand a1 l1 l3\nor o1 a1 l2\nroot o1\n",
    )
    .unwrap();
    let out = pcnnf(&["compile", path(&input)]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("o1") && err.contains("l2"), "{err}");

    assert_eq!(code(&pcnnf(&["validate", path(&input)])), 2);
    // Smoothing it first makes compilation succeed.
    let smooth = dir.path().join("s.dnnf");
    assert_eq!(code(&pcnnf(&["smooth", path(&input), "--out", path(&smooth)])), 0);
    assert_eq!(code(&pcnnf(&["validate", path(&smooth)])), 0);
    assert_eq!(code(&pcnnf(&["compile", path(&smooth), "--kind", "urc"])), 0);
}

#[test]
fn exit_codes_for_usage_parse_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&pcnnf(&["verify"])), 1);
    assert_eq!(code(&pcnnf(&["frobnicate"])), 1);
    assert_eq!(code(&pcnnf(&["fixture", "no-such-fixture"])), 1);
    assert_eq!(code(&pcnnf(&["--help"])), 0);

    let missing = dir.path().join("missing.dnnf");
    assert_eq!(code(&pcnnf(&["validate", path(&missing)])), 3);

    let garbage = dir.path().join("garbage.dnnf");
    fs::write(&garbage, "domain x 0 1\nleaf a x=7\nroot a\n").unwrap();
    assert_eq!(code(&pcnnf(&["validate", path(&garbage)])), 2);

    let bad_cnf = dir.path().join("bad.cnf");
    fs::write(&bad_cnf, "p cnf 2 1\n1 3 0\n").unwrap();
    assert_eq!(code(&pcnnf(&["verify", path(&bad_cnf), "--property", "pc"])), 2);
}

#[test]
fn budget_exhaustion_and_sampling() {
    let dir = tempfile::tempdir().unwrap();
    let fig1 = fixture(dir.path(), "fig1", "fig1.dnnf");
    let cnf = dir.path().join("pc.cnf");
    assert_eq!(code(&pcnnf(&["compile", path(&fig1), "--out", path(&cnf)])), 0);
    let out = pcnnf(&["verify", path(&cnf), "--property", "pc", "--budget", "50"]);
    assert_eq!(code(&out), 5);
    let out = pcnnf(&[
        "verify",
        path(&cnf),
        "--property",
        "pc",
        "--budget",
        "50",
        "--sample",
        "100",
        "--seed",
        "7",
    ]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "no_counterexample_found");
    assert_eq!(report["exhaustive"], false);
}

#[test]
fn counterexample_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let amk = fixture(dir.path(), "amk-counterexample", "amk.cnf");
    let out = pcnnf(&["verify", path(&amk), "--property", "pc"]);
    assert_eq!(code(&out), 4);
    let eo = fixture(dir.path(), "eo-seq-counterexample", "eo.cnf");
    let out = pcnnf(&["verify", path(&eo), "--property", "pc"]);
    assert_eq!(code(&out), 4);
    let out = pcnnf(&["verify", path(&eo), "--property", "urc"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn fixtures_are_byte_stable() {
    for args in [
        vec!["fixture", "fig1"],
        vec!["fixture", "fig2-embed"],
        vec!["fixture", "amk-counterexample"],
        vec!["fixture", "eo-seq-counterexample"],
        vec!["fixture", "random-smooth", "--seed", "11", "--n", "3", "--d", "3"],
        vec![
            "fixture",
            "mdd-expand",
            "--seed",
            "5",
            "--n",
            "4",
            "--d",
            "2",
            "--width",
            "2",
        ],
    ] {
        let a = pcnnf(&args);
        let b = pcnnf(&args);
        assert_eq!(code(&a), 0, "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = pcnnf(&["fixture", "random-smooth", "--seed", "1"]);
    let b = pcnnf(&["fixture", "random-smooth", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn compile_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture(dir.path(), "fig2-embed", "embed.dnnf");
    for kind in ["full", "urc", "pc", "urc-compact", "pc-compact"] {
        let a = pcnnf(&["compile", path(&input), "--kind", kind]);
        let b = pcnnf(&["compile", path(&input), "--kind", kind]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{kind}");
        assert!(String::from_utf8_lossy(&a.stdout).contains("p cnf"));
    }
}

#[test]
fn cover_and_models() {
    let dir = tempfile::tempdir().unwrap();
    let fig1 = fixture(dir.path(), "fig1", "fig1.dnnf");
    let out = pcnnf(&["cover", path(&fig1)]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["valid"], true);
    assert_eq!(doc["level_mode"], "min-pull");

    let out = pcnnf(&["models", path(&fig1)]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["count"], 8);

    // The PC encoding projected onto the inputs has the same 8 models.
    let cnf = dir.path().join("pc.cnf");
    assert_eq!(
        code(&pcnnf(&["compile", path(&fig1), "--booleanize", "--out", path(&cnf)])),
        0
    );
    let out = pcnnf(&["models", path(&cnf), "--inputs-only"]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["count"], 8);
}

#[test]
fn run_all_writes_every_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let fig1 = fixture(dir.path(), "fig1", "fig1.dnnf");
    let out_dir = dir.path().join("out");
    let out = pcnnf(&["run-all", path(&fig1), "--out", path(&out_dir)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for kind in ["full", "urc", "pc", "urc-compact", "pc-compact"] {
        for suffix in [
            "cnf",
            "stats.json",
            "report.json",
            "bool.cnf",
            "bool.stats.json",
            "bool.report.json",
        ] {
            assert!(out_dir.join(format!("{kind}.{suffix}")).exists(), "{kind}.{suffix}");
        }
    }
    for f in ["validate.txt", "smooth.dnnf", "cover.json", "summary.json"] {
        assert!(out_dir.join(f).exists(), "{f}");
    }
    let summary: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("summary.json")).unwrap()).unwrap();
    let encodings = summary["encodings"].as_array().unwrap();
    assert_eq!(encodings.len(), 10);
    assert!(encodings.iter().all(|e| e["verdict"] == "holds"));

    // FullNNF is not claimed to be URC; the report records the failure anyway.
    let full: Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("full.bool.report.json")).unwrap()).unwrap();
    let urc = full
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["property"] == "urc")
        .unwrap();
    assert_eq!(urc["verdict"], "counterexample");
    assert_eq!(urc["claimed"], false);
}
