use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qorbit::rmatrix::{a_series_r, EntryJson, MatrixJson};
use qorbit::scalar::ParameterContext;

fn qorbit(args: &[&str]) -> Output {
    qorbit_with(args, None)
}

fn qorbit_with(args: &[&str], config: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qorbit"));
    c.args(args).env_remove("QORBIT_CONFIG");
    if let Some(p) = config {
        c.env("QORBIT_CONFIG", p);
    }
    c.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn dimension(o: &Output) -> usize {
    let text = stdout(o);
    let line = text.lines().find(|l| l.starts_with("dimension: ")).expect("dimension line");
    line["dimension: ".len()..].parse().unwrap()
}

#[test]
fn every_suite_passes_on_its_defaults() {
    for suite in [
        "coassoc",
        "leibniz",
        "module-law",
        "phi-relations",
        "eq35",
        "ybe",
        "k-identities",
        "eq52",
        "adjoint",
    ] {
        let o = qorbit(&["verify", suite]);
        assert_eq!(code(&o), 0, "{suite}: {}", stdout(&o));
        let last = stdout(&o).lines().last().unwrap().to_string();
        assert!(last.starts_with(&format!("{suite}: ")) && last.ends_with(", 0 failed"), "{last}");
    }
}

#[test]
fn named_suite_variants() {
    for args in [
        &["verify", "eq35", "--sigma", "formal", "--n-max", "6"][..],
        &["verify", "eq35", "--sigma", "3"],
        &["verify", "eq35", "--sigma", "-2", "--n-max", "4"],
        &["verify", "eq52", "--n", "2"],
        &["verify", "ybe", "--series", "A", "--n", "2"],
        &["verify", "k-identities", "--n", "4"],
        &["verify", "coassoc", "--instance", "frt", "--n", "2"],
        &["verify", "adjoint", "--type", "A1"],
        &["verify", "leibniz", "--instance", "sl2", "--samples", "10", "--seed", "5"],
    ] {
        let o = qorbit(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{ not json").unwrap();
    let wrong_version = dir.path().join("v9.json");
    fs::write(&wrong_version, r#"{"version": 9, "n": 1, "entries": [[1]]}"#).unwrap();
    let g = garbage.to_str().unwrap();
    let v = wrong_version.to_str().unwrap();
    for args in [
        &["verify", "nope"][..],
        &["verify"],
        &["frobnicate"],
        &["verify", "ybe", "--file", "/nonexistent/r.json"],
        &["verify", "ybe", "--file", g],
        &["verify", "ybe", "--file", v],
        &["verify", "k-identities", "--file", g],
        &["verify", "ybe", "--series", "B"],
        &["verify", "eq35", "--sigma", "half"],
        &["verify", "coassoc", "--instance", "so5"],
        &["verify", "adjoint", "--type", "G2"],
        &["rep", "frt", "--series", "C", "--n", "2", "--weights", "1"],
        &["rep", "frt", "--n", "3", "--weights", "1"],
        &["rep", "adjoint", "--type", "A2", "--lambda", "-1"],
        &["rep", "sl2", "--sigma", "2", "--substitute", "3/2"],
        &["rep", "sl2", "--sigma", "2", "--substitute", "q=x"],
        &["rep", "sl2", "--sigma", "1", "--substitute", "q=2"],
        &["phi-eval", "--instance", "sl2", "--word", "Z"],
        &["phi-eval", "--instance", "e8", "--word", "X+"],
    ] {
        let o = qorbit(args);
        assert_eq!(code(&o), 2, "{args:?}");
    }
}

#[test]
fn perturbed_r_matrix_fails_with_witness() {
    let ctx = ParameterContext::new(&[]).unwrap();
    let mut m = MatrixJson::from_matrix(&a_series_r(&ctx, 2)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    fs::write(&good, serde_json::to_string(&m).unwrap()).unwrap();
    assert_eq!(code(&qorbit(&["verify", "ybe", "--file", good.to_str().unwrap()])), 0);

    m.entries[3][1] = EntryJson::Int(2);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string(&m).unwrap()).unwrap();
    let o = qorbit(&["verify", "ybe", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("witness: "));
}

#[test]
fn text_entries_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let text = r#"{"n": 2, "entries": [
        ["q", 0, 0, 0],
        [0, 1, 0, 0],
        [0, "q - q^-1", 1, 0],
        [0, 0, 0, "q"]]}"#;
    fs::write(&p, text).unwrap();
    let o = qorbit(&["verify", "ybe", "--file", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn positive_weights_are_infinite() {
    for args in [
        &["rep", "adjoint", "--type", "A1", "--lambda", "2"][..],
        &["rep", "sl2", "--sigma", "-1"],
    ] {
        let o = qorbit(args);
        assert_eq!(code(&o), 3, "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert!(err.contains("exceeded dim_cutoff = 64"), "{err}");
    }
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("qorbit.conf");
    fs::write(&cfg, "dim_cutoff = 20\n").unwrap();
    let o = qorbit_with(&["rep", "adjoint", "--type", "A2", "--lambda", "-1,1"], Some(&cfg));
    assert_eq!(code(&o), 3);
    // the same cutoff is ample for the finite neighbour
    let o = qorbit_with(&["rep", "adjoint", "--type", "A2", "--lambda", "-1,-1"], Some(&cfg));
    assert_eq!(code(&o), 0);
    assert_eq!(dimension(&o), 8);
}

#[test]
fn reports_and_archives_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "adjoint", "--format", "json"][..],
        &["verify", "module-law", "--instance", "sl2", "--format", "json"],
        &["rep", "frt", "--n", "3", "--weights", "1,1", "--format", "json"],
        &["rep", "adjoint", "--type", "A2", "--lambda", "-1,0", "--format", "json"],
    ] {
        let a = qorbit(args);
        let b = qorbit(args);
        assert_eq!(code(&a), 0);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");

        let out = dir.path().join("out.json");
        let mut with_out = args.to_vec();
        with_out.extend(["--out", out.to_str().unwrap()]);
        assert_eq!(code(&qorbit(&with_out)), 0);
        assert_eq!(fs::read(&out).unwrap(), a.stdout, "{args:?}");
    }
}

#[test]
fn out_writes_json_even_in_text_mode() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qorbit(&["verify", "eq35", "--n-max", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS "));
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["suite"], "eq35");
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn config_file_sets_cutoff() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("qorbit.conf");
    fs::write(&cfg, "# small\ndim_cutoff = 3\n").unwrap();
    assert_eq!(code(&qorbit_with(&["rep", "sl2", "--sigma", "2"], Some(&cfg))), 0);
    let o = qorbit_with(&["rep", "sl2", "--sigma", "3"], Some(&cfg));
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8(o.stderr).unwrap().contains("dim_cutoff = 3"));
    assert_eq!(code(&qorbit(&["rep", "sl2", "--sigma", "3"])), 0);

    fs::write(&cfg, "dim_cutof = 3\n").unwrap();
    assert_eq!(code(&qorbit_with(&["rep", "sl2", "--sigma", "2"], Some(&cfg))), 2);
    let missing = dir.path().join("missing.conf");
    assert_eq!(code(&qorbit_with(&["rep", "sl2", "--sigma", "2"], Some(&missing))), 2);
}

#[test]
fn substitution_gives_rationals() {
    let o = qorbit(&["rep", "sl2", "--sigma", "2", "--substitute", "q=2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["q"], "2");
    // q^{H/2} acts on 1 by q^{-σ/2}
    assert_eq!(v["matrices"]["q^{H/2}"][0][0], "1/2");
    assert_eq!(v["matrices"]["q^{H/2}"][2][2], "2");

    let o = qorbit(&["rep", "adjoint", "--type", "A1", "--lambda", "-1", "--substitute", "q=-1/3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // t acts on 1 by q^{-1}
    assert_eq!(v["matrices"]["t1"][0][0], "-3");
}

#[test]
fn frt_and_sl2_dimensions_agree() {
    for m in 0..=2u32 {
        let s = m.to_string();
        let a = qorbit(&["rep", "sl2", "--sigma", &s]);
        let b = qorbit(&["rep", "frt", "--series", "A", "--n", "2", "--weights", &s]);
        assert_eq!(code(&a), 0);
        assert_eq!(code(&b), 0);
        assert_eq!(dimension(&a), m as usize + 1);
        assert_eq!(dimension(&b), m as usize + 1);
    }
}

#[test]
fn frt_three_dimensions() {
    // dimension of the irreducible sl3 module with labels (a, b)
    for (a, b) in [(1u32, 0u32), (0, 1), (1, 1), (2, 0)] {
        let w = format!("{a},{b}");
        let o = qorbit(&["rep", "frt", "--n", "3", "--weights", &w]);
        assert_eq!(code(&o), 0);
        assert_eq!(dimension(&o) as u32, (a + 1) * (b + 1) * (a + b + 2) / 2, "{w}");
    }
}

#[test]
fn phi_eval_values() {
    let o = qorbit(&["phi-eval", "--instance", "sl2", "--word", "q^{H/2}", "--sigma", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "q^-1");

    let o = qorbit(&["phi-eval", "--instance", "adjoint", "--word", "t1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["instance"], "adjoint");
    assert_eq!(v["value"], "l1");

    let o = qorbit(&["phi-eval", "--instance", "adjoint", "--word", "t1 t1^-1"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = qorbit(&["phi-eval", "--instance", "adjoint", "--word", "f1"]);
    assert_eq!(stdout(&o).trim(), "0");
}
