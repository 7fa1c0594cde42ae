use std::process::{Command, Output};

fn qhide(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhide")).args(args).env_remove("QHIDE_SEED").output().unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = qhide(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn single_bound_for_three_pairs() {
    let v = json(&["bound", "single", "--n", "3"]);
    assert!((v["tight"].as_f64().unwrap() - 2.0 / 9.0).abs() < 1e-15);
    let text = String::from_utf8(qhide(&["bound", "single", "--n", "3"]).stdout).unwrap();
    assert!(text.contains("tight = 0.2222222222222222"), "{text}");
}

#[test]
fn single_bound_lp_agrees() {
    let v = json(&["bound", "single", "--n", "2", "--lp"]);
    assert!((v["lp_sum"].as_f64().unwrap() - (1.0 + 2.0 / 5.0)).abs() < 1e-9);
}

#[test]
fn multi_bound_integers_are_strings() {
    let v = json(&["bound", "multi", "--n", "10", "--k", "2", "--eps", "0.001"]);
    assert_eq!(v["l"], serde_json::json!(["-7", "-1", "0"]));
    assert!(v["required_n"].as_u64().unwrap() >= 10);
}

#[test]
fn figures_write_five_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = qhide(&["figures", "--out", dir.path().to_str().unwrap(), "--tau-grid", "11"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["fig2", "boundcurve", "mbound", "talppt", "tal2bdd"] {
        let text = std::fs::read_to_string(dir.path().join(format!("{name}.csv"))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), format!("# figure: {name}"));
        let columns = lines.next().unwrap().strip_prefix("# columns: ").unwrap().to_string();
        assert!(lines.next().unwrap().starts_with("# params: "));
        assert!(lines.next().unwrap().starts_with("# relation: "));
        assert_eq!(lines.next().unwrap(), columns);
        let width = columns.split(',').count();
        let rows: Vec<&str> = lines.collect();
        assert!(!rows.is_empty(), "{name}");
        assert!(rows.iter().all(|r| r.split(',').count() == width), "{name}");
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 5);
}

#[test]
fn figure_rows_match_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    qhide(&["figures", "--out", dir.path().to_str().unwrap(), "--tau-grid", "5"]);
    let fig2 = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    // Pairwise attack at n = 1: (2/3, 1).
    let attack = fig2.lines().find(|l| l.starts_with("1,attack,")).unwrap();
    let f: Vec<f64> = attack.split(',').skip(2).map(|x| x.parse().unwrap()).collect();
    assert!((f[0] - 2.0 / 3.0).abs() < 1e-11 && (f[1] - 1.0).abs() < 1e-11);
    let curve = std::fs::read_to_string(dir.path().join("boundcurve.csv")).unwrap();
    let row = curve.lines().find(|l| l.starts_with("1,0.000000000000,")).unwrap();
    let adv: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert!((adv - 1.0 / 15f64.sqrt()).abs() < 1e-11);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["--json", "attack", "--n", "2", "--trials", "3000"][..],
        &["--json", "commit", "--n", "2", "--r", "3", "--cheat", "nonsinglet:0.4", "--sessions", "3000"],
        &["--json", "prepare", "rho1", "--n", "4", "--count", "20"],
        &["--json", "clifford", "--n", "2", "--steps", "500"],
    ] {
        let a = qhide(args);
        let b = qhide(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let mut threaded = vec!["--threads", "3"];
        threaded.extend_from_slice(args);
        assert_eq!(qhide(&threaded).stdout, a.stdout, "{args:?}");
    }
}

#[test]
fn seed_from_environment() {
    let args = ["--json", "prepare", "rho1", "--n", "5", "--count", "8"];
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qhide"));
        cmd.args(extra).args(args).env_remove("QHIDE_SEED");
        if let Some(s) = env {
            cmd.env("QHIDE_SEED", s);
        }
        cmd.output().unwrap().stdout
    };
    let env = run(Some("77"), &[]);
    assert_eq!(env, run(None, &["--seed", "77"]));
    assert_ne!(env, run(None, &[]));
    assert_eq!(run(Some("77"), &["--seed", "5"]), run(None, &["--seed", "5"]));
}

#[test]
fn attack_records_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("records.jsonl");
    let v = json(&["attack", "--n", "1", "--trials", "500", "--records", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 1000);
    let hits = records.iter().filter(|r| r["b"] == 1 && r["decoded"] == 1).count();
    assert!((hits as f64 / 500.0 - v["p11"].as_f64().unwrap()).abs() < 1e-15);
}

#[test]
fn states_report_and_record() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    let v = json(&["states", "--n", "2", "--b", "1", "--state-out", path.to_str().unwrap()]);
    assert!((v["b1"]["min_pt_eigenvalue"].as_f64().unwrap() + 0.25).abs() < 1e-12);
    let rho = qhide::states::DensityMatrix::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rho.dim(), 16);
    let tau = json(&["states", "--n", "1", "--kind", "tau"]);
    assert!(tau["overlap"].as_f64().unwrap().abs() < 1e-15);
}

#[test]
fn tau_attack_reaches_the_bound() {
    let v = json(&["attack", "--protocol", "tau"]);
    assert!((v["sum"].as_f64().unwrap() - (1.0 + 3f64.sqrt() / 2.0)).abs() < 1e-12);
}

#[test]
fn honest_commitment() {
    let v = json(&["commit", "--n", "3", "--r", "4", "--sessions", "200"]);
    assert_eq!(v["pass_rate"], 1.0);
    assert_eq!(v["decode_accuracy"], 1.0);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| qhide(args).status.code().unwrap();
    assert_eq!(code(&["bound", "single", "--n", "0"]), 2);
    assert_eq!(code(&["states", "--n", "9"]), 2);
    assert_eq!(code(&["attack", "--n", "65", "--trials", "10"]), 2);
    assert_eq!(code(&["commit", "--n", "3", "--r", "4", "--cheat", "nonsinglet:2"]), 2);
    assert_eq!(code(&["bound", "theorem1", "--n", "1", "--x", "-3"]), 2);
    assert_eq!(code(&["bound", "nope"]), 2);
    assert_eq!(code(&["--threads", "0", "bound", "emin", "--n", "2"]), 2);
    assert_eq!(code(&["bound", "emin", "--n", "2"]), 0);
}
