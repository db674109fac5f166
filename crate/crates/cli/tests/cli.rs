use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn eja(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eja")).args(args).output().expect("binary runs")
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn axioms_exit_codes() {
    let o = eja(&["axioms", "--algebra", "spin:3", "--trials", "200"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"]["max_residual_j2"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["metadata"]["tool_version"], env!("CARGO_PKG_VERSION"));

    let o = eja(&["axioms", "--algebra", "classical:4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"]["max_residual_j2"].as_f64().unwrap() <= 1e-12);

    assert_eq!(code(&eja(&["axioms", "--algebra", "spinx:3"])), 2);
    // Composites are reported but never fail.
    let o = eja(&["axioms", "--algebra", "tensor(spin:2,spin:2)", "--trials", "20"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["pass"], false);
}

#[test]
fn embed_check_codes() {
    assert_eq!(code(&eja(&["embed-check", "--algebra", "spin:4", "--trials", "10"])), 0);
    assert_eq!(code(&eja(&["embed-check", "--algebra", "qherm:2", "--trials", "10"])), 0);
    let o = eja(&["embed-check", "--algebra", "oct3"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceptional"));
}

#[test]
fn classical_stein_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.csv");
    let cfg = configs().join("classical.toml");
    let o = eja(&["stein", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "n,pinched_rate,achievable_exponent,converse_bound,target,gap_bound");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|c| c.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 10);
    for r in &rows {
        assert!(r[2] < r[4]);
        assert!((r[4] - 0.130812035941137).abs() < 1e-12);
    }
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("scan.csv.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["config_hash"].as_str().unwrap().len(), 64);
    assert_eq!(meta["units"], "nats");
}

#[test]
fn output_is_deterministic() {
    let cfg = configs().join("spin.toml");
    let a = eja(&["stein", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    let b = eja(&["stein", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let c = eja(&["stein", "--config", cfg.to_str().unwrap(), "--format", "json", "--seed", "9"]);
    assert_ne!(a.stdout, c.stdout, "seed is part of the config hash");
}

#[test]
fn equal_states_give_zero_target() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("eq.toml");
    std::fs::write(
        &cfg,
        "algebra = \"spin:2\"\n[states]\nrho = [0.5, 0.2, 0.1]\nsigma = [0.5, 0.2, 0.1]\n[stein]\nn = [1, 2, 3]\n",
    )
    .unwrap();
    let o = eja(&["stein", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for r in v["result"]["records"].as_array().unwrap() {
        assert!(r["target"].as_f64().unwrap().abs() < 1e-12);
        assert!(r["achievable_exponent"].as_f64().unwrap() < 0.06);
    }
}

#[test]
fn budget_exit_code() {
    let o = eja(&["stein", "--algebra", "spin:3", "--n", "1..6", "--budget", "1000"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn entropy_bits_and_infinities() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("e.toml");
    std::fs::write(
        &cfg,
        "algebra = \"classical:2\"\n[states]\nrho = [0.5, 0.5]\nsigma = [1.0, 0.0]\n\
         [entropy]\npairs = [[\"rho\", \"sigma\"], [\"sigma\", \"rho\"]]\n",
    )
    .unwrap();
    let o = eja(&["entropy", "--config", cfg.to_str().unwrap(), "--bits", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("rho|sigma,D,,+inf"));
    // D(σ‖ρ) = log 2 = 1 bit.
    assert!(text.contains("sigma|rho,D,,1\n"));
}

#[test]
fn pinch_demo_residual() {
    let cfg = configs().join("spin.toml");
    let o = eja(&["pinch-demo", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"]["representation_residual"].as_f64().unwrap() < 1e-8);
}

#[test]
fn config_errors_are_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "algebra = \"spin:2\"\nunknown_key = 1\n").unwrap();
    assert_eq!(code(&eja(&["axioms", "--config", cfg.to_str().unwrap()])), 2);
    assert_eq!(code(&eja(&["stein", "--algebra", "spin:2", "--epsilon", "1.5"])), 2);
    assert_eq!(code(&eja(&["axioms"])), 2);
}
