//! End-to-end runs of the binary on the shipped configurations.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(cmd: &str, config: &Path, out: &Path, seed: Option<u64>) -> i32 {
    let mut c = Command::new(env!("CARGO_BIN_EXE_nahmlab"));
    c.arg(cmd).arg("--config").arg(config).arg("--out-dir").arg(out);
    if let Some(s) = seed {
        c.arg("--seed").arg(s.to_string());
    }
    c.status().expect("binary runs").code().expect("exit code")
}

fn run_shipped(name: &str) -> (i32, TempDir) {
    let dir = TempDir::new().unwrap();
    let cmd = name.split('_').next().unwrap();
    let code = run(cmd, &config(&format!("{name}.json")), dir.path(), None);
    (code, dir)
}

fn json(dir: &TempDir, file: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.path().join(file)).unwrap()).unwrap()
}

fn column_max(csv: &str, skip: usize) -> f64 {
    csv.lines()
        .skip(1)
        .flat_map(|l| l.split(',').skip(skip).map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .fold(0.0, f64::max)
}

#[test]
fn shipped_configs_exit_as_documented() {
    let expected = [
        ("evolve_nil", 0),
        ("evolve_commuting", 0),
        ("evolve_baby", 0),
        ("evolve_blowup", 3),
        ("spectral_coth", 0),
        ("spectral_fixed_curve", 0),
        ("spectral_negative_control", 1),
        ("halfline_coth", 0),
        ("halfline_nil", 0),
        ("halfline_no_budget", 4),
        ("vergne_demo", 0),
        ("vergne_single_point", 0),
        ("vergne_empty", 2),
        ("check_default", 0),
        ("check_convergence", 0),
        ("check_injected", 1),
    ];
    for (name, code) in expected {
        assert_eq!(run_shipped(name).0, code, "{name}");
    }
}

#[test]
fn evolve_writes_residuals() {
    let (code, dir) = run_shipped("evolve_nil");
    assert_eq!(code, 0);
    let residual = std::fs::read_to_string(dir.path().join("residual.csv")).unwrap();
    assert!(residual.starts_with("s,mu1,mu2,mu3\n"));
    assert_eq!(residual.lines().count(), 1002);
    assert!(column_max(&residual, 1) <= 1e-5);
    let solution = json(&dir, "solution.json");
    assert_eq!(solution["T1"].as_array().unwrap().len(), 1001);

    let (code, dir) = run_shipped("evolve_commuting");
    assert_eq!(code, 0);
    let residual = std::fs::read_to_string(dir.path().join("residual.csv")).unwrap();
    assert_eq!(column_max(&residual, 1), 0.0);
}

#[test]
fn fixed_curve_of_a_diagonal_constant() {
    // τ1 = 3·e3 gives η² − 9ζ².
    let (code, dir) = run_shipped("spectral_fixed_curve");
    assert_eq!(code, 0);
    let s = json(&dir, "spectral.json");
    let a2 = s["a"][1].as_array().unwrap();
    for (m, c) in a2.iter().enumerate() {
        let want = if m == 2 { -9.0 } else { 0.0 };
        assert!((c[0].as_f64().unwrap() - want).abs() < 1e-12);
        assert!(c[1].as_f64().unwrap().abs() < 1e-12);
    }
    let report = json(&dir, "report.json");
    let points = &report["intersections"][0]["points"];
    assert_eq!(points[0], "infinity");
    assert_eq!(points[1][0].as_f64().unwrap(), 0.0);
}

#[test]
fn halfline_reports_certified_orbits() {
    for name in ["halfline_coth", "halfline_nil"] {
        let (code, dir) = run_shipped(name);
        assert_eq!(code, 0, "{name}");
        let r = json(&dir, "orbit_report.json");
        assert_eq!(r["orbit"]["certified"], true);
        assert!(r["terminal_deviation"].as_f64().unwrap() <= 1e-6);
        assert!(dir.path().join("history.csv").exists());
    }
    let (code, dir) = run_shipped("halfline_no_budget");
    assert_eq!(code, 4);
    let history = std::fs::read_to_string(dir.path().join("history.csv")).unwrap();
    assert_eq!(history.lines().count(), 2);
}

#[test]
fn single_vergne_point_is_the_unit_plus_form() {
    let (code, dir) = run_shipped("vergne_single_point");
    assert_eq!(code, 0);
    let v = json(&dir, "vergne.json");
    let sample = &v["samples"][0];
    assert_eq!(sample["orbit"], "plus");
    assert_eq!(sample["form"], "plus");
    assert_eq!(sample["b"][0].as_f64().unwrap(), 1.0);
    assert_eq!(sample["b"][1].as_f64().unwrap(), 0.0);
}

#[test]
fn vergne_demo_has_no_crossovers() {
    let (code, dir) = run_shipped("vergne_demo");
    assert_eq!(code, 0);
    let v = json(&dir, "vergne.json");
    assert_eq!(v["misclassified"], 0);
    assert_eq!(v["samples"].as_array().unwrap().len(), 1003);
    // (1, 1, 0.5, 0) is neither real orbit.
    assert_eq!(v["samples"][1002]["orbit"], "not_real");
}

#[test]
fn check_summary_lists_every_check() {
    let (code, dir) = run_shipped("check_convergence");
    assert_eq!(code, 0);
    let s = json(&dir, "summary.json");
    let checks = s["checks"].as_array().unwrap();
    assert!(checks.len() >= 15);
    for c in checks {
        assert_eq!(c["pass"], true, "{}", c["name"]);
        if let Some(order) = c.get("order") {
            let observed = c["observed_order"].as_f64().unwrap();
            assert!((observed - order.as_f64().unwrap()).abs() <= 1.0);
        }
    }
    let (code, dir) = run_shipped("check_injected");
    assert_eq!(code, 1);
    let s = json(&dir, "summary.json");
    let ham = s["checks"].as_array().unwrap().iter().find(|c| c["name"] == "hamiltonian").unwrap();
    assert_eq!(ham["pass"], false);
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn identical_runs_produce_identical_bytes() {
    for (cmd, name) in [("evolve", "evolve_baby"), ("vergne", "vergne_demo"), ("check", "check_convergence")] {
        let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
        assert_eq!(run(cmd, &config(&format!("{name}.json")), a.path(), Some(5)), 0);
        assert_eq!(run(cmd, &config(&format!("{name}.json")), b.path(), Some(5)), 0);
        let (x, y) = (dir_bytes(a.path()), dir_bytes(b.path()));
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn the_seed_flag_changes_random_inputs() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let cfg = config("evolve_baby.json");
    assert_eq!(run("evolve", &cfg, a.path(), Some(1)), 0);
    assert_eq!(run("evolve", &cfg, b.path(), Some(2)), 0);
    assert_ne!(dir_bytes(a.path()), dir_bytes(b.path()));
}

#[test]
fn bad_configs_exit_with_code_two() {
    let dir = TempDir::new().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let out = dir.path().join("out");
    assert_eq!(run("check", &write("bad.json", "{ not json"), &out, None), 2);
    assert_eq!(run("check", &write("typo.json", r#"{"sampels": 3}"#), &out, None), 2);
    assert_eq!(run("check", &dir.path().join("missing.json"), &out, None), 2);
    let zero_bound = r#"{"algebra": {"family": "su", "dim": 2}, "grid": {"s0": 0, "s1": 1, "n": 10},
        "flow": "nahm", "init": {"kind": "nil", "offset": 1.0}, "residual_bound": 0.0}"#;
    assert_eq!(run("evolve", &write("zero.json", zero_bound), &out, None), 2);
    let not_su = r#"{"algebra": {"family": "su", "dim": 2}, "grid": {"s0": 0, "s1": 1, "n": 10},
        "flow": "nahm", "init": {"kind": "matrices",
        "t1": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]],
        "t2": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]],
        "t3": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}, "residual_bound": 1.0}"#;
    assert_eq!(run("evolve", &write("hermitian.json", not_su), &out, None), 2);
}
