use std::path::{Path, PathBuf};

use serde_json::Value;
use tempfile::TempDir;
use wegner_cli::{run, EXIT_HYPOTHESIS, EXIT_PASS, EXIT_USAGE, EXIT_VIOLATION};

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn lab(args: &[&str], out: &Path) -> i32 {
    let mut argv = vec!["wegner-lab".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    argv.push("--out-dir".into());
    argv.push(out.to_string_lossy().into_owned());
    run(argv)
}

fn report(out: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap()
}

fn csv_rows(out: &Path) -> (Vec<String>, usize) {
    let mut reader = csv::Reader::from_path(out.join("data.csv")).unwrap();
    let header = reader.headers().unwrap().iter().map(str::to_owned).collect();
    (header, reader.records().count())
}

#[test]
fn symbol_check_reports_norm() {
    let dir = TempDir::new().unwrap();
    assert_eq!(lab(&["symbol-check", "--config", &config("sign_changing_1d.toml")], dir.path()), EXIT_PASS);
    let r = report(dir.path());
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "symbol-check");
    assert!((r["report"]["column_sum_norm"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((r["report"]["wegner_constant"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert_eq!(r["report"]["certificate"]["nonvanishing"], true);
    let (header, rows) = csv_rows(dir.path());
    assert_eq!(header, ["k1", "beta"]);
    assert!(rows > 20);
}

#[test]
fn vanishing_symbol_is_a_hypothesis_failure() {
    let dir = TempDir::new().unwrap();
    let code = lab(&["symbol-check", "--config", &config("vanishing_symbol.toml")], dir.path());
    assert_eq!(code, EXIT_HYPOTHESIS);
    let code = lab(&["circulant", "--config", &config("vanishing_symbol.toml")], dir.path());
    assert_eq!(code, EXIT_HYPOTHESIS);
}

#[test]
fn circulant_exports_matrices() {
    let dir = TempDir::new().unwrap();
    let code = lab(&["circulant", "--config", &config("sign_changing_2d.toml"), "--l", "3", "--export"], dir.path());
    assert_eq!(code, EXIT_PASS);
    let r = report(dir.path());
    assert_eq!(r["report"]["dimension"], 81);
    assert_eq!(r["report"]["rectangle_condition"], true);
    let a = std::fs::read_to_string(dir.path().join("A.txt")).unwrap();
    assert_eq!(a.lines().count(), 81);
    assert_eq!(a.lines().next().unwrap().split_whitespace().count(), 81);
    let (header, rows) = csv_rows(dir.path());
    assert_eq!(header, ["m1", "m2", "a", "b"]);
    assert_eq!(rows, 81);
}

#[test]
fn wegner_one_site() {
    let dir = TempDir::new().unwrap();
    let args = ["wegner", "--config", &config("one_site.toml"), "--e1", "0.2", "--e2", "0.5", "--realizations", "4000", "--seed", "3"];
    assert_eq!(lab(&args, dir.path()), EXIT_PASS);
    let r = report(dir.path());
    assert_eq!(r["seed"], 3);
    assert_eq!(r["report"]["volume"], 1);
    assert!((r["report"]["c_w"].as_f64().unwrap() - 2.0).abs() < 1e-12);
    let mean = r["report"]["mean_count"].as_f64().unwrap();
    let se = r["report"]["std_error"].as_f64().unwrap();
    assert!((mean - 0.3).abs() <= 3.0 * se);
    assert_eq!(csv_rows(dir.path()), (vec!["realization".to_string(), "count".to_string()], 4000));
}

#[test]
fn reports_are_reproducible() {
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    let args = ["wegner", "--config", &config("sign_changing_1d.toml"), "--e1", "-0.5", "--e2", "0.5", "--realizations", "200"];
    assert_eq!(lab(&args, a.path()), EXIT_PASS);
    assert_eq!(lab(&args, b.path()), EXIT_PASS);
    for file in ["report.json", "data.csv"] {
        assert_eq!(
            std::fs::read(a.path().join(file)).unwrap(),
            std::fs::read(b.path().join(file)).unwrap()
        );
    }
    // the seed comes from the model file
    assert_eq!(report(a.path())["seed"], 7);
}

#[test]
fn ids_curve() {
    let dir = TempDir::new().unwrap();
    let args = [
        "ids", "--config", &config("sign_changing_1d.toml"), "--emin", "-3", "--emax", "3.5", "--points", "12",
        "--realizations", "300",
    ];
    assert_eq!(lab(&args, dir.path()), EXIT_PASS);
    let r = report(dir.path());
    assert_eq!(r["report"]["in_unit_interval"], true);
    assert_eq!(r["report"]["lipschitz"].as_array().unwrap().len(), 11);
    assert_eq!(csv_rows(dir.path()).1, 12);
}

#[test]
fn avg_check_table() {
    let dir = TempDir::new().unwrap();
    let args = ["avg-check", "--config", &config("sign_changing_1d.toml"), "--energy", "0.3", "--sizes", "2,4,8", "--realizations", "200"];
    let code = lab(&args, dir.path());
    assert!(code == EXIT_PASS || code == EXIT_VIOLATION);
    let r = report(dir.path());
    assert_eq!(r["report"]["rows"].as_array().unwrap().len(), 3);
    assert_eq!(r["pass"] == true, code == EXIT_PASS);
    assert_eq!(csv_rows(dir.path()), (vec!["l".into(), "volume".into(), "mean".into(), "variance".into()], 3));
}

#[test]
fn averaging_fixture() {
    let dir = TempDir::new().unwrap();
    assert_eq!(lab(&["averaging", "--draws", "5", "--seed", "2"], dir.path()), EXIT_PASS);
    let r = report(dir.path());
    let outcomes = r["report"]["outcomes"].as_array().unwrap();
    assert_eq!(outcomes.len(), 6);
    assert!(outcomes[0]["lhs"].as_f64().unwrap() <= 0.05 + 1e-12);
    assert_eq!(r["config_digest"], Value::Null);
}

#[test]
fn usage_errors() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(["wegner-lab"]), EXIT_USAGE);
    assert_eq!(run(["wegner-lab", "bogus"]), EXIT_USAGE);
    assert_eq!(run(["wegner-lab", "--help"]), EXIT_PASS);
    assert_eq!(run(["wegner-lab", "--version"]), EXIT_PASS);
    assert_eq!(lab(&["wegner", "--config", "/nonexistent.toml", "--e1", "0", "--e2", "1"], dir.path()), EXIT_USAGE);
    // empty interval
    let args = ["wegner", "--config", &config("one_site.toml"), "--e1", "0.5", "--e2", "0.2"];
    assert_eq!(lab(&args, dir.path()), EXIT_USAGE);
}

#[test]
fn bad_config_is_rejected() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "dimension = 1\nl = 2\nkappa = 1.0\nalpha = [\"0 1\"]\nv = [\"0 1\"]\ncolour = 3\n").unwrap();
    let code = lab(&["symbol-check", "--config", path.to_str().unwrap()], dir.path());
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn binary_exit_code() {
    let dir = TempDir::new().unwrap();
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_wegner-lab"))
        .args(["symbol-check", "--config", &config("vanishing_symbol.toml"), "--out-dir"])
        .arg(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_HYPOTHESIS));
}
