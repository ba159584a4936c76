use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_steinitz"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_out(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const SQRT2_SQUARE: &str = r#"{"dim": 2, "rep": "V", "data": [
  [1.4142135623730951, 1.4142135623730951], [-1.4142135623730951, 1.4142135623730951],
  [-1.4142135623730951, -1.4142135623730951], [1.4142135623730951, -1.4142135623730951]]}"#;

const SQUARE: &str = r#"{"dim": 2, "rep": "V", "data": [[1, 1], [-1, 1], [-1, -1], [1, -1]]}"#;

#[test]
fn gen_then_select() {
    let dir = tempfile::tempdir().unwrap();
    let q = dir.path().join("q.json");
    let o = run(&["gen", "--dim", "3", "--facets", "10", "--seed", "7", "--out", q.to_str().unwrap()]);
    assert!(o.status.success());
    let again = run(&["gen", "--dim", "3", "--facets", "10", "--seed", "7"]);
    assert_eq!(fs::read(&q).unwrap(), again.stdout);

    let sel = json_out(&run(&["select", q.to_str().unwrap()]));
    let idx = sel["indices"].as_array().unwrap();
    assert!(!idx.is_empty() && idx.len() <= 6);
    assert!(sel["certified_radius"].as_f64().unwrap() >= 1.0 / 45.0 - 1e-9);
    assert!(sel["trail"]["sparse"]["min_margin"].as_f64().unwrap() >= -1e-9);

    let keys: Vec<&String> = sel.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["indices", "certified_radius", "bound", "trail"]);
}

#[test]
fn select_scaled_square() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "sq.json", SQRT2_SQUARE);
    for extra in [&[][..], &["--exact"][..]] {
        let mut args = vec!["select", p.as_str()];
        args.extend_from_slice(extra);
        let sel = json_out(&run(&args));
        assert!(sel["certified_radius"].as_f64().unwrap() >= 0.05);
        assert_eq!(sel["bound"].as_f64().unwrap(), 0.05);
    }
}

#[test]
fn certify_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "sq.json", SQUARE);
    let c = json_out(&run(&["certify", &p, "--indices", "0,1,2,3", "--exact"]));
    assert_eq!(c["radius"].as_f64().unwrap(), 1.0);
    assert_eq!(c["radius_sq_exact"], "1");

    let o = run(&["certify", &p, "--indices", "0,1,2", "--require-bound"]);
    assert_eq!(o.status.code(), Some(2));

    let r = json_out(&run(&["oracle", &p, "--k", "3", "--exact"]));
    assert_eq!(r["best_radius"].as_f64().unwrap(), 0.0);
    let r = json_out(&run(&["oracle", &p, "--k", "4"]));
    assert_eq!(r["best_radius"].as_f64().unwrap(), 1.0);
    assert_eq!(r["best_indices"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn witness_on_orthonormal_basis() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "u.json", r#"{"dim": 3, "vectors": [[1,0,0],[0,1,0],[0,0,1]]}"#);
    let w = json_out(&run(&["witness", &p]));
    assert!((w["norm_q"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
    assert!((w["bound_d_over_sqrt_n"].as_f64().unwrap() - 3f64.sqrt()).abs() < 1e-12);
    let w = json_out(&run(&["witness", &p, "--rho", "0.58"]));
    assert_eq!(w["excluded"], true);
    let w = json_out(&run(&["witness", &p, "--rho", "0.57"]));
    assert_eq!(w["excluded"], false);
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"dim": 2, "rep": "V", "data": [[1, 0], [0, true]]}"#);
    let o = run(&["select", &bad]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("data[1][1]"), "{err}");

    let small = write(dir.path(), "small.json", r#"{"dim": 2, "rep": "V", "data": [[0.5,0.5],[-0.5,0.5],[-0.5,-0.5],[0.5,-0.5]]}"#);
    assert_eq!(run(&["select", &small]).status.code(), Some(1));
    assert_eq!(run(&["select", "/nonexistent/q.json"]).status.code(), Some(1));
    assert_eq!(run(&["gen", "--dim", "3", "--facets", "3"]).status.code(), Some(1));
    assert_eq!(run(&["--tolerance=-1", "gen", "--dim", "2"]).status.code(), Some(1));
}

#[test]
fn experiment_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let svg = dir.path().join("p.svg");
    let args = |out: &Path| {
        vec![
            "experiment".to_string(),
            "--dims".into(),
            "2,3".into(),
            "--instances".into(),
            "10".into(),
            "--seed".into(),
            "42".into(),
            "--out".into(),
            out.to_str().unwrap().into(),
        ]
    };
    let mut first = args(&a);
    first.extend(["--svg".to_string(), svg.to_str().unwrap().to_string()]);
    assert!(bin().args(&first).status().unwrap().success());
    assert!(bin().args(args(&b)).status().unwrap().success());
    let csv = fs::read_to_string(&a).unwrap();
    assert_eq!(csv, fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 21);
    assert_eq!(
        lines[0],
        "seed,d,vertex_count,selection_size,certified_radius,oracle_radius,bound,runtime_ms"
    );
    for row in &lines[1..] {
        let cells: Vec<&str> = row.split(',').collect();
        let radius: f64 = cells[4].parse().unwrap();
        let bound: f64 = cells[6].parse().unwrap();
        assert!(radius >= bound - 1e-9);
    }
    let svg = fs::read_to_string(&svg).unwrap();
    assert!(svg.contains("width=\"1000\"") && svg.contains("height=\"700\"") && svg.contains("1/5"));

    let empty = run(&["experiment", "--dims", ""]);
    assert_eq!(
        String::from_utf8(empty.stdout).unwrap(),
        "seed,d,vertex_count,selection_size,certified_radius,oracle_radius,bound,runtime_ms\n"
    );
}

#[test]
fn experiment_with_oracle_as_json() {
    let v = json_out(&run(&[
        "experiment", "--dims", "2..3", "--instances", "2", "--facets", "6", "--oracle", "--format", "json",
    ]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for r in rows {
        let oracle = r["oracle_radius"].as_f64().unwrap();
        assert!(oracle >= r["certified_radius"].as_f64().unwrap() - 1e-9);
    }
}

#[test]
fn cover_mode() {
    let dir = tempfile::tempdir().unwrap();
    // 24 points on a circle of radius 1.2
    let pts: Vec<String> = (0..24)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / 24.0;
            format!("[{}, {}]", 1.2 * t.cos(), 1.2 * t.sin())
        })
        .collect();
    let p = write(
        dir.path(),
        "c.json",
        &format!(r#"{{"dim": 2, "rep": "V", "data": [{}]}}"#, pts.join(",")),
    );
    let v = json_out(&run(&["select", &p, "--eps", "0.1"]));
    assert!(v["indices"].as_array().unwrap().len() <= 4);
    assert!(v["certified_radius"].as_f64().unwrap() >= 0.9 / 20.0);
}
