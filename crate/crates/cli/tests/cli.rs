use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisenberg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

#[test]
fn exact_theorem_report() {
    let out = run(&["verify-theorem", "--jet", "0,0,1", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "verify-theorem");
    assert_eq!(v["results"]["t6_coefficient"], "-1/180");
    assert_eq!(v["results"]["expected"], "-1/180");
    assert!(v["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a["pass"] == true));
    for key in ["command", "parameters", "results", "assertions"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn distance_on_the_axis() {
    let v = json(&run(&["distance", "--point", "0,0,1"]));
    let d = v["results"]["distance"].as_f64().unwrap();
    assert!((d - 2.0 * std::f64::consts::PI.sqrt()).abs() < 1e-10);
}

#[test]
fn integrate_writes_csv() {
    let out = run(&[
        "integrate",
        "--jet",
        "0,0,1",
        "--t-end",
        "1",
        "--step",
        "1e-3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,x,y,z,theta\n"));
    assert!(!text.contains('\r'));
    assert_eq!(text.lines().count(), 1002);
    let last: Vec<f64> = text
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(last[0], 1.0);
    assert!((last[4] - 1.0).abs() < 1e-15);
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(run(&["distance", "--point", "1,2"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify-theorem", "--jet", "0.5,1", "--mode", "exact"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["integrate", "--jet", "0,1", "--step", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["spiral", "--jet", "0.3"]).status.code(), Some(2));
    assert_eq!(
        run(&["distance", "--point", "1,2,3", "--format", "csv", "--mode", "exact"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["isometry", "--jet", "0,1", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn failed_assertion_exits_1_with_report() {
    // a window far outside the small-time regime misses the coefficient
    let out = run(&[
        "verify-theorem",
        "--jet",
        "0,0,1",
        "--mode",
        "numeric",
        "--window",
        "1,3",
        "--samples",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let failed: Vec<&Value> = v["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["pass"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "analysis.t6_fit");
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("analysis.t6_fit"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = run(&[
            "isometry",
            "--jet",
            "0,1,0.5",
            "--seed",
            "9",
            "--step",
            "1e-3",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = dir.path().join("c.json");
    run(&[
        "isometry",
        "--jet",
        "0,1,0.5",
        "--seed",
        "10",
        "--step",
        "1e-3",
        "--out",
        c.to_str().unwrap(),
    ]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn other_commands_pass() {
    for args in [
        vec![
            "geodesic", "--omega", "2", "--theta0", "0.3", "--t-end", "3", "--format", "json",
        ],
        vec!["spiral", "--jet", "0,1,1"],
        vec!["spiral", "--jet", "0,-2"],
        vec!["series-dump", "--order", "7", "--jet", "0,1,1/2"],
        vec!["verify-riemannian", "--jet", "0,2", "--eps", "0.1"],
    ] {
        let out = run(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v = json(&out);
        assert!(v["assertions"]
            .as_array()
            .unwrap()
            .iter()
            .all(|a| a["pass"] == true));
    }
    let csv = run(&["geodesic", "--omega", "-6", "--t-end", "1"]);
    assert!(String::from_utf8(csv.stdout)
        .unwrap()
        .starts_with("t,x,y,z,theta\n"));
}

#[test]
fn series_dump_csv() {
    let out = run(&["series-dump", "--order", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "power,psi,phi,inv_sinc2_phi");
    assert_eq!(lines[4], "3,1/45,-144/5,0/1");
}
