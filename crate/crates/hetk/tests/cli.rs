use std::process::{Command, Output};

fn hetk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hetk"))
        .args(args)
        .env_remove("HETK_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn gen_van_der_corput() {
    let o = hetk(&["gen", "vdc", "--base", "2", "--n", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("#bases 2\n"));
    assert_eq!(
        body(&text),
        ["0", "0.1", "0.01", "0.11", "0.001", "0.101", "0.011", "0.111"]
    );
}

#[test]
fn gen_halton_and_hybrid() {
    let o = hetk(&["gen", "halton", "--bases", "2,3", "--n", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines = body(&text);
    assert_eq!(lines.len(), 4);
    assert!(lines.iter().all(|l| l.split(' ').count() == 2));
    assert_eq!(lines[1], "0.1 0.1");
    assert_eq!(lines[3], "0.11 0.01");

    let o = hetk(&[
        "gen", "hybrid", "--walsh", "vdc:2", "--badic", "halton:3", "--n", "4",
    ]);
    assert!(o.status.success());
    assert_eq!(body(&stdout(&o)), body(&text));
}

#[test]
fn gen_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pts.txt");
    let p = path.to_str().unwrap();
    let o = hetk(&[
        "gen", "digital", "--base", "3", "--dims", "2", "--matrix", "random", "--seed", "4", "--m",
        "4", "--n", "30", "--out", p,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let written = std::fs::read_to_string(&path).unwrap();
    let parsed = hetk::pointfile::parse_str(&written).unwrap();
    assert_eq!(hetk::pointfile::write_string(&parsed).unwrap(), written);

    let o = hetk(&[
        "discrepancy",
        "--points",
        p,
        "--variant",
        "star",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let value = v["rows"][0]["value"].as_f64().unwrap();
    assert!(value > 0.0 && value <= 1.0);
}

#[test]
fn bound_van_der_corput_row() {
    let o = hetk(&[
        "bound",
        "--generator",
        "vdc:2",
        "--n",
        "8",
        "--g",
        "3",
        "--variant",
        "star",
        "--oracle",
        "--no-timing",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,g,variant,epsilon,weighted_sum,bound_total,max_abs_sum,exact_discrepancy,margin,runtime_ms"
    );
    assert_eq!(
        lines.next().unwrap(),
        "8,3,star,0.125,0.0,0.125,0.0,0.125,0.0,0.0"
    );
}

#[test]
fn bound_per_k_table() {
    let o = hetk(&[
        "bound",
        "--generator",
        "vdc:2",
        "--n",
        "8",
        "--g",
        "2",
        "--variant",
        "star",
        "--per-k",
        "--no-timing",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let tables: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(tables.len(), 2);
    let per_k: Vec<&str> = tables[1].lines().collect();
    assert_eq!(per_k[0], "g,variant,k,weight,abs_sum");
    assert_eq!(per_k.len(), 1 + 3);
}

#[test]
fn zero_resolution_is_a_usage_error() {
    let o = hetk(&["bound", "--generator", "vdc:2", "--n", "8", "--g", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("resolution components must be ≥ 1"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(hetk(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(hetk(&["verify", "nonsense"]).status.code(), Some(1));
    assert_eq!(hetk(&["--help"]).status.code(), Some(0));
    assert_eq!(
        hetk(&["bound", "--points", "/nonexistent/x", "--g", "1"])
            .status
            .code(),
        Some(1)
    );
    let o = hetk(&["verify", "weights"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("PASS weight sums"), "{text}");
    assert!(text.contains("0 failed"));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hetk"))
        .args([
            "bound",
            "--generator",
            "halton:2,3",
            "--n",
            "8",
            "--g",
            "4,3",
        ])
        .env("HETK_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_hetk"))
        .args([
            "bound",
            "--generator",
            "halton:2,3",
            "--n",
            "8",
            "--g",
            "4,3",
        ])
        .env("HETK_BUDGET", "1000")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "bound",
        "--generator",
        "digital:2:random:2:9:6",
        "--tags",
        "b,w",
        "--n",
        "40",
        "--g",
        "3",
        "--g",
        "2,4",
        "--variant",
        "both",
        "--oracle",
        "--per-k",
        "--format",
        "json",
        "--seed",
        "9",
        "--no-timing",
    ];
    let a = hetk(&args);
    let b = hetk(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    for row in v["rows"].as_array().unwrap() {
        assert!(row["margin"].as_f64().unwrap() >= -1e-9);
    }
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.json");
    std::fs::write(
        &path,
        r#"{"schema": 1, "generator": "halton:2,3", "n": 12, "g": [[2, 2]], "variant": "star", "oracle": true}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = hetk(&["bound", "--config", p, "--no-timing"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[0], "12");
    let margin: f64 = row[8].parse().unwrap();
    assert!(margin >= 0.0);

    let o = hetk(&["bound", "--config", p, "--n", "5", "--no-timing"]);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("5,"));

    std::fs::write(&path, r#"{"schema": 2, "generator": "vdc:2"}"#).unwrap();
    assert_eq!(hetk(&["bound", "--config", p]).status.code(), Some(1));
}
