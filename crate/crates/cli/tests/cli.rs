use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn chainkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chainkit"))
        .args(args)
        .env_remove("CHAINKIT_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_path_graph(dir: &Path, n: usize) -> String {
    let p = dir.join("path.csv");
    let body: String = (0..n - 1).map(|i| format!("{i},{},1\n", i + 1)).collect();
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn write_snowflake_space(dir: &Path) -> String {
    let p = dir.join("snow.json");
    let coords: Vec<String> = (0..=10).map(|i| format!("[{}]", i as f64 / 10.0)).collect();
    let body = format!(
        r#"{{"points": 11, "metric": {{"type": "snowflake", "coords": [{}], "beta": 3}}, "measure": [{}]}}"#,
        coords.join(","),
        ["1"; 11].join(",")
    );
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn scale_phi_prints_quarter() {
    let o = chainkit(&["scale", "phi", "--psi", "power:2", "--s", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0.25");
}

#[test]
fn verify_all_snowflake_exits_zero() {
    let o = chainkit(&["verify-all", "--suite", "snowflake"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] snowflake"));
}

#[test]
fn missing_space_file_is_input_error() {
    let o = chainkit(&["chain", "--space", "missing.json", "--eps", "0.22"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing.json"));
    assert!(stderr(&o).contains("No such file"));
}

#[test]
fn unknown_flag_names_offending_token() {
    let o = chainkit(&["chain", "--frobnicate", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--frobnicate"));
}

#[test]
fn unknown_suite_is_input_error() {
    let o = chainkit(&["verify-all", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(chainkit(&["--help"]).status.code(), Some(0));
    assert_eq!(chainkit(&["--version"]).status.code(), Some(0));
}

#[test]
fn failed_check_exits_two() {
    let o = chainkit(&["scale", "walkdim", "--psi", "power:1.5", "--diam", "1000", "--window", "1,10"]);
    assert_eq!(o.status.code(), Some(2));
    let o = chainkit(&["scale", "walkdim", "--psi", "power:2", "--diam", "1000", "--window", "1,10"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bad_thread_env_is_input_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_chainkit"))
        .args(["scale", "psi", "--psi", "power:2", "--r", "3"])
        .env("CHAINKIT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn chain_report_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_snowflake_space(dir.path());
    let mut reports = Vec::new();
    let out = dir.path().join("report.json");
    for threads in ["1", "4"] {
        let o = chainkit(&[
            "chain", "--space", &space, "--eps", "0.22,0.3", "--pairs", "all", "--psi", "power:3",
            "--threads", threads, "--report", out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        reports.push(fs::read(&out).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    let v: serde_json::Value = serde_json::from_slice(&reports[0]).unwrap();
    assert_eq!(v["result"]["sandwich_violations"], 0);
    assert!(v["config"]["command"]["chain"]["eps"].is_array());
}

#[test]
fn chain_pair_reports_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let space = write_snowflake_space(dir.path());
    let o = chainkit(&["chain", "--space", &space, "--eps", "0.22", "--pairs", "0,10", "--json-only"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let a = &v["result"]["analyses"][0];
    assert_eq!(a["n_eps"], 10);
    assert_eq!(a["witness_metric"].as_array().unwrap().len(), 11);
    let d_eps = a["d_eps"].as_f64().unwrap();
    assert!((d_eps - 10.0 * 0.1f64.powf(2.0 / 3.0)).abs() < 1e-12);
}

#[test]
fn replay_and_capacity_on_path() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_path_graph(dir.path(), 101);
    let o = chainkit(&[
        "replay", "--graph", &graph, "--psi", "power:2", "--x", "0", "--y", "100", "--eps", "6", "--json-only",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["replay"]["c3"].as_f64(), Some(18.0));
    assert_eq!(v["result"]["replay"]["n_eps"], 20);

    let o = chainkit(&["dirichlet", "cap", "--graph", &graph, "--A", "0", "--B", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "capacity 0.01");
}

#[test]
fn net_certificate_and_partition() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_path_graph(dir.path(), 21);
    let o = chainkit(&[
        "net", "--graph", &graph, "--eps", "2", "--include", "0,10", "--certify", "--psi", "power:2", "--json-only",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["net"]["members"].as_array().unwrap().len(), 11);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn gasket_then_heat_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("g2.csv");
    let verts = dir.path().join("v2.csv");
    let kernels = dir.path().join("k.csv");
    let o = chainkit(&[
        "gasket", "--level", "2", "--out", edges.to_str().unwrap(), "--vertices-out", verts.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("15 vertices, 27 edges"));
    let o = chainkit(&[
        "heat", "--graph", edges.to_str().unwrap(), "--vertices", verts.to_str().unwrap(),
        "--times", "0.5,2", "--out", kernels.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = fs::read_to_string(&kernels).unwrap().lines().count();
    assert_eq!(rows, 1 + 2 * 15 * 15);
}
