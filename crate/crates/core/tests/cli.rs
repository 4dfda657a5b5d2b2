use std::process::Command;

use flowpoly::cli::run;

fn data(name: &str) -> String {
    format!("{}/data/{name}.graph", env!("CARGO_MANIFEST_DIR"))
}

fn go(args: &[&str]) -> flowpoly::cli::Outcome {
    run(std::iter::once("flowpoly").chain(args.iter().copied()))
}

#[test]
fn kpf_prints_the_count() {
    let o = go(&["kpf", &data("signed_loop"), "--netflow", "1,3,-2"]);
    assert_eq!((o.status, o.stdout.as_str()), (0, "3\n"));
    let o = go(&["kpf", &data("signed_loop"), "--netflow", "1,3,-2", "--enumerate", "2"]);
    assert_eq!(o.stdout.lines().count(), 3);
    assert!(o.stderr.contains("truncated"));
}

#[test]
fn examples_from_the_docs() {
    assert_eq!(go(&["cry", "--family", "D", "--n", "4", "--what", "volume"]).stdout, "32\n");
    assert_eq!(go(&["morris", "--m", "3", "--a", "1", "--b", "1", "--two-c", "1", "--closed"]).stdout, "10\n");
    assert_eq!(go(&["morris", "--m", "2", "--a", "1", "--b", "2", "--two-c", "1", "--two-d", "1"]).stdout, "32\n");
    let o = go(&["dyn-kpf", &data("triangle_signed"), "--netflow", "2,1,1", "--decompose"]);
    assert!(o.stdout.ends_with("3+8+6 = 17\n"), "{}", o.stdout);
}

#[test]
fn json_schema() {
    let o = go(&["volume", &data("four_vertex_signed"), "--netflow", "2,0,0,0", "--method", "all", "--json"]);
    assert_eq!(o.status, 0);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    for key in ["command", "input", "result", "diagnostics"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "volume");
    assert_eq!(v["result"]["volume"], "5");
    assert_eq!(v["result"]["reports"].as_array().unwrap().len(), 3);
}

#[test]
fn rational_output() {
    let o = go(&["vertices", &data("two_edge"), "--netflow", "1,0"]);
    assert_eq!(o.stdout, "1\n1/2,1/2\n");
    let o = go(&["ehrhart", &data("two_edge"), "--netflow", "2,0", "--t", "3"]);
    assert_eq!(o.stdout, "1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(go(&["kpf", &data("signed_loop"), "--netflow", "1,3"]).status, 1);
    assert_eq!(go(&["kpf", &data("signed_loop"), "--netflow", "1,x,3"]).status, 2);
    assert_eq!(go(&["kpf", "/nonexistent.graph", "--netflow", "1"]).status, 2);
    assert_eq!(go(&["frobnicate"]).status, 2);
    assert_eq!(go(&["cry", "--family", "E", "--n", "3"]).status, 2);
    assert_eq!(go(&["--help"]).status, 0);
    let o = go(&["volume", &data("signed_loop"), "--netflow", "2,0,0", "--method", "dyn"]);
    assert_eq!(o.status, 1);
    assert!(o.stderr.starts_with("error[unsupported-loop]"), "{}", o.stderr);
    let o = go(&["morris", "--m", "3", "--a", "2", "--b", "0", "--two-c", "1", "--closed", "--json"]);
    assert_eq!(o.status, 1);
    assert!(o.stdout.contains("\"pole\""));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("flowpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.graph");
    std::fs::write(&bad, "vertices 3\nedge 1 2 -\nedge 2 1 -\n").unwrap();
    let o = go(&["kpf", bad.to_str().unwrap(), "--netflow", "1,0,-1"]);
    assert_eq!(o.status, 1);
    assert!(o.stderr.contains("line 3"), "{}", o.stderr);
    std::fs::write(&bad, "vertices 2\nedge 1 1 -\n").unwrap();
    assert_eq!(go(&["kpf", bad.to_str().unwrap(), "--netflow", "0,0"]).status, 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn subdivide_and_dim() {
    let o = go(&["subdivide", &data("four_vertex_signed"), "--netflow", "2,0,0,0", "--count-only"]);
    assert_eq!(o.stdout, "5\n");
    let seeded = go(&["subdivide", &data("four_vertex_signed"), "--netflow", "2,0,0,0", "--seed-orders", "9"]);
    assert_eq!(seeded.stdout.lines().next(), Some("5"));
    assert_eq!(seeded.stdout.lines().count(), 6);
    assert_eq!(go(&["dim", &data("complete_a5"), "--netflow", "1,0,0,0,-1"]).stdout, "6\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["subdivide", &data("signed_chain"), "--netflow", "2,0,0,0", "--json"];
    assert_eq!(go(&args), go(&args));
    let args = ["report", "--n-max", "3"];
    assert_eq!(go(&args), go(&args));
}

#[test]
fn report_writes_rows() {
    let dir = std::env::temp_dir().join(format!("flowpoly-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let o = go(&["report", "--n-max", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status, 0);
    let rows: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = rows.as_array().unwrap();
    assert!(!rows.is_empty());
    for key in ["family", "n", "quantity", "method", "value", "conjectured", "match"] {
        assert!(rows[0].get(key).is_some(), "missing {key}");
    }
    assert!(o.stdout.contains("finding: CRYC ratio"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn binary_forwards_status() {
    let bin = env!("CARGO_BIN_EXE_flowpoly");
    let out = Command::new(bin).args(["kpf", &data("signed_loop"), "--netflow", "1,3,-2"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "3\n");
    let out = Command::new(bin).args(["kpf"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
