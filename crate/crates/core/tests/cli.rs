use std::process::{Command, Output};

fn gc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gc"))
        .args(args)
        .env_remove("GC_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let ok = gc(&["--no-cache", "dim", "-k", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "{\"dimension\":1,\"k\":2}\n");

    let usage = gc(&["dim", "-k", "2", "--unknown-flag"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(usage.stdout.is_empty());
    assert!(!usage.stderr.is_empty());

    let domain = gc(&["--no-cache", "--max-k", "3", "dim", "-k", "4"]);
    assert_eq!(domain.status.code(), Some(1));
}

#[test]
fn reduce_and_surgery_agree_on_k4() {
    let dir = tempfile::tempdir().unwrap();
    let theta = dir.path().join("theta.json");
    let k4 = dir.path().join("k4.json");
    std::fs::write(&theta, r#"{"vertices":2,"edges":[[0,1],[0,1],[0,1]]}"#).unwrap();
    std::fs::write(&k4, r#"{"vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#).unwrap();
    assert_eq!(stdout(&gc(&["reduce", theta.to_str().unwrap()])), "{\"class\":\"zero\"}\n");
    let reduced: serde_json::Value = serde_json::from_slice(&gc(&["reduce", k4.to_str().unwrap()]).stdout).unwrap();
    let report: serde_json::Value =
        serde_json::from_slice(&gc(&["--no-cache", "surgery", k4.to_str().unwrap()]).stdout).unwrap();
    let key = reduced["class"].as_str().unwrap();
    let sign = reduced["sign"].as_i64().unwrap();
    assert_eq!(report["result"][key], serde_json::json!(if sign > 0 { "1/1" } else { "-1/1" }));
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().to_str().unwrap();
    assert_eq!(gc(&["--cache", c, "cache", "warm", "-k", "2"]).status.code(), Some(0));
    let status: serde_json::Value = serde_json::from_slice(&gc(&["--cache", c, "cache", "status"]).stdout).unwrap();
    assert!(status.as_array().unwrap().iter().any(|e| e["k"] == 2));
    assert_eq!(stdout(&gc(&["--cache", c, "cache", "clear", "--stale"])), "{\"removed\":0}\n");
    let removed: serde_json::Value = serde_json::from_slice(&gc(&["--cache", c, "cache", "clear"]).stdout).unwrap();
    assert!(removed["removed"].as_u64().unwrap() > 0);
}

#[test]
fn table_format_and_selftest() {
    let t = stdout(&gc(&["--format", "table", "surviving", "II"]));
    assert!(t.starts_with("count: 11\n"));
    assert!(t.contains("  - (1,3,3|)\n"));
    let s = gc(&["--no-cache", "selftest"]);
    assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stderr));
}

#[test]
fn propagator_command() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("c.json");
    std::fs::write(&f, r#"{"ranks":[1,1,0,0,0],"boundaries":{"1":[[2]]}}"#).unwrap();
    let out = gc(&["morse-propagator", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["g"]["0"], serde_json::json!([["1/2"]]));
    std::fs::write(&f, r#"{"ranks":[1,1,1,0,0],"boundaries":{"1":[[1]]}}"#).unwrap();
    assert_eq!(gc(&["morse-propagator", f.to_str().unwrap()]).status.code(), Some(1));
}
