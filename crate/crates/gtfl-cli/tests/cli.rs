use std::io::Write;
use std::process::{Command, Output, Stdio};

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}.gtfl", env!("CARGO_MANIFEST_DIR"))
}

fn gtfl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gtfl")).args(args).env_remove("GTFL_BUDGET").output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gtfl"))
        .args(args)
        .env_remove("GTFL_BUDGET")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_prints_the_type() {
    let o = gtfl(&["check", &corpus("even_odd")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Bool");
}

#[test]
fn check_reports_parse_and_type_errors() {
    let o = with_stdin(&["check", "--stdin"], "{x = 1,}");
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("1:8"), "{}", stderr(&o));
    let o = with_stdin(&["check", "--stdin"], "1 + true");
    assert_eq!(o.status.code(), Some(2));
    let o = gtfl(&["check", "/nonexistent/file.gtfl"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn run_intro_program_by_backend() {
    let o = gtfl(&["run", "--backend", "gr", "--semantics", "rl", &corpus("intro_records")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    for sem in ["rl", "rl-plus"] {
        let o = gtfl(&["run", "--backend", "brr", "--semantics", sem, &corpus("intro_records")]);
        assert_eq!(o.status.code(), Some(4), "{sem}");
        assert!(stdout(&o).is_empty());
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn run_from_stdin() {
    let o = with_stdin(&["run", "--stdin"], "5 + 3");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "8");
}

#[test]
fn run_exhausts_the_budget() {
    let o = gtfl(&["run", "--budget", "1000", &corpus("loop")]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("1000"));
    let o = Command::new(env!("CARGO_BIN_EXE_gtfl")).args(["run", &corpus("loop")]).env("GTFL_BUDGET", "300").output().unwrap();
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("300"));
}

#[test]
fn run_emits_metrics() {
    let o = gtfl(&["run", "--emit", "metrics-json", &corpus("even_odd")]);
    assert_eq!(o.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(j["schema"], "gtfl-metrics/1");
    assert_eq!(j["outcome"], "value");
    assert_eq!(j["max_pending_ascriptions"], 1);
}

#[test]
fn run_traces_to_stderr() {
    let o = with_stdin(&["run", "--trace", "--stdin"], "(\\(x: Int). x + 1) 2");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
    let steps: Vec<u64> = stderr(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["step"].as_u64().unwrap())
        .collect();
    assert_eq!(steps, (1..=steps.len() as u64).collect::<Vec<_>>());
    assert!(!steps.is_empty());
}

#[test]
fn run_emits_the_elaboration() {
    let o = with_stdin(&["run", "--emit", "rl", "--stdin"], "5");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "5");
}

#[test]
fn verify_reports_json() {
    let o = gtfl(&["verify", "--suite", "galois"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(j["checks"].as_array().is_some_and(|c| !c.is_empty()));
}

#[test]
fn verify_fails_forward_completeness_for_gradual_rows() {
    let o = gtfl(&["verify", "--suite", "fc", "--backend", "gr"]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stderr(&o).contains("forward-complete-gr"), "{}", stderr(&o));
    assert!(stderr(&o).contains("first witness"));
}

#[test]
fn bench_table_and_json() {
    let o = gtfl(&["bench"]);
    assert_eq!(o.status.code(), Some(0));
    let table = stdout(&o);
    assert!(table.starts_with("workload"));
    assert!(table.contains("even-odd") && table.contains("cps"));
    let o = gtfl(&["bench", "--json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 2 * 2 * 2 * 4);
    assert!(rows.iter().all(|r| r["composition_bound_violations"] == 0));
}
