use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn domcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domcheck"))
        .args(args)
        .env_remove("DOMCHECK_MAX_NODES")
        .env_remove("DOMCHECK_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn compute_reports_known_values() {
    let out = domcheck(&["compute", "--graph", "cycle:5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("gamma = 2"), "{text}");
    assert!(text.contains("gamma_r = 4"), "{text}");

    let out = domcheck(&["compute", "--family", "complete:2", "--which", "gamma_r"]);
    assert!(stdout(&out).contains("gamma_r = 2"));
    assert!(!stdout(&out).contains("gamma = "));

    let out = domcheck(&["compute", "--graph", "petersen", "--json", "--witness"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["gamma"], 3);
    assert_eq!(v["gamma_r"], 6);
    assert_eq!(v["gamma_witness"].as_array().unwrap().len(), 3);
}

#[test]
fn audit_k2_square() {
    let out = domcheck(&["audit", "--g", "complete:2", "--h", "g6:A_"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("1 ≤ 3 PASS"), "{text}");
    assert!(text.contains("gamma_R(GxH) = 3"), "{text}");
}

#[test]
fn trace_round_trip_and_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.json");
    let p = path.to_str().unwrap();
    let out = domcheck(&["audit", "--g", "path:3", "--h", "cycle:4", "--trace-out", p]);
    assert_eq!(code(&out), 0);

    let out = domcheck(&["verify-trace", p, "--recheck-optimality"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS optimality"));

    // Move one vertex from V2 to V0: the residual is no longer dominated.
    let mut trace: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let moved = trace["f"]["v2"].as_array_mut().unwrap().remove(0);
    trace["f"]["v0"].as_array_mut().unwrap().push(moved);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string(&trace).unwrap()).unwrap();
    let out = domcheck(&["verify-trace", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("FAIL"));

    // A file that is not a trace at all is a parse error.
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{\"schema\": \"something else\"}").unwrap();
    assert_eq!(
        code(&domcheck(&["verify-trace", junk.to_str().unwrap()])),
        1
    );
}

#[test]
fn exit_codes() {
    assert_eq!(code(&domcheck(&[])), 1);
    assert_eq!(code(&domcheck(&["compute"])), 1);
    assert_eq!(code(&domcheck(&["compute", "--graph", "nonsense:3"])), 1);
    assert_eq!(
        code(&domcheck(&[
            "audit",
            "--g",
            "petersen",
            "--h",
            "k:2",
            "--tie-break",
            "median"
        ])),
        1
    );
    assert_eq!(code(&domcheck(&["--help"])), 0);
    assert_eq!(code(&domcheck(&["--version"])), 0);

    let out = domcheck(&[
        "audit",
        "--g",
        "petersen",
        "--h",
        "petersen",
        "--max-nodes",
        "3",
    ]);
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_domcheck"))
        .args(["compute", "--graph", "cycle:9"])
        .env("DOMCHECK_MAX_ORDER", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

fn sweep_outputs(dir: &Path, jobs: &str) -> (String, String) {
    let csv = dir.join(format!("rows-{jobs}.csv"));
    let summary = dir.join(format!("summary-{jobs}.json"));
    let out = domcheck(&[
        "sweep",
        "--g",
        "connected:1..3",
        "--h",
        "path:2..4",
        "--h",
        "random:5,0.5",
        "--seed",
        "11",
        "--jobs",
        jobs,
        "--omit-timings",
        "--csv",
        csv.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    (
        fs::read_to_string(csv).unwrap(),
        fs::read_to_string(summary).unwrap(),
    )
}

#[test]
fn sweep_is_deterministic_across_job_counts() {
    let dir = tempfile::tempdir().unwrap();
    let (csv1, sum1) = sweep_outputs(dir.path(), "1");
    let (csv4, sum4) = sweep_outputs(dir.path(), "4");
    assert_eq!(csv1, csv4);
    assert_eq!(sum1, sum4);
    // header plus 4 G graphs times 4 H graphs
    assert_eq!(csv1.lines().count(), 17);
    assert!(csv1.contains("random:5,0.5,11"));
    let summary: serde_json::Value = serde_json::from_str(&sum1).unwrap();
    assert_eq!(summary["schema"], "domcheck.sweep-summary/v1");
    assert_eq!(summary["pairs"], 16);
    assert_eq!(summary["all_pass"], true);
}

#[test]
fn sweep_records_budget_failures_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rows.csv");
    let traces = dir.path().join("traces");
    let out = domcheck(&[
        "sweep",
        "--g",
        "complete:2",
        "--g",
        "petersen",
        "--pairs",
        "self",
        "--max-nodes",
        "40",
        "--csv",
        csv.to_str().unwrap(),
        "--traces-dir",
        traces.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let rows = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = rows.lines().collect();
    assert!(lines[1].contains(",ok,"), "{rows}");
    assert!(lines[2].contains(",budget_exceeded,"), "{rows}");
    let trace = traces.join("pair-00000.json");
    assert!(trace.exists());
    assert_eq!(
        code(&domcheck(&["verify-trace", trace.to_str().unwrap()])),
        0
    );
}

#[test]
fn oracle_diff_agrees() {
    let out = domcheck(&["oracle-diff", "--max-order", "4"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).contains("checked 18 graphs, 0 mismatches"),
        "{}",
        stdout(&out)
    );

    let out = domcheck(&[
        "oracle-diff",
        "--random",
        "6",
        "--random-min-order",
        "8",
        "--random-max-order",
        "13",
        "--seed",
        "5",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("checked 6 graphs"));

    let out = domcheck(&["oracle-diff", "--graph", "petersen"]);
    assert!(stdout(&out).contains("ok petersen: gamma=3 gamma_r=6"));
    assert_eq!(code(&domcheck(&["oracle-diff", "--max-order", "9"])), 1);
}
