use std::process::{Command, Output};

fn zconn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zconn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn decide_k4_is_negative() {
    let out = zconn(&["decide", "--group", "3", "C~"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "C~\tnot-z3-connected\n");
}

#[test]
fn decide_k5_is_positive() {
    let out = zconn(&["decide", "D~{"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "D~{\tz3-connected\n");
}

#[test]
fn classify_k4_reports_g1() {
    let out = zconn(&["classify", "C~"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "C~\texceptional\tcatalog:G1,k4-special\n");
    let out = zconn(&["classify", "--format", "jsonl", "C~"]);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["name"], "G1");
    assert_eq!(record["k4_special"], true);
}

#[test]
fn malformed_input_is_an_error() {
    let out = zconn(&["decide", "!!"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(zconn(&["decide", "--group", "2", "C~"]).status.code(), Some(2));
    assert_eq!(zconn(&["classify", "Ds_"]).status.code(), Some(2));
}

#[test]
fn census_order_four() {
    let out = zconn(&["census", "--min-n", "4", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("C~\t4\t6\tnot-z3-connected\texceptional\ttrue"));
    assert!(text.ends_with(
        "# summary\tclasses=1\tz3-connected=0\tcontracts-to-k4=0\texceptional=1\tdisagreements=0\n"
    ));
}

#[test]
fn census_is_deterministic_across_worker_counts() {
    let one = zconn(&["census", "--max-n", "7", "--workers", "1"]);
    let many = zconn(&["census", "--max-n", "7", "--workers", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert!(stdout(&one).contains("exceptional=13"));
}

#[test]
fn file_input_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("graphs.g6");
    let report = dir.path().join("report.tsv");
    std::fs::write(&input, "C~\nD~{\n").unwrap();
    let out = zconn(&[
        "decide",
        input.to_str().unwrap(),
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        std::fs::read_to_string(&report).unwrap(),
        "C~\tnot-z3-connected\nD~{\tz3-connected\n"
    );
}

#[test]
fn convert_round_trip() {
    let dot = zconn(&["convert", "Dhc"]);
    assert!(stdout(&dot).starts_with("graph G {"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c5.dot");
    std::fs::write(&path, dot.stdout).unwrap();
    let back = zconn(&["convert", "--to", "graph6", path.to_str().unwrap()]);
    assert_eq!(stdout(&back), "Dhc\n");
}

#[test]
fn reduce_and_verify_trace() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k6.trace");
    let out = zconn(&["reduce", "E~~w", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("terminal\t1:"));
    let trace: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, trace).unwrap();
    let verified = zconn(&["verify-trace", path.to_str().unwrap()]);
    assert_eq!(verified.status.code(), Some(0));
    assert!(stdout(&verified).starts_with("valid\t"));

    // a K4 cannot be certified as a contractible subgraph
    std::fs::write(&path, "initial\t4:0-1,0-2,0-3,1-2,1-3,2-3\ncontract\toracle-verified\t0,1,2,3,4,5\nterminal\t1:\n").unwrap();
    let rejected = zconn(&["verify-trace", path.to_str().unwrap()]);
    assert_eq!(rejected.status.code(), Some(1));
    assert!(stdout(&rejected).starts_with("invalid\t"));
}

#[test]
fn nzflow_with_prediction() {
    let out = zconn(&["nzflow", "--predict", "G~KwW["]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "G~KwW[\tno-nowhere-zero-3-flow\tpredicted=false\n");
    let out = zconn(&["nzflow", "--group", "4", "C~"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn catalog_verify_passes() {
    let out = zconn(&["catalog", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("FAIL"));
}
