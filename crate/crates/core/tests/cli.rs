use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_palcomplex")).args(args).output().unwrap()
}

fn config(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name).to_string_lossy().into_owned()
}

#[test]
fn analyze_sturmian_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&[
        "analyze",
        "--family",
        "sturmian",
        "--alpha",
        "(sqrt(5)-1)/2",
        "--rho",
        "0",
        "--length",
        "100000",
        "--nmax",
        "200",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,C,dC,P,Psum,bound,slack,stable"));
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let n: i64 = f[0].parse().unwrap();
        let c: i64 = f[1].parse().unwrap();
        let (psum, bound, slack): (i64, i64, i64) =
            (f[4].parse().unwrap(), f[5].parse().unwrap(), f[6].parse().unwrap());
        assert_eq!(c, n + 1);
        assert_eq!(slack, bound - psum);
    }
    let json: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("profile.json")).unwrap()).unwrap();
    assert_eq!(json["profile"]["rows"].as_array().unwrap().len(), 201);
}

#[test]
fn verify_tribonacci_config() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--config", &config("tribonacci.json"), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let report: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    let checks = report["reports"][0]["checks"].as_array().unwrap();
    let main = checks.iter().find(|c| c["name"] == "main_bound").unwrap();
    assert_eq!(main["equality_levels"].as_array().unwrap().len(), 200);
}

#[test]
fn rauzy_dot_for_fibonacci() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("out.dot");
    let o = run(&[
        "rauzy",
        "--family",
        "beta",
        "--t",
        "1,1",
        "--n",
        "2",
        "--dot",
        dot.to_str().unwrap(),
        "--length",
        "10000",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches(" -> ").count(), 4);
    let nodes = text.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count();
    assert_eq!(nodes, 3);
    let audit: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("audit.json")).unwrap()).unwrap();
    assert_eq!(audit["levels"][0]["audit"]["pass"], true);
}

#[test]
fn generate_then_analyze_word_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["generate", "--config", &config("iet3_reversal.json"), "--length", "2001", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let word = dir.path().join("iet.word");
    let text = fs::read_to_string(&word).unwrap();
    assert!(text.starts_with("# origin=-1000 alphabet=3 family=iet\n"));
    let o = run(&["analyze", "--word", word.to_str().unwrap(), "--nmax", "20", "--out", out]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("profile.csv")).unwrap();
    assert!(csv.lines().any(|l| l.starts_with("20,41,2,1,")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    // rational slope
    assert_eq!(run(&["analyze", "--family", "sturmian", "--alpha", "1/2", "--out", out]).status.code(), Some(2));
    // malformed expression
    assert_eq!(run(&["analyze", "--family", "sturmian", "--alpha", "sqrt(2", "--out", out]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // guard exceeded
    assert_eq!(
        run(&[
            "analyze",
            "--family",
            "sturmian",
            "--alpha",
            "sqrt(2)-1",
            "--length",
            "100",
            "--nmax",
            "50",
            "--out",
            out
        ])
        .status
        .code(),
        Some(2)
    );
    let o = run(&["analyze", "--family", "sturmian", "--alpha", "sqrt(2)-1", "--precision-cap", "1", "--out", out]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn degenerate_iet_needs_opt_in() {
    // identity-like permutation on two intervals: refused unless degenerate codings are allowed
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["verify", "--family", "iet", "--alphas", "1/2,1/2", "--pi", "2,1", "--x0", "1/3", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
    // the periodic coding is accepted when asked for, and its checks skip rather than fail
    let o = run(&[
        "verify",
        "--family",
        "iet",
        "--alphas",
        "1/2,1/2",
        "--pi",
        "2,1",
        "--x0",
        "1/3",
        "--allow-degenerate",
        "--length",
        "400",
        "--nmax",
        "20",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    let checks = report["reports"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().filter(|c| c["name"] != "rauzy_audit").all(|c| c["status"] == "skipped"));
}

#[test]
fn seed_config_round_trips() {
    let o = run(&["--seed-config", "iet"]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, &o.stdout).unwrap();
    let o = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--length",
        "20001",
        "--nmax",
        "30",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
