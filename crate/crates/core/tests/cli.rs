use std::process::Command;

fn run(args: &[&str], budget: Option<&str>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cubic-rm"));
    cmd.args(args).env_remove("CUBIC_RM_BUDGET");
    if let Some(b) = budget {
        cmd.env("CUBIC_RM_BUDGET", b);
    }
    let out = cmd.output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["tau", "--n", "5"], None), (0, "4830\n".into()));
    assert_eq!(run(&["enumerate", "--q", "5", "--method", "brute"], Some("1000")).0, 2);
    assert_eq!(run(&["--budget", "1000", "enumerate", "--q", "5", "--method", "brute"], None).0, 2);
    assert_eq!(run(&["enumerate", "--q", "6"], None).0, 2);
    assert_eq!(run(&["classnum", "--delta", "-20"], None), (0, "2\n".into()));
}

#[test]
fn verify_reports_are_deterministic() {
    let a = run(&["verify", "--q", "4", "--suite", "projective"], None);
    let b = run(&["verify", "--q", "4", "--suite", "projective"], None);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["scope"], "paper-unverified");
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn char3_affine_is_skipped() {
    let (code, out) = run(&["verify", "--q", "3", "--suite", "affine"], None);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["scope"], "outside-paper-scope");
    assert_eq!(v["checks"][0]["reason"], "char3-out-of-scope");
}

#[test]
fn census_json_matches_formula_rows() {
    let (code, out) = run(&["census", "--q", "3", "--format", "json"], None);
    assert_eq!(code, 0);
    let rows: Vec<serde_json::Value> = serde_json::from_str(&out).unwrap();
    assert_eq!(rows.len(), 16);
    let total: u64 = rows.iter().map(|r| r["count"].as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 3u64.pow(10));
}
