use std::process::Command;

use qcoinv::fft::Report;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_qcoinv"));
    c.env_remove("QCOINV_CEILING").env_remove("QCOINV_TIMINGS");
    c
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn verify_interior_passes() {
    let (code, out) = run(&["verify", "interior", "--m", "2", "--n", "2", "--t", "1", "--dmax", "4", "--format", "json"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&out).unwrap();
    assert!(r.passed());
    assert_eq!(r.degree(8).unwrap().dim_coinvariants, Some(25));
}

#[test]
fn verify_conjugation_passes() {
    let (code, out) = run(&["verify", "conjugation", "--n", "2", "--dmax", "6"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&out).unwrap();
    let dims: Vec<_> = r.degrees.iter().map(|d| d.dim_coinvariants.unwrap()).collect();
    assert_eq!(dims, vec![1, 1, 2, 2, 3, 3, 4]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "interior", "--m", "9", "--n", "9", "--t", "8", "--dmax", "6"]).0, 2);
    assert_eq!(run(&["verify", "interior", "--t", "0"]).0, 2);
    assert_eq!(run(&["verify", "slr", "--lambda", "0"]).0, 2);
    assert_eq!(run(&["verify", "slr", "--lambda", "x/y"]).0, 2);
    assert_eq!(run(&["verify", "nonsense"]).0, 2);
    assert_eq!(run(&["selftest", "--x-fault", "no-such-fault"]).0, 2);
    assert_eq!(run(&["baseline", "interior", "--x-fault", "cross-term"]).0, 2);
}

#[test]
fn ceiling_from_environment() {
    let out = bin()
        .args(["verify", "interior", "--dmax", "2"])
        .env("QCOINV_CEILING", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("35"));
    let (code, _) = run(&["verify", "interior", "--dmax", "2", "--ceiling", "35"]);
    assert_eq!(code, 0);
}

#[test]
fn negative_lambda_is_accepted() {
    let (code, out) = run(&["verify", "slr", "--n", "3", "--dmax", "2", "--lambda", "-1", "--lambda", "3/2"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r.params.lambdas, vec!["-1".to_string(), "3/2".to_string()]);
}

#[test]
fn out_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("qcoinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, stdout) = run(&["verify", "slr", "--n", "3", "--dmax", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r = Report::from_json(&text).unwrap();
    assert_eq!(r.experiment, "slr");
    assert_eq!(r.to_json() + "\n", text);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn markdown_output() {
    let (code, out) = run(&["verify", "conjugation", "--n", "2", "--dmax", "2", "--format", "markdown"]);
    assert_eq!(code, 0);
    assert!(out.contains("| d | source |"));
    assert!(out.contains("verdict: **pass**"));
    let (code, out) = run(&["selftest", "--format", "markdown"]);
    assert_eq!(code, 0);
    assert!(out.contains("| hopf_axioms | 38 | 38 |"));
}

#[test]
fn seeded_selftest_is_reproducible() {
    let a = run(&["selftest", "--seed", "42"]);
    let b = run(&["selftest", "--seed", "42"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
    let v: serde_json::Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn every_fault_is_detected() {
    for fault in ["row-relation", "cross-term", "antipode-sign", "minor-sign"] {
        let (code, out) = run(&["selftest", "--x-fault", fault]);
        assert_eq!(code, 1, "{fault}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "fail", "{fault}");
    }
}

#[test]
fn faulty_verify_fails() {
    for fault in ["row-relation", "cross-term", "antipode-sign", "minor-sign"] {
        let (code, out) = run(&["verify", "conjugation", "--n", "2", "--dmax", "3", "--x-fault", fault]);
        assert_eq!(code, 1, "{fault}");
        assert!(!Report::from_json(&out).unwrap().passed());
    }
    // a 2x1 by 1x2 carrier has no cross relations to break
    assert_eq!(run(&["verify", "interior", "--dmax", "2", "--x-fault", "cross-term"]).0, 0);
}

#[test]
fn baseline_passes() {
    let (code, out) = run(&["baseline", "conjugation", "--n", "2", "--dmax", "4"]);
    assert_eq!(code, 0);
    let r = Report::from_json(&out).unwrap();
    assert_eq!(r.experiment, "baseline-conjugation");
    assert!(r.check("tau_specializes_to_trace").unwrap().pass);
}

#[test]
fn in_process_entry_point() {
    assert_eq!(qcoinv_cli::run(["qcoinv", "selftest", "--out", "/dev/null"]), 0);
    assert_eq!(qcoinv_cli::run(["qcoinv", "--help"]), 0);
}
