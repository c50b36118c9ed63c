use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn rfdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfdet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

// (1+t)^4 (3+t) (8+t)^5: only real negative roots, yet P_10^3 has a complex pair
const C6_COUNTEREXAMPLE: &str = "98304,487424,1002496,1108864,719096,282891,68733,10342,938,47,1";

#[test]
fn expand_prints_documented_lines() {
    let out = rfdet(&["expand", "--mode", "p", "--f", "1,2,2,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).trim(),
        "18 + 18x; degree 1; coeffs_positive: yes; real_rooted_negative: yes"
    );
    let out = rfdet(&["expand", "--mode", "q", "--alpha", "2", "--beta", "3", "--f", "1,1,1,1,1"]);
    assert_eq!(stdout(&out).trim(), "0 (zero polynomial)");
    let pr = rfdet(&["expand", "--mode", "pr", "--r", "2", "--f", "1,2,2,1"]);
    let p = rfdet(&["expand", "--mode", "p", "--f", "1,2,2,1"]);
    assert_eq!(stdout(&pr), stdout(&p));
}

#[test]
fn expand_json_and_csv() {
    let out = rfdet(&["expand", "--f", "1,2,2,1", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["polynomial"], serde_json::json!(["18", "18"]));
    let out = rfdet(&["expand", "--f", "1,1/2,1/8", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("power,coefficient\n"));
}

#[test]
fn check_exit_codes() {
    let holds = rfdet(&["check", "--conjecture", "C1", "--alpha", "1/2", "--beta", "3", "--f", "1,2,2,1"]);
    assert_eq!(code(&holds), 0);
    let rec: Value = serde_json::from_str(&stdout(&holds)).unwrap();
    assert_eq!(rec["outcome"], "holds");
    assert_eq!(rec["case"]["alpha"], "1/2");

    let search = rfdet(&[
        "check", "--conjecture", "C3", "--search", "--alpha", "7/3", "--beta", "11/5", "--f", "1,1,1,1",
    ]);
    assert_eq!(code(&search), 10);

    // outside the hypotheses a failure is reported but is not a finding
    let outside = rfdet(&["check", "--conjecture", "T1", "--f", "1,1,1,1"]);
    assert_eq!(code(&outside), 0);
    let rec: Value = serde_json::from_str(&stdout(&outside)).unwrap();
    assert_eq!(rec["hypotheses_hold"], false);

    let bad = rfdet(&["check", "--conjecture", "C1", "--f", "1,2,2,1"]);
    assert_eq!(code(&bad), 1, "missing alpha/beta is an error");
    let bad = rfdet(&["check", "--conjecture", "C1,C2", "--alpha", "1", "--beta", "1", "--f", "1,2,1"]);
    assert_eq!(code(&bad), 1);
    assert_eq!(code(&rfdet(&["expand", "--f", "1,-2,1"])), 1);
    assert_eq!(code(&rfdet(&["campaign", "--bogus"])), 1);
}

#[test]
fn c6_counterexample_is_a_finding_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let record = dir.path().join("record.json");
    let out = rfdet(&[
        "check",
        "--conjecture",
        "C6",
        "--r",
        "3",
        "--f",
        C6_COUNTEREXAMPLE,
        "--out",
        record.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 10);
    let rec: Value = serde_json::from_str(&fs::read_to_string(&record).unwrap()).unwrap();
    assert_eq!(rec["hypotheses_hold"], true);
    assert_eq!(rec["verdict"]["witness"]["type"], "real_root_shortfall");

    let replay = rfdet(&["check", "--replay", record.to_str().unwrap()]);
    assert_eq!(code(&replay), 10);
    let summary: Value = serde_json::from_str(&stdout(&replay)).unwrap();
    assert_eq!(summary["replayed"], 1);
    assert_eq!(summary["matched"], 1);

    // the same input satisfies the order-3 coefficient and stability claims
    for c in ["C4", "C5"] {
        let out = rfdet(&["check", "--conjecture", c, "--r", "3", "--f", C6_COUNTEREXAMPLE]);
        assert_eq!(code(&out), 0, "{c}");
    }
}

#[test]
fn campaign_report_shape() {
    let out = rfdet(&[
        "campaign", "--conjecture", "C1,C3", "--trials", "4", "--n-max", "6", "--seed", "7", "--threads", "1",
    ]);
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["totals"]["C1"]["trials"], 4);
    assert_eq!(report["totals"]["C3"]["holds"], 4);
    assert_eq!(report["config"]["seed"], 7);
    assert_eq!(report["config"]["alpha_max"], "5");
    assert_eq!(report["trials"].as_array().unwrap().len(), 8);

    let csv = rfdet(&[
        "campaign", "--conjecture", "C2", "--trials", "3", "--n-max", "5", "--format", "csv",
    ]);
    let text = stdout(&csv);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("conjecture,trial_id,seed,n,r,outcome,witness,rejections,elapsed_ms")
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "conjecture = [\"C2\"]\ntrials = 5\nn_max = 6\nseed = 3\nalpha = \"3/2\"\nthreads = 1\n",
    )
    .unwrap();
    let report_path = dir.path().join("report.json");
    let out = rfdet(&[
        "--config",
        cfg.to_str().unwrap(),
        "campaign",
        "--trials",
        "2",
        "--out",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["config"]["trials"], 2);
    assert_eq!(report["config"]["seed"], 3);
    assert_eq!(report["config"]["alpha"], "3/2");
    assert_eq!(report["totals"]["C2"]["trials"], 2);

    fs::write(&cfg, "trails = 5\n").unwrap();
    let out = rfdet(&["--config", cfg.to_str().unwrap(), "campaign"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn gen_is_seeded() {
    let a = rfdet(&["gen", "--generator", "pf_inf_roots", "--n", "4", "--trials", "3", "--seed", "11"]);
    let b = rfdet(&["gen", "--generator", "pf_inf_roots", "--n", "4", "--trials", "3", "--seed", "11"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let samples: Value = serde_json::from_str(&stdout(&a)).unwrap();
    let samples = samples.as_array().unwrap();
    assert_eq!(samples.len(), 3);
    assert_eq!(samples[0]["sequence"]["values"].as_array().unwrap().len(), 5);
    // sequence i is the single sequence for seed + i
    let single = rfdet(&["gen", "--generator", "pf_inf_roots", "--n", "4", "--seed", "12"]);
    let single: Value = serde_json::from_str(&stdout(&single)).unwrap();
    assert_eq!(single[0], samples[1]);
}

#[test]
fn regress_passes() {
    let out = rfdet(&["regress"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}
