use std::process::{Command, Output};

use apery_core::identities::{IdentityId, IdentityReport, Params, ResidualMode, ToleranceClass};
use apery_verify::{exit_status, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};
use proptest::prelude::*;

fn apery_verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn list_prints_catalog() {
    let o = apery_verify(&["--list"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 24);
    let row = |id: &str| {
        rows.iter()
            .find(|r| r.starts_with(&format!("{id} ")))
            .copied()
            .unwrap()
    };
    assert!(row("THM26").contains("Let $x=e^{i\\theta}$ and"));
    assert!(row("COR53").contains("equ-cor-sec4-one"));
    assert!(row("THM21").contains("60 points"));
}

#[test]
fn excluded_case_is_a_config_error() {
    let o = apery_verify(&["--identity", "THM21", "--x", "1/1", "--q", "1"]);
    assert_eq!(o.status.code(), Some(EXIT_CONFIG));
    assert!(stderr(&o).contains("(q,x)=(1,1)"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn bad_options_are_config_errors() {
    for args in [
        &["--identity", "NOPE"][..],
        &["--digits", "10"],
        &["--identity", "THM21", "--x", "0.5"],
        &["--identity", "THM21", "--a", "2"],
        &["--identity", "COR53", "--fc-x", "1"],
        &["--identity", "LI2_HALF", "--tolerance", "-1"],
        &["--format", "xml"],
    ] {
        let o = apery_verify(args);
        assert_eq!(o.status.code(), Some(EXIT_CONFIG), "{args:?}");
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn zeta3_record() {
    let o = apery_verify(&["--identity", "ZETA3_APERY", "--digits", "40"]);
    assert_eq!(o.status.code(), Some(EXIT_PASS));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "apery-verify/1");
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 1);
    assert!(records[0]["residual"].as_f64().unwrap() <= 1e-30);
    assert_eq!(records[0]["pass"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = |jobs: &'static str| {
        vec![
            "--identity",
            "EQ_CASE1,DILOG_B,LI2_HALF",
            "--digits",
            "25",
            "--no-timing",
            "--jobs",
            jobs,
        ]
    };
    let a = apery_verify(&args("1"));
    let b = apery_verify(&args("3"));
    assert_eq!(a.status.code(), Some(EXIT_PASS));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let ids: Vec<&str> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort_by_key(|s| s.parse::<IdentityId>().unwrap());
    assert_eq!(ids, sorted);
    assert!(v["records"][0]["elapsed_ms"].is_null());
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = apery_verify(&[
        "--identity",
        "PROP22",
        "--p",
        "1",
        "--fc-x",
        "1/2,i",
        "--digits",
        "25",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(EXIT_PASS), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "schema");
    assert!(headers.iter().any(|h| h == "residual_mode"));
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows
        .iter()
        .all(|r| &r[0] == "apery-verify/1" && &r[1] == "PROP22"));
}

#[test]
fn injected_failure_exits_one() {
    let o = apery_verify(&[
        "--identity",
        "LI2_HALF,DILOG_A",
        "--digits",
        "25",
        "--tolerance",
        "1e-300",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_FAIL));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["failed"].as_u64().unwrap() >= 1);
}

fn report(pass: bool) -> IdentityReport {
    IdentityReport {
        id: IdentityId::Li2Half,
        params: Params::default(),
        lhs: None,
        rhs: None,
        residual: Some(if pass { 0.0 } else { 1.0 }),
        residual_mode: ResidualMode::Absolute,
        tolerance: 0.5,
        class: ToleranceClass::Absolute,
        terms_used: 0,
        elapsed: Default::default(),
        pass,
        error: None,
    }
}

proptest! {
    #[test]
    fn exit_status_contract(flags in proptest::collection::vec(any::<bool>(), 0..40)) {
        let reports: Vec<IdentityReport> = flags.iter().map(|&p| report(p)).collect();
        let expected = if flags.iter().all(|&p| p) { EXIT_PASS } else { EXIT_FAIL };
        prop_assert_eq!(exit_status(&reports), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]
    #[test]
    fn process_exit_code_tracks_injected_failures(
        picks in proptest::sample::subsequence(vec!["LI2_HALF", "ZETA3_APERY", "DILOG_A", "DILOG_B", "LI21_X"], 1..4),
        inject in any::<bool>(),
    ) {
        let ids = picks.join(",");
        let mut args = vec!["--identity", ids.as_str(), "--digits", "22"];
        if inject {
            args.extend(["--tolerance", "1e-300"]);
        }
        let o = apery_verify(&args);
        let expected = if inject { EXIT_FAIL } else { EXIT_PASS };
        prop_assert_eq!(o.status.code(), Some(expected));
    }
}
