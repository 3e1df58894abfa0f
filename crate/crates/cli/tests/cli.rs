use std::process::{Command, Output};

fn cuspdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuspdim")).args(args).arg("--quiet").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_prints_the_value() {
    let o = cuspdim(&["dim", "--family", "g0plus", "--level", "35", "--weight", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3\n");
    assert!(o.stderr.is_empty(), "quiet run wrote to stderr");
}

#[test]
fn oracle_check_reports_no_mismatches() {
    let o = cuspdim(&["verify", "--check", "oracle", "--group", "gamma0", "--max-level", "20000", "--weights", "2:24:2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 mismatches"));
}

#[test]
fn enumerate_csv_has_2965_rows() {
    let o = cuspdim(&["enumerate", "--family", "g0plus", "--weight", "2", "--max-dim", "100", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,N,k,value"));
    assert_eq!(lines.count(), 2965);
}

#[test]
fn csv_and_json_carry_the_same_fields() {
    let args = ["table", "--family", "g0,g1star,rho0", "--levels", "1..40", "--weights", "2:4"];
    let csv = stdout(&cuspdim(&[&args[..], &["--format", "csv"]].concat()));
    let json = stdout(&cuspdim(&[&args[..], &["--format", "json"]].concat()));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    let recs: Vec<serde_json::Value> = json.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 40 * 3 * 3);
    assert_eq!(rows.len(), recs.len());
    for (row, rec) in rows.iter().zip(&recs) {
        let value = match &rec["value"] {
            serde_json::Value::String(s) => s.clone(),
            v => v.to_string(),
        };
        let expected = format!("{},{},{},{}", rec["family"].as_str().unwrap(), rec["N"], rec["k"], value);
        assert_eq!(*row, expected);
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = ["table", "--family", "g0plus,g1plus", "--levels", "1..500", "--weights", "2:12:2"];
    let one = cuspdim(&[&args[..], &["--threads", "1"]].concat());
    let many = cuspdim(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn report_file_holds_the_full_result() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ids.json");
    let o = cuspdim(&["verify", "--check", "convolution-identities", "--max-level", "3000", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["results"].as_array().unwrap().len(), 12);
    assert_eq!(report["max_n"], 3000);
}

#[test]
fn missing_values_listing() {
    let o = cuspdim(&["verify", "--check", "missing-values", "--family", "g0", "--max-dim", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("29 values"));
    assert!(text.lines().nth(1).unwrap().starts_with("150,180,210,"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["dim", "--family", "g2", "--level", "5"],
        &["dim", "--family", "g0", "--level", "5", "--weight", "1"],
        &["table", "--levels", "9..5"],
        &["verify", "--check", "missing-values", "--max-level", "2000"],
    ] {
        let o = cuspdim(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn verification_failure_exits_1() {
    // with N <= 1 several hypothesis classes are empty, which counts as a failure
    let o = cuspdim(&["verify", "--check", "lemma-suite", "--max-level", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn timing_footer_on_stderr_only() {
    let o = Command::new(env!("CARGO_BIN_EXE_cuspdim"))
        .args(["dim", "--family", "g0", "--level", "11"])
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "1\n");
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("elapsed "));
}
