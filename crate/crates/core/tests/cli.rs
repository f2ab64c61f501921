//! The command-line binary, driven as a subprocess.

use std::process::{Command, Output};

use lacunary::cli::{EnvelopeValue, OutputEnvelope};

fn lacunary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lacunary"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn envelope(args: &[&str]) -> OutputEnvelope {
    let o = lacunary(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON envelope")
}

#[test]
fn constant_plain_output() {
    let o = lacunary(&["constant", "eb", "--digits", "9", "--method", "theta"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1.606695152");

    let o = lacunary(&["constant", "eb", "--digits", "9"]);
    let text = stdout(&o);
    for method in ["direct", "theta", "divisor"] {
        assert!(text.contains(&format!("{method} 1.606695152")), "{text}");
    }
}

#[test]
fn json_envelopes_are_deterministic() {
    let args = ["series", "eval", "--exponents", "trigonal", "--x", "1/2", "--digits", "11", "--format", "json"];
    let a = envelope(&args);
    let b = envelope(&args);
    assert_eq!(a.value, b.value);
    assert_eq!(a.inputs, b.inputs);
    assert_eq!(a.command, b.command);
    assert_eq!(a.digits_certified, Some(11));
    match &a.value {
        EnvelopeValue::Decimal { digits, error_exponent } => {
            assert_eq!(digits, "1.64163256066");
            assert!(error_exponent.unwrap() >= 11);
        }
        other => panic!("unexpected value {other:?}"),
    }
    let round_trip: OutputEnvelope = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
    assert_eq!(round_trip, a);
}

#[test]
fn curve_commands() {
    let o = lacunary(&["curve", "eval", "--a", "2", "--x", "0", "--digits", "6"]);
    assert_eq!(stdout(&o).trim(), "2.000000");
    let o = lacunary(&["curve", "eval", "--a", "3", "--x", "0", "--variant", "alt", "--digits", "4"]);
    assert_eq!(stdout(&o).trim(), "0.7500");

    let o = lacunary(&["curve", "sample", "--a", "2", "--from", "-2", "--to", "0", "--steps", "5", "--digits", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,flag"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[0].starts_with("-2,") && rows[0].ends_with("pole"), "{}", rows[0]);
    assert!(rows[2].starts_with("-1,") && rows[2].ends_with("pole"), "{}", rows[2]);
    assert_eq!(rows[4], "0,2.000,ok");
}

#[test]
fn eureka_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let o = lacunary(&["eureka", "verify", "--upto", "50", "--report-csv", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["n", "r3"]);
    let rows: Vec<(u64, u64)> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 51);
    for (n, count) in rows {
        assert_eq!(count, lacunary::eureka::oracle_r3(n), "n = {n}");
    }

    let report = envelope(&["eureka", "verify", "--upto", "1000", "--format", "json"]);
    match report.value {
        EnvelopeValue::Report(r) => {
            assert_eq!(r.checked, 1001);
            assert!(r.failures.is_empty());
        }
        other => panic!("unexpected value {other:?}"),
    }
    let coeff = envelope(&["eureka", "coeff", "--n", "3", "--format", "json"]);
    assert_eq!(coeff.value, EnvelopeValue::Coefficient { n: 3, r3: "4".into() });
}

#[test]
fn input_errors_exit_with_two() {
    let cases: [&[&str]; 6] = [
        &["series", "eval", "--exponents", "trigonal", "--x", "1", "--digits", "5"],
        &["series", "eval", "--exponents", "trigonal", "--x", "abc", "--digits", "5"],
        &["series", "eval", "--exponents", "explicit:3,2", "--x", "1/2", "--digits", "5"],
        &["curve", "eval", "--a", "1", "--x", "0", "--digits", "5"],
        &["curve", "sample", "--a", "2", "--from", "1", "--to", "0", "--steps", "3", "--digits", "2"],
        &["constant", "eb"],
    ];
    for args in cases {
        let o = lacunary(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn progression_warning() {
    let o = lacunary(&["series", "eval", "--exponents", "geometric:2", "--x", "1/3", "--digits", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stderr.is_empty());
    let o = lacunary(&["series", "eval", "--exponents", "explicit:0,2,4,6", "--x", "1/3", "--digits", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("arithmetic progression"));
}
