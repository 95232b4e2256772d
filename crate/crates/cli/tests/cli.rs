use std::process::Command;

use dslice_core::complex::KnotComplex;
use serde_json::Value;

fn dslice(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dslice")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn lens_csv_is_exact() {
    let (code, out, _) = dslice(&["lens", "--p", "5", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "1, 1/5, -1/5, -1/5, 1/5\n");
    let (_, out, _) = dslice(&["lens", "--p", "5", "--i", "-1", "--format", "csv"]);
    assert_eq!(out, "1/5\n");
}

#[test]
fn z_table_json_reports_seven_zeros() {
    let (code, out, _) = dslice(&["z-table", "--p", "5", "--k", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["zero_count"], 7);
    assert_eq!(v["pattern_agrees"], true);
    let zeros = v["d"]["rows"].as_array().unwrap().iter().flat_map(|r| r.as_array().unwrap()).filter(|x| *x == "0");
    assert_eq!(zeros.count(), 7);
}

#[test]
fn invalid_input_exits_two_and_names_the_condition() {
    let (code, out, err) = dslice(&["obstruct", "--p", "9"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("p must be an odd prime"), "{err}");

    let (code, _, err) = dslice(&["surgery", "--knot", "torus:2,9", "--coeff", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("p >= 2g - 1"), "{err}");

    let (code, _, err) = dslice(&["y-table", "--n", "5", "--k", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("k <= (2n + 1)/4"), "{err}");

    let (code, _, err) = dslice(&["vseq", "--knot", "torus:2,4"]);
    assert_eq!(code, 2);
    assert!(err.contains("gcd(P, Q) = 1"), "{err}");
}

#[test]
fn output_is_deterministic_and_json_round_trips() {
    let cases: &[&[&str]] = &[
        &["lens-sum", "--p", "7"],
        &["y-table", "--n", "5", "--k", "1", "--centered"],
        &["z-table", "--p", "7", "--canonical"],
        &["obstruct", "--p", "5"],
        &["grs", "--p", "5", "--copies", "2"],
        &["vseq", "--knot", "sum:torus:2,5+torus:5,6", "--oracle"],
        &["surgery", "--knot", "whitehead-double", "--coeff", "3"],
        &["linking", "--demo", "rank6", "--prime", "3"],
    ];
    for args in cases {
        let mut argv = args.to_vec();
        argv.extend(["--format", "json"]);
        let (code, first, _) = dslice(&argv);
        assert_eq!(code, 0, "{args:?}");
        let (_, second, _) = dslice(&argv);
        assert_eq!(first, second, "{args:?}");
        let parsed: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", first, "{args:?}");
        for fmt in ["pretty", "csv"] {
            let mut argv = args.to_vec();
            argv.extend(["--format", fmt]);
            assert_eq!(dslice(&argv).1, dslice(&argv).1);
        }
    }
}

#[test]
fn whitehead_double_carries_a_note() {
    let (_, out, _) = dslice(&["vseq", "--knot", "power:whitehead-double*2", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["values"], serde_json::json!([1, 1]));
    assert!(v["notes"][0].as_str().unwrap().contains("T(2,3)"));
}

#[test]
fn dumped_complex_parses() {
    let (code, out, _) = dslice(&["vseq", "--knot", "sum:torus:2,3+torus:3,4", "--dump-complex"]);
    assert_eq!(code, 0);
    let c = KnotComplex::parse(&out).unwrap();
    assert_eq!(c.len(), 15);
    assert_eq!(c.to_string(), out);
}

#[test]
fn lens_sum_centered_layout() {
    let (_, out, _) = dslice(&["lens-sum", "--p", "5", "--centered", "--format", "csv"]);
    assert_eq!(
        out,
        "0, -2/5, -6/5, -2/5, 0\n2/5, 0, -4/5, 0, 2/5\n6/5, 4/5, 0, 4/5, 6/5\n2/5, 0, -4/5, 0, 2/5\n0, -2/5, -6/5, -2/5, 0\n"
    );
}

#[test]
fn grs_ledger_lists_every_subgroup() {
    let (_, out, _) = dslice(&["grs", "--p", "5", "--lens-sum", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["value"], "0");
    assert_eq!(v["ledger"].as_array().unwrap().len(), 6);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = dslice(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("z-table"));
}
