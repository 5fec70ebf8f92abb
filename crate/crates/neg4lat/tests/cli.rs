//! End-to-end checks of the `neg4lat` binary: exit codes, JSON-lines output,
//! byte determinism and round-tripping of emitted values.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn neg4lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neg4lat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

#[test]
fn screen_not_representable() {
    let out = neg4lat(&["screen", "5;4,2,2,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["outcome"], "not-representable");
    assert_eq!(lines[0]["convention"], "ones-negative");
}

#[test]
fn screen_ones_positive_flag() {
    let out = neg4lat(&["screen", "1;2,1", "--ones-positive"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines[0]["outcome"], "nsm-positive");
    assert_eq!(lines[0]["nsm_witness"]["xi_tilde"]["a"], -1);
}

#[test]
fn pair_integer_and_rational() {
    let out = neg4lat(&["pair", "1;", "1;"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out)[0]["pair"], 1);

    let out = neg4lat(&["pair", "3/2;1/2,-1", "1;1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out)[0]["pair"], "2");
}

#[test]
fn pair_dimension_mismatch_exits_2() {
    let out = neg4lat(&["pair", "1;", "1;2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_class_exits_2() {
    let out = neg4lat(&["screen", "not-a-class"]);
    assert_eq!(out.status.code(), Some(2));
    let out = neg4lat(&["value-set", "1;1"]); // square 0
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_emits_word_and_reduced_class() {
    let out = neg4lat(&["reduce", "5;4,2,2,2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &stdout_lines(&out)[0];
    assert_eq!(v["reduced"]["a"], 0);
    assert_eq!(v["reduced"]["b"], serde_json::json!([1, 1, 1, 1, 0]));
    assert!(v["word"].as_array().unwrap().len() >= 2);
}

#[test]
fn orbit_eq_with_global_sign() {
    let out = neg4lat(&[
        "orbit-eq",
        "0;1,1,1,1",
        "3;2,2,2,1",
        "--global-sign",
        "--cap",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = &stdout_lines(&out)[0];
    assert_eq!(v["status"], "equivalent");
    assert_eq!(v["cap"], 12);
    assert!(v["witness"].is_array());
}

#[test]
fn enum_reduced_and_exceptional_listings() {
    let out = neg4lat(&["enum-reduced", "--k", "1", "--square", "-4", "--max-a", "3"]);
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["a"], 0);
    assert_eq!(lines[0]["b"], serde_json::json!([2]));

    let out = neg4lat(&["exceptional", "--k", "5", "--max-a", "2"]);
    assert_eq!(stdout_lines(&out).len(), 16);
}

#[test]
fn value_set_published_row() {
    let out = neg4lat(&["value-set", "2;2,1,1,1,1"]);
    let v = &stdout_lines(&out)[0];
    assert_eq!(v["values"], serde_json::json!([-12, -8, 0, 4]));
    assert_eq!(v["contains_two"], false);
}

#[test]
fn json_class_argument_form() {
    let out = neg4lat(&["screen", r#"{"k":5,"a":4,"b":[2,2,2,2,2]}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out)[0]["outcome"], "multiple-of-exceptional");
}

#[test]
fn emitted_classes_reparse() {
    let out = neg4lat(&["reduce", "3;2,2,2,1"]);
    let v = &stdout_lines(&out)[0];
    let reduced = serde_json::to_string(&v["reduced"]).unwrap();
    let out2 = neg4lat(&["reduce", &reduced]);
    assert_eq!(out2.status.code(), Some(0));
    assert_eq!(stdout_lines(&out2)[0]["input"], v["reduced"]);
}

#[test]
fn verify_table_passes_and_is_deterministic() {
    let a = neg4lat(&["verify-table"]);
    assert_eq!(a.status.code(), Some(0), "reviews are not failures");
    let b = neg4lat(&["verify-table"]);
    assert_eq!(a.stdout, b.stdout, "byte-identical output");

    let lines = stdout_lines(&a);
    let summary = lines.last().unwrap();
    assert_eq!(summary["rows"], 25);
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["reviewed"], 2);
    assert!(lines.iter().any(|l| l["finding"] == "orbit-relation"));
}

#[test]
fn verify_table_reports_failures_with_exit_1() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    // square -3, integrity must fail
    writeln!(f, "2\t1;2,0\tN\t-\t-\tbroken row").unwrap();
    f.flush().unwrap();
    let out = neg4lat(&["verify-table", "--table", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let lines = stdout_lines(&out);
    assert_eq!(lines.last().unwrap()["failed"], 1);
}

#[test]
fn surgery_pipeline_trace() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"[
            {{"op": "start", "k_sq": 0, "k_omega": "-2", "label": "E(1)"}},
            {{"op": "blow_up", "area": "1/2"}},
            {{"op": "minus4", "area": "1"}},
            {{"op": "blow_up", "area": "1/2"}},
            {{"op": "minus4", "area": "1", "minimal": true, "label": "E(1)_{{2,2}}"}}
        ]"#
    )
    .unwrap();
    f.flush().unwrap();
    let out = neg4lat(&["surgery", "run", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 6); // five states plus the final line
    assert_eq!(lines[4]["k_sq"], 0);
    assert_eq!(lines[4]["k_omega"], "0");
    assert_eq!(lines[5]["kappa"], "0");
}

#[test]
fn classify_scenarios() {
    let out = neg4lat(&["classify", "--kappa", "0", "--nsm", "0", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &stdout_lines(&out)[0];
    assert_eq!(v["kappa_m"], "1");
    assert_eq!(v["rule"], "log-transform");

    // infeasible scenario is a domain error
    let out = neg4lat(&["classify", "--kappa", "0", "--nsm", "0", "--k", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = neg4lat(&[
        "classify", "--kappa", "-inf", "--nsm", "unbounded", "--k", "3", "--ruled", "rational",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_lines(&out)[0]["kappa_m"], "-inf");
}

#[test]
fn json_indent_flag_pretty_prints() {
    let out = neg4lat(&["--json-indent", "4", "value-set", "0;2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().count() > 1);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["contains_two"], true);
}

#[test]
fn help_exists_for_every_subcommand() {
    for sub in [
        "pair",
        "reduce",
        "orbit-eq",
        "enum-reduced",
        "exceptional",
        "value-set",
        "screen",
        "verify-table",
        "surgery",
        "classify",
    ] {
        let out = neg4lat(&[sub, "--help"]);
        assert_eq!(out.status.code(), Some(0), "{sub} --help");
        assert!(!out.stdout.is_empty(), "{sub} --help prints usage");
    }
}
