use std::process::{Command, Output};

fn mzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn value_all_pipelines_agree() {
    let o = mzv(&["value", "ems", "0,0", "--pipeline", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("ems(0,0) = 1/4\n"), "{out}");
    assert!(out.contains("agreed: true"));
    for p in ["birkhoff", "lemma", "closed", "recurrence"] {
        assert!(out.contains(p), "{out}");
    }
}

#[test]
fn value_fkmt_closed() {
    let o = mzv(&["value", "fkmt", "1", "--pipeline", "closed"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "fkmt(1) = -1/6\n");
}

#[test]
fn value_json_record() {
    let o = mzv(&[
        "value",
        "ems",
        "1,0",
        "--pipeline",
        "all",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v,
        serde_json::json!([{
            "ks": [1, 0],
            "value_ems": "1/24",
            "value_fkmt": "1/12",
            "pipelines_agreed": true
        }])
    );
}

#[test]
fn fkmt_rejects_series_pipelines() {
    let o = mzv(&["value", "fkmt", "1", "--pipeline", "birkhoff"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mzv(&["value", "ems", "1,-1"]).status.code(), Some(2));
    assert_eq!(mzv(&["value", "ems", ""]).status.code(), Some(2));
    assert_eq!(mzv(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        mzv(&["verify", "conversions", "--depth", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mzv(&["table", "ems", "--max-depth", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn weight_cap_enforced_and_overridable() {
    let o = mzv(&["value", "ems", "5,5,5", "--pipeline", "birkhoff"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    // the closed form has no cap
    assert_eq!(mzv(&["value", "ems", "5,5,5"]).status.code(), Some(0));
    let o = mzv(&[
        "value",
        "ems",
        "12,2",
        "--pipeline",
        "lemma",
        "--weight-cap",
        "16",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn table_csv_depth_one() {
    let o = mzv(&[
        "table",
        "ems",
        "--max-depth",
        "1",
        "--max-weight",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "k;value\n0;-1/2\n1;-1/12\n2;0\n");
}

#[test]
fn table_fkmt_origin() {
    let o = mzv(&[
        "table",
        "fkmt",
        "--max-depth",
        "2",
        "--max-weight",
        "0",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o), "k;value\n0;-1/2\n0,0;1/4\n");
}

#[test]
fn table_json_is_an_array_of_records() {
    let o = mzv(&[
        "table",
        "ems",
        "--max-depth",
        "2",
        "--max-weight",
        "1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1]["ks"], serde_json::json!([0, 0]));
    assert_eq!(rows[1]["value_ems"], "1/4");
}

#[test]
fn table_decimal_column_is_labelled() {
    let o = mzv(&[
        "table",
        "ems",
        "--max-depth",
        "1",
        "--max-weight",
        "1",
        "--format",
        "csv",
        "--decimal",
    ]);
    assert_eq!(
        stdout(&o),
        "k;value;approx\n0;-1/2;-0.5\n1;-1/12;-0.08333333333333333\n"
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "table",
        "fkmt",
        "--max-depth",
        "3",
        "--max-weight",
        "4",
        "--format",
        "json",
    ];
    let a = stdout(&mzv(&args));
    let b = stdout(&mzv(&args));
    let mut par = args.to_vec();
    par.push("--parallel");
    let c = stdout(&mzv(&par));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn verify_examples_pass() {
    for args in [
        ["verify", "thm321", "--depth", "3", "--weight", "8"],
        [
            "verify",
            "birkhoff-vs-closed",
            "--depth",
            "3",
            "--weight",
            "6",
        ],
        ["verify", "shuffle", "--depth", "2", "--weight", "4"],
    ] {
        let o = mzv(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"));
    }
}

#[test]
fn verify_parallel_matches_sequential() {
    let seq = mzv(&[
        "verify",
        "birkhoff-vs-closed",
        "--depth",
        "2",
        "--weight",
        "4",
    ]);
    let par = mzv(&[
        "verify",
        "birkhoff-vs-closed",
        "--depth",
        "2",
        "--weight",
        "4",
        "--parallel",
    ]);
    assert_eq!(seq.status.code(), Some(0));
    assert_eq!(stdout(&seq), stdout(&par));
}
