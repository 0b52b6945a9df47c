use std::process::{Command, Output};

use serde_json::Value;

fn radred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radred"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn strings(v: &Value) -> Vec<&str> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect()
}

#[test]
fn construct_reports_exact_instance() {
    let out = radred(&["construct", "--p", "7", "--D", "-2", "--u", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["params"]["d"], "-2158");
    assert_eq!(v["params"]["R"], "4656966");
    assert_eq!(v["g_display"], "Z^14 + 4316*Z^7 - 2");
}

#[test]
fn reduce_demoivre_quintic() {
    let out = radred(&["reduce", "--p", "5", "--d", "2", "--R", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(strings(&v["f"]), ["-4", "5", "0", "5", "0", "1"]);
    assert_eq!(v["z"], "-1");
    assert_eq!(v["u"], "irrational");
    assert_eq!(v["u_expr"]["kind"], "real-root");
    assert!(v.get("quadratic_form").is_none());
}

#[test]
fn reduce_with_numeric_checks() {
    let out = radred(&[
        "reduce",
        "--p",
        "7",
        "--d",
        "-2158",
        "--R",
        "4656966",
        "--numeric",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["u"], "4");
    assert_eq!(v["numeric"]["passed"], true);
    assert!(
        v["numeric"]["residual"]["max_residual_log2"]
            .as_f64()
            .unwrap()
            < -200.0
    );
}

#[test]
fn unreachable_tolerance_is_a_verification_failure() {
    let out = radred(&[
        "reduce",
        "--p",
        "3",
        "--d",
        "-7",
        "--R",
        "50",
        "--numeric",
        "--bits",
        "64",
        "--tolerance-exp",
        "300",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["numeric"]["passed"], false);
}

#[test]
fn assumption_violations_exit_two() {
    let out = radred(&["reduce", "--p", "5", "--d", "3", "--R", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sqrt(R) is rational"));
    assert!(out.stdout.is_empty());
    assert_eq!(
        radred(&["reduce", "--p", "4", "--d", "3", "--R", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        radred(&["reduce", "--p", "5", "--d", "0.5", "--R", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        radred(&["reduce", "--p", "5", "--d", "1", "--R", "2", "--bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        radred(&["coeffs", "--p", "5", "--family", "b"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn verify_smallest_sweep_passes() {
    let out = radred(&["verify", "--p-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert!(v[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}

#[test]
fn verify_output_is_sorted_by_p() {
    let out = radred(&["verify", "--p-max", "15"]);
    assert_eq!(out.status.code(), Some(0));
    let ps: Vec<i64> = json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["p"].as_i64().unwrap())
        .collect();
    assert_eq!(ps, [3, 5, 7, 9, 11, 13, 15]);
}

#[test]
fn selftest_passes() {
    let out = radred(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn euclid_both_formulas() {
    let v = json(&radred(&["euclid", "--d", "3", "--R", "5"]));
    assert_eq!(v["criterion"], "holds");
    assert_eq!(
        (v["data"]["x"].as_str(), v["data"]["y"].as_str()),
        (Some("5/2"), Some("1/2"))
    );
    let v = json(&radred(&["euclid", "--d", "7", "--R", "48", "--fourth"]));
    assert_eq!(
        (v["data"]["s"].as_str(), v["data"]["t"].as_str()),
        (Some("1"), Some("1/2"))
    );
    let v = json(&radred(&["euclid", "--d", "1", "--R", "1/2"]));
    assert_eq!(v["criterion"], "fails");
}

#[test]
fn classify_examples() {
    let v = json(&radred(&[
        "classify", "--p", "7", "--d", "-2158", "--R", "4656966",
    ]));
    assert_eq!(v["same_quadratic_field"], false);
    assert_eq!(v["case"], "b");
    let v = json(&radred(&["classify", "--p", "9", "--d", "2", "--R", "3"]));
    assert_eq!(v["p_prime"], false);
}

#[test]
fn coeffs_family() {
    let v = json(&radred(&["coeffs", "--p", "5", "--family", "c"]));
    assert_eq!(strings(&v["values"]), ["5", "-5", "1"]);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let invocations: &[&[&str]] = &[
        &["reduce", "--p", "5", "--d", "2", "--R", "5"],
        &[
            "reduce",
            "--p",
            "7",
            "--d",
            "-2158",
            "--R",
            "4656966",
            "--numeric",
        ],
        &["reduce", "--p", "3", "--d", "-7", "--R", "50"],
        &["construct", "--p", "7", "--D", "-2", "--u", "4"],
        &["euclid", "--d", "7", "--R", "48", "--fourth"],
        &["classify", "--p", "5", "--d", "2", "--R", "5"],
        &["coeffs", "--p", "9", "--family", "u"],
        &["verify", "--p-max", "7"],
        &["selftest"],
    ];
    for args in invocations {
        let first = radred(args).stdout;
        let second = radred(args).stdout;
        assert_eq!(first, second, "{args:?}");
        let reparsed: Value = serde_json::from_slice(&first).unwrap();
        let mut again = serde_json::to_string_pretty(&reparsed)
            .unwrap()
            .into_bytes();
        again.push(b'\n');
        assert_eq!(first, again, "{args:?}");
    }
}
