use std::process::{Command, Output};

fn duality(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duality"))
        .args(args)
        .env_remove("DUALITY_SEED")
        .env_remove("DUALITY_ORDER")
        .env_remove("DUALITY_PER_CELL")
        .env_remove("DUALITY_R_MAX")
        .env_remove("DUALITY_JSON_OUT")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn verify_classical_inline_json() {
    let out = duality(&[
        "verify-classical",
        "--instance",
        r#"{"a":["0","1/2"],"b":["1/3"],"m":[1]}"#,
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["match"], true);
    assert_eq!(report["case_label"], "M=r,p<=r");
    assert_eq!(report["order"], 12);
}

#[test]
fn verify_q_from_file_with_float_check() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("q-instance.json");
    std::fs::write(
        &path,
        r#"{"r":1,"q":"1/2","a":["1","3"],"b":["1/5","1/7"],"m":[2,0]}"#,
    )
    .unwrap();
    let out = duality(&[
        "verify-q",
        "--instance",
        path.to_str().unwrap(),
        "--order",
        "8",
        "--float-check",
        "0.1",
        "1e-9",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["case_label"], "M=r+1");
    assert_eq!(report["float_check"]["within_tol"], true);
}

#[test]
fn negative_shift_reports_polynomial_part() {
    let out = duality(&[
        "verify-classical",
        "--instance",
        r#"{"a":["0","1/2"],"b":["1/3"],"m":[-1]}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("mod degree 1"));
    assert!(text.contains("(polynomial part)"));
    assert!(text.trim_end().ends_with("MATCH"));
}

#[test]
fn usage_errors_exit_with_two() {
    // no closed form beyond M = r + 1
    let out = duality(&[
        "verify-classical",
        "--instance",
        r#"{"a":["0","1/2"],"b":["1/3"],"m":[3]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    // a_1 - a_2 is an integer
    let out = duality(&[
        "verify-classical",
        "--instance",
        r#"{"a":["0","2"],"b":["1/3"],"m":[1]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = duality(&[
        "verify-q",
        "--instance",
        r#"{"q":"2","a":["1","3"],"b":["1/5","1/7"],"m":[1,0]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = duality(&["lemma-check", "--na", "2", "--nb", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = duality(&["suite", "--r-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = duality(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn float_check_outside_disc_is_rejected() {
    let out = duality(&[
        "verify-classical",
        "--instance",
        r#"{"a":["0","1/2"],"b":["1/3"],"m":[1]}"#,
        "--float-check",
        "0.5",
        "1e-9",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lemma_check_random_batch() {
    let out = duality(&["lemma-check", "--random", "50", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("50/50 pairs agree"));
    let a = duality(&["lemma-check", "--random", "5", "--seed", "9", "--json"]);
    let b = duality(&["lemma-check", "--random", "5", "--seed", "9", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 5);
}

#[test]
fn suite_honours_environment_overrides() {
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("env-suite.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_duality"))
        .arg("suite")
        .env("DUALITY_SEED", "5")
        .env("DUALITY_ORDER", "4")
        .env("DUALITY_PER_CELL", "1")
        .env("DUALITY_R_MAX", "3")
        .env("DUALITY_JSON_OUT", &path)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = std::fs::read_to_string(&path).unwrap();
    let series: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|r| r["kind"] == "series")
        .collect();
    assert_eq!(series.len(), 18);
    assert!(series.iter().all(|r| r["order"] == 4));
    assert!(stdout(&out).contains("generation errors"));
}
