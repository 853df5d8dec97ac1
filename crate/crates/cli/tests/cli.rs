use std::process::{Command, Output};

use derham_core::VerificationReport;
use serde_json::Value;

fn derham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derham"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn derham_entry(v: &Value, p: u64) -> &Value {
    v["derham"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["p"] == p)
        .unwrap_or_else(|| panic!("no derham block for p = {p}"))
}

#[test]
fn quadric_verifies() {
    let out = derham(&[
        "verify",
        "x^2+y^2+z^2",
        "--vars",
        "x,y,z",
        "--weights",
        "1,1,1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["theorem"]["status"], "verified");
    assert_eq!(derham_entry(&v, 2)["dim"], 1);
    assert!(stderr(&out).is_empty());
}

#[test]
fn non_isolated_singularity_is_not_a_failure() {
    let out = derham(&["verify", "x^2*y", "--vars", "x,y,z", "--weights", "1,1,1"]);
    assert_eq!(code(&out), 4);
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: kind=hypothesis_not_met"));
    assert!(stdout(&out).contains("status: hypothesis_not_met"));
}

#[test]
fn parse_errors_are_positioned() {
    let out = derham(&["check", "x^2+"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: kind=parse position=5 "), "{err}");
    assert!(stdout(&out).is_empty());
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["check", "x^2+y^3"][..],
        &["check", "x^2+y^2", "--weights", "1,1,1"],
        &["check", "x^2+y^2", "--weights", "0,1"],
        &["verify", "x^2+q^2", "--vars", "x,y"],
        &["verify", "0"],
        &["derham", "x^2+y^2+z^2", "--p", "0"],
        &["jkoszul", "x^2+y^2", "--p", "1", "--t-range", "5..2"],
        &["nonsense"],
    ] {
        let out = derham(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
        let err = stderr(&out);
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: kind="), "{err}");
    }
}

#[test]
fn variables_are_inferred() {
    let out = derham(&["verify", "z^2+x^2+y^2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["input"]["vars"], serde_json::json!(["z", "x", "y"]));
    assert_eq!(v["input"]["weights"], serde_json::json!([1, 1, 1]));
}

#[test]
fn json_is_byte_stable_and_round_trips() {
    let args = ["verify", "x^3+y^3+z^3", "--format", "json"];
    let a = derham(&args);
    let b = derham(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let report: VerificationReport = serde_json::from_str(&text).unwrap();
    let mut again = serde_json::to_string_pretty(&report).unwrap();
    again.push('\n');
    assert_eq!(again, text);
    assert!(report.timing.is_none());
}

#[test]
fn timing_is_opt_in() {
    let out = derham(&["verify", "x^2+y^2+z^2", "--format", "json", "--timing"]);
    assert!(json(&out)["timing"]["total_ms"].is_u64());
}

#[test]
fn empty_scans_keep_their_field() {
    let out = derham(&["verify", "x^2+y^2+z^2", "--format", "json"]);
    let v = json(&out);
    let p2 = v["jacobian"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["p"] == 2)
        .unwrap();
    assert_eq!(p2["dims"], serde_json::json!({}));
}

#[test]
fn fermat_quartic_report() {
    let out = derham(&["verify", "x^4+y^4+z^4+w^4", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(derham_entry(&v, 2)["dim"], 0);
    assert_eq!(derham_entry(&v, 3)["dim"], 1);

    let out = derham(&["verify", "x^4+y^4+z^4+w^4", "--format", "table"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "H_{n-1}(∂;R_f)  1"), "{text}");
}

#[test]
fn not_stabilized_exits_three() {
    let out = derham(&[
        "derham",
        "x^3+y^3+z^3",
        "--p",
        "2",
        "--pole-cap",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).starts_with("error: kind=not_stabilized"));
    assert_eq!(json(&out)["status"], "not_stabilized");
}

#[test]
fn derham_subcommand() {
    let out = derham(&["derham", "x^3+y^3+z^3", "--p", "1", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["pole_cap"], 4);
    assert_eq!(v["auto_cap"], true);
    assert_eq!(v["filtration"]["injective"], true);

    let out = derham(&[
        "derham",
        "x^2+y^2+z^2",
        "--p",
        "3",
        "--internal-degree",
        "-3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["dim"], 1);
}

#[test]
fn jkoszul_and_milnor() {
    let out = derham(&[
        "jkoszul",
        "x^3+y^3+z^3",
        "--p",
        "1",
        "--t-range",
        "2..7",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(
        v["dims"],
        serde_json::json!({"2": 0, "3": 1, "4": 3, "5": 3, "6": 1, "7": 0})
    );

    let out = derham(&[
        "jkoszul",
        "x^3+y^3+z^3",
        "--p",
        "2",
        "--t",
        "-1",
        "--format",
        "json",
    ]);
    assert_eq!(json(&out)["dims"], serde_json::json!({"-1": 0}));

    let out = derham(&["milnor", "x^3+y^3+z^3", "--format", "json"]);
    assert_eq!(json(&out)["hilbert"], serde_json::json!([1, 3, 3, 1, 0]));
}

#[test]
fn check_reports_smoothness() {
    let out = derham(&[
        "check",
        "x^2+y^3+z^6",
        "--weights",
        "3,2,1",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["smooth_isolated"], true);
    assert_eq!(v["milnor"]["top_degree"], 6);
    assert_eq!(v["milnor"]["milnor_number"], 10);

    let out = derham(&["check", "x^2*y+y^3", "--vars", "x,y,z"]);
    assert_eq!(code(&out), 4);
}

#[test]
fn selftest_is_seeded() {
    let a = derham(&[
        "selftest", "--seed", "5", "--cases", "10", "--format", "json",
    ]);
    let b = derham(&[
        "selftest", "--seed", "5", "--cases", "10", "--format", "json",
    ]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["all_passed"], true);
}
