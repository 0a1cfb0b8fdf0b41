//! End-to-end binary tests: spawn the real executable and check stdout,
//! stderr and the exit-code contract (0 success, 1 usage, 2 math failure).

use std::process::{Command, Output};

fn ecrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecrep"))
        .args(args)
        .env_remove("ECREP_BITS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(out).trim()).expect("stdout is one JSON document")
}

#[test]
fn count_naive_emits_the_known_count() {
    let out = ecrep(&["count", "--p", "5", "--a", "1", "--b", "1", "--method", "naive", "--output", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["command"], "count");
    assert_eq!(v["p"], 5);
    assert_eq!(v["a"], 1);
    assert_eq!(v["b"], 1);
    assert_eq!(v["method"], "naive");
    assert_eq!(v["n_p"], 9);
    assert_eq!(v["hasse_ok"], true);
    assert_eq!(v["singular"], false);
    assert_eq!(v["bits"], 192);
    // Exact routes omit the residual instead of emitting null.
    assert!(v.get("residual").is_none());
    assert!(v.get("l_value").is_none());
}

#[test]
fn split_range_reports_the_cutoff_on_the_large_curve() {
    let out = ecrep(&[
        "count", "--p", "1087", "--a", "5", "--b", "37", "--method", "thm3", "--bits", "128",
        "--output", "json",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["n_p"], 1112);
    assert_eq!(v["l_value"], 9);
    assert_eq!(v["hasse_ok"], true);
    let residual: f64 = v["residual"].as_str().unwrap().parse().unwrap();
    assert!(residual < 1e-6, "residual {residual}");
}

#[test]
fn analytic_and_exact_routes_agree_through_the_binary() {
    let n_p = |method: &str| {
        let out = ecrep(&["count", "--p", "13", "--a", "2", "--b", "3", "--method", method, "--output", "json"]);
        assert!(out.status.success(), "{method}: {}", stderr(&out));
        json(&out)["n_p"].as_u64().unwrap()
    };
    let reference = n_p("naive");
    for method in ["legendre", "expsum", "thm2", "thm3"] {
        assert_eq!(n_p(method), reference, "method {method}");
    }
}

#[test]
fn composite_modulus_is_a_math_failure_not_a_usage_error() {
    let out = ecrep(&["count", "--p", "4", "--a", "1", "--b", "1", "--method", "naive"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("modulus"), "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn unknown_method_is_a_usage_error() {
    let out = ecrep(&["count", "--p", "5", "--a", "1", "--b", "1", "--method", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown method"));
}

#[test]
fn csv_is_reserved_for_the_grid_command() {
    let out = ecrep(&["count", "--p", "5", "--a", "1", "--b", "1", "--method", "naive", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("csv"));
}

#[test]
fn identity_below_two_is_a_usage_error() {
    let out = ecrep(&["identity", "--p", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("p >= 2"));
}

#[test]
fn identity_holds_at_a_composite_modulus() {
    let out = ecrep(&["identity", "--p", "12", "--output", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["p"], 12);
    for field in ["identity_sum", "abs_error", "q_sum", "r_sum"] {
        assert!(v[field].is_string(), "{field} missing");
    }
    let abs_error: f64 = v["abs_error"].as_str().unwrap().parse().unwrap();
    assert!(abs_error < 1e-20, "abs_error {abs_error}");
    // The flat count-record fields must be omitted here, not null.
    assert!(v.get("n_p").is_none());
    assert!(v.get("method").is_none());
}

#[test]
fn verify_suite_passes_and_csv_has_one_row_per_case() {
    let out = ecrep(&["verify", "--suite", "zeta", "--output", "csv"]);
    assert!(out.status.success());
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("suite,case,passed,detail"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    for row in rows {
        assert!(row.starts_with("\"zeta\","), "row: {row}");
        assert!(row.contains(",true,"), "row: {row}");
    }
}

#[test]
fn verify_rejects_unknown_suites() {
    let out = ecrep(&["verify", "--suite", "primes"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown suite"));
}

#[test]
fn seeded_spot_check_is_reproducible() {
    let run = || {
        let out = ecrep(&["verify", "--suite", "numerics", "--seed", "42", "--output", "json"]);
        assert!(out.status.success());
        stdout(&out)
    };
    let first = run();
    assert_eq!(first, run());
    let v: serde_json::Value = serde_json::from_str(first.trim()).unwrap();
    let cases = v.as_array().unwrap();
    assert!(cases.iter().any(|c| c["suite"] == "random"));
    assert!(cases.iter().all(|c| c["passed"] == true));
}

#[test]
fn env_var_sets_the_default_bits() {
    let out = Command::new(env!("CARGO_BIN_EXE_ecrep"))
        .args(["count", "--p", "7", "--a", "1", "--b", "0", "--method", "expsum", "--output", "json"])
        .env("ECREP_BITS", "96")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["bits"], 96);

    let out = Command::new(env!("CARGO_BIN_EXE_ecrep"))
        .args(["count", "--p", "7", "--a", "1", "--b", "0", "--method", "naive"])
        .env("ECREP_BITS", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // An explicit flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_ecrep"))
        .args(["count", "--p", "7", "--a", "1", "--b", "0", "--method", "naive", "--bits", "128", "--output", "json"])
        .env("ECREP_BITS", "96")
        .output()
        .unwrap();
    assert_eq!(json(&out)["bits"], 128);
}

#[test]
fn fracpart_sweep_reports_a_tiny_residual() {
    let out = ecrep(&["fracpart", "--p", "7", "--max-p", "40", "--output", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["p"], 7);
    let residual: f64 = v["residual"].as_str().unwrap().parse().unwrap();
    assert!(residual < 1e-20, "residual {residual}");
}

#[test]
fn gauss_sweep_rejects_a_composite_modulus() {
    let out = ecrep(&["gauss", "--p", "13", "--output", "json"]);
    assert!(out.status.success());
    let residual: f64 = json(&out)["residual"].as_str().unwrap().parse().unwrap();
    assert!(residual < 1e-40);

    let out = ecrep(&["gauss", "--p", "15"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    let out = ecrep(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("count"));
    let out = ecrep(&["count", "--p", "5"]);
    assert_eq!(out.status.code(), Some(1), "missing required flags are usage errors");
}
