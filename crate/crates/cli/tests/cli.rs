//! End-to-end tests of the `hypercl` binary: output schema, exit codes,
//! flags, and the certificate emit/check round trip.

use std::process::{Command, Output};

use serde_json::Value;

fn hypercl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercl"))
        .args(args)
        .output()
        .expect("binary should run")
}

/// Runs with `--format json`, asserts the envelope shape, returns the value.
fn json(args: &[&str]) -> (Value, Output) {
    let mut full = args.to_vec();
    full.push("--format");
    full.push("json");
    let out = hypercl(&full);
    let value: Value = serde_json::from_slice(&out.stdout).expect("stdout should be valid JSON");
    for key in ["command", "g", "n", "result", "anchors"] {
        assert!(value.get(key).is_some(), "missing top-level key {key}");
    }
    assert!(value["anchors"].is_array());
    (value, out)
}

#[test]
fn rank_json_schema() {
    let (value, out) = json(&["rank", "3", "2"]);
    assert!(out.status.success());
    assert_eq!(value["command"], "rank");
    assert_eq!(value["g"], 3);
    assert_eq!(value["n"], 2);
    let result = &value["result"];
    assert_eq!(result["num_psi"], 2);
    assert_eq!(result["num_boundary"], 8);
    assert_eq!(result["rank_cl"], 10);
    assert_eq!(result["rank_pic_interior"], 2);
    assert_eq!(result["interior_matches_invariants"], true);
    assert_eq!(result["labels"].as_array().unwrap().len(), 10);
    assert_eq!(result["labels"][0], "psi_1");
}

#[test]
fn boundary_dedup_flag_changes_the_count() {
    let (canonical, out) = json(&["boundary", "3", "2"]);
    assert!(out.status.success());
    assert_eq!(canonical["result"]["count"], 8);
    assert_eq!(canonical["result"]["dedup"], "canonical");

    let (both, out) = json(&["boundary", "3", "2", "--no-symmetric-dedup"]);
    assert!(out.status.success());
    assert_eq!(both["result"]["count"], 10);
    assert_eq!(both["result"]["dedup"], "keep-both");
    assert_eq!(
        both["result"]["count"], both["result"]["count_closed_form"],
        "enumeration must agree with the closed form"
    );
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        &["rank", "4", "3", "--format", "json"][..],
        &["certify", "3", "2", "--format", "json"][..],
        &["totaro", "2", "2", "--format", "json"][..],
    ] {
        let a = hypercl(args);
        let b = hypercl(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "two runs of {args:?} differ");
    }
}

#[test]
fn exit_codes_cover_usage_guard_and_math_failure() {
    // Missing argument: usage error.
    let out = hypercl(&["rank", "3"]);
    assert_eq!(out.status.code(), Some(2));

    // Unknown subcommand: usage error.
    let out = hypercl(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // Outside the tested range without --force: rejected with a hint.
    let out = hypercl(&["rank", "7", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));

    // Same parameters with --force: runs.
    let out = hypercl(&["rank", "7", "1", "--force"]);
    assert_eq!(out.status.code(), Some(0));

    // g below the supported minimum: parameter error from the library.
    let out = hypercl(&["boundary", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certificate_emit_and_check_round_trip() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("cert.txt");
    let path_str = path.to_str().unwrap();

    let out = hypercl(&["certify", "3", "2", "--emit-certificate", path_str]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).expect("certificate file written");
    assert_eq!(text.lines().count(), 10, "one line per step");

    let (value, out) = json(&["certify", "3", "2", "--check-certificate", path_str]);
    assert!(out.status.success());
    assert_eq!(value["result"]["verdict"], "certified");
    assert_eq!(value["result"]["numeric_rank_matches"], true);
    assert_eq!(value["result"]["eliminated"].as_array().unwrap().len(), 10);

    // Dropping a step leaves generators uncovered: math failure, exit 1.
    let truncated: String = text
        .lines()
        .filter(|l| !l.starts_with("irr-pencil"))
        .map(|l| format!("{l}\n"))
        .collect();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, truncated).unwrap();
    let out = hypercl(&[
        "certify",
        "3",
        "2",
        "--check-certificate",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAILED"));

    // An unreadable path is a usage error, not a math failure.
    let out = hypercl(&[
        "certify",
        "3",
        "2",
        "--check-certificate",
        "/nonexistent/c.txt",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_with_and_without_marking_count() {
    let (value, out) = json(&["invariants", "2"]);
    assert!(out.status.success());
    assert_eq!(value["n"], Value::Null);
    assert_eq!(value["result"]["h1_fixed_vectors"]["dimension"], 0);
    assert_eq!(value["result"]["bilinear_forms"]["dimension"], 1);
    assert_eq!(value["result"]["bilinear_forms"]["ambient_dim"], 16);
    assert!(value["result"].get("h2_product").is_none());

    let (value, out) = json(&["invariants", "2", "3"]);
    assert!(out.status.success());
    // n + C(n,2) invariant classes upstairs, n on the configuration space.
    assert_eq!(value["result"]["h2_product"]["dimension"], 6);
    assert_eq!(value["result"]["h2_config"]["dimension"], 3);
    assert_eq!(
        value["result"]["h2_config"]["gamma_spans_w_invariant"],
        true
    );

    // Bare invariants run the pure symplectic layer, tested up to g = 10.
    let (value, out) = json(&["invariants", "10"]);
    assert!(out.status.success());
    assert_eq!(value["result"]["bilinear_forms"]["dimension"], 1);
}

#[test]
fn totaro_reports_page_ranks_and_betti_numbers() {
    let (value, out) = json(&["totaro", "2", "3"]);
    assert!(out.status.success());
    let result = &value["result"];
    assert_eq!(result["e_dims"].as_array().unwrap().len(), 9);
    assert_eq!(result["config"]["h0"], 1);
    assert_eq!(result["config"]["h1"], 12);

    let ranks = result["d2_ranks"].as_array().unwrap();
    assert_eq!(ranks.len(), 3);
    let d01 = ranks.iter().find(|r| r["p"] == 0 && r["q"] == 1).unwrap();
    assert_eq!(d01["rank"], 3, "rank of the first differential is C(n,2)");
    let d02 = ranks.iter().find(|r| r["p"] == 0 && r["q"] == 2).unwrap();
    assert_eq!(
        d02["rank"], d02["cols"],
        "the (0,2) differential is injective"
    );
}

#[test]
fn selftest_passes_and_reports_every_criterion() {
    let (value, out) = json(&["selftest"]);
    assert!(out.status.success());
    assert_eq!(value["g"], Value::Null);
    assert_eq!(value["result"]["passed"], true);
    let criteria = value["result"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 9);
    for c in criteria {
        assert_eq!(c["passed"], true, "criterion {} failed", c["index"]);
        assert!(c["cases"].as_u64().unwrap() > 0);
    }
}
