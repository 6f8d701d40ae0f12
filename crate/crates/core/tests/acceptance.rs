//! The acceptance checklist as an integration test target: one test per
//! criterion, each printing the canonical one-line report. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.
//!
//! There is no tolerance anywhere: a criterion either holds exactly over
//! the rationals within its budget or its test fails with the collected
//! case-by-case detail.

use hypercl_core::selftest::{self, CriterionOutcome};

fn assert_criterion(outcome: CriterionOutcome) {
    println!("{}", outcome.line());
    assert!(
        outcome.passed,
        "criterion {} ({}) failed:\n  {}",
        outcome.index,
        outcome.name,
        outcome.failures.join("\n  ")
    );
}

#[test]
fn criterion_1_config_invariant_rank() {
    assert_criterion(selftest::criterion_config_invariants());
}

#[test]
fn criterion_2_bilinear_invariant() {
    assert_criterion(selftest::criterion_fixed_bilinear());
}

#[test]
fn criterion_3_d2_injectivity() {
    assert_criterion(selftest::criterion_d2_injectivity());
}

#[test]
fn criterion_4_product_h2_invariants() {
    assert_criterion(selftest::criterion_h2_product_invariants());
}

#[test]
fn criterion_5_fiber_dimensions() {
    assert_criterion(selftest::criterion_fiber_dimensions());
}

#[test]
fn criterion_6_boundary_enumeration() {
    assert_criterion(selftest::criterion_boundary_enumeration());
}

#[test]
fn criterion_7_ambient_pullback() {
    assert_criterion(selftest::criterion_ambient_pullback());
}

#[test]
fn criterion_8_independence_certificate() {
    assert_criterion(selftest::criterion_certificate());
}

#[test]
fn criterion_9_structural_identities() {
    assert_criterion(selftest::criterion_structural_identities());
}
