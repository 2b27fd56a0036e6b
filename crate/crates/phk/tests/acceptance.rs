//! Acceptance suite: every criterion runs exactly and prints one line.
//!
//! All equalities are exact (zero tolerance); each test fails when its
//! criterion reports any mismatch.

use phk::verify::*;

fn assert_criterion(r: CriterionResult) {
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_hecke_ybe_relations() {
    assert_criterion(criterion_1());
}

#[test]
fn criterion_02_kl_golden_products() {
    assert_criterion(criterion_2());
}

#[test]
fn criterion_03_vanishing_property() {
    assert_criterion(criterion_3());
}

#[test]
fn criterion_04_expansion_identity() {
    assert_criterion(criterion_4());
}

#[test]
fn criterion_05_expansion_goldens() {
    assert_criterion(criterion_5());
}

#[test]
fn criterion_06_corollary_tau_powers() {
    assert_criterion(criterion_6());
}

#[test]
fn criterion_07_printed_evaluations() {
    assert_criterion(criterion_7());
}

#[test]
fn criterion_08_homogeneous_limit() {
    assert_criterion(criterion_8());
}

#[test]
fn criterion_09_zeilberger_dfzj() {
    assert_criterion(criterion_9());
}

#[test]
fn criterion_10_punctured_three_routes() {
    assert_criterion(criterion_10());
}

#[test]
fn criterion_11_schubert_goldens() {
    assert_criterion(criterion_11());
}

#[test]
fn criterion_12_three_route_equality() {
    assert_criterion(criterion_12());
}

#[test]
fn criterion_13_nilp_goldens() {
    assert_criterion(criterion_13());
}

#[test]
fn criterion_14_bijection_transport() {
    assert_criterion(criterion_14());
}
