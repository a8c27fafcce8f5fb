//! End-to-end acceptance gate: one test per reproducibility criterion,
//! each printing a single pass/fail line and asserting a full pass.

use widecolor::report::{run_criterion, CriterionStatus, ReportConfig};

fn gate(id: u32) {
    let cfg = ReportConfig::default();
    let r = run_criterion(id, &cfg);
    let tag = match r.status {
        CriterionStatus::Pass => "PASS",
        CriterionStatus::Fail => "FAIL",
        CriterionStatus::Unconfirmed => "UNCONFIRMED",
    };
    println!("criterion {}: {} — {} ({} ms)", r.id, tag, r.title, r.millis);
    for c in &r.checks {
        if c.status != CriterionStatus::Pass {
            println!("    {:?} {}: {}", c.status, c.label, c.detail);
        }
    }
    assert_eq!(r.status, CriterionStatus::Pass, "criterion {} did not pass", id);
}

#[test]
fn criterion_1_kneser_maps_verify_across_the_grid() {
    gate(1);
}

#[test]
fn criterion_2_two_fold_chromatic_numbers_exact_with_refutations() {
    gate(2);
}

#[test]
fn criterion_3_chromatic_number_equals_position_count() {
    gate(3);
}

#[test]
fn criterion_4_counts_cycles_odd_girth() {
    gate(4);
}

#[test]
fn criterion_5_encodings_agree_edge_for_edge() {
    gate(5);
}

#[test]
fn criterion_6_mycielskian_suite() {
    gate(6);
}

#[test]
fn criterion_7_fractional_suite() {
    gate(7);
}

#[test]
fn criterion_8_criticality_sandwich_degrees() {
    gate(8);
}

#[test]
fn criterion_9_oracle_soundness() {
    gate(9);
}
