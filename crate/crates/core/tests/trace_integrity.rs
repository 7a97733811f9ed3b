use domcheck_core::audit::{audit_pair, audit_pair_with, AuditOptions, TieBreak};
use domcheck_core::domination::SolverBudget;
use domcheck_core::trace::{verify_trace, verify_trace_with, ProofTrace, VerifyOptions};
use domcheck_core::{Family, Graph};

fn trace_for(g: Family, h: Family) -> ProofTrace {
    audit_pair(
        &g.build().unwrap(),
        &h.build().unwrap(),
        SolverBudget::default(),
    )
    .unwrap()
    .1
}

fn failing(trace: &ProofTrace) -> Vec<&'static str> {
    verify_trace(trace).failures().map(|o| o.name).collect()
}

#[test]
fn square_trace_contents() {
    let t = trace_for(Family::Complete(2), Family::Complete(2));
    assert_eq!(
        (t.gamma_g, t.gamma_h, t.gamma_product, t.gamma_r_product),
        (1, 1, 2, 3)
    );
    assert_eq!(t.f.v1.len() + 2 * t.f.v2.len(), 3);
    assert_eq!(t.partition.blocks, vec![vec![0, 1]]);
    assert_eq!(t.n, t.c.len());
    assert!(t.defects.is_empty());
    assert!(t.checks.all());
}

#[test]
fn json_round_trip_and_verify() {
    for (g, h) in [
        (Family::Complete(2), Family::Complete(2)),
        (Family::Cycle(4), Family::Cycle(4)),
        (Family::Path(3), Family::Star(4)),
        (Family::Path(1), Family::Cycle(5)),
    ] {
        let t = trace_for(g.clone(), h.clone());
        let json = t.to_json();
        let back = ProofTrace::from_json(&json).unwrap();
        assert_eq!(back, t);
        let v = verify_trace(&back);
        assert!(
            v.passed(),
            "{g} x {h}: {:?}",
            v.failures().collect::<Vec<_>>()
        );
    }
}

#[test]
fn json_layout_uses_pairs_and_sorted_lists() {
    let t = trace_for(Family::Complete(2), Family::Complete(2));
    let value: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    assert_eq!(value["schema"], "domcheck.proof-trace/v1");
    assert_eq!(value["g"]["graph6"], "A_");
    let v2 = value["f"]["v2"].as_array().unwrap();
    assert!(v2.iter().all(|p| p.as_array().unwrap().len() == 2));
    assert!(value["checks"]["counting_identity"].as_bool().unwrap());
}

#[test]
fn recheck_optimality() {
    let t = trace_for(Family::Cycle(4), Family::Path(3));
    let v = verify_trace_with(
        &t,
        VerifyOptions {
            recheck_optimality: Some(SolverBudget::default()),
        },
    );
    assert!(v.passed());
    let mut wrong = t.clone();
    wrong.gamma_product += 1;
    wrong.bounds.clark_suen_bound += 2;
    let v = verify_trace_with(
        &wrong,
        VerifyOptions {
            recheck_optimality: Some(SolverBudget::default()),
        },
    );
    assert!(!v.outcome("optimality").unwrap().passed);
}

#[test]
fn removing_q_member_breaks_counting_identity() {
    let mut t = trace_for(Family::Cycle(4), Family::Cycle(4));
    let col = t.per_column.iter_mut().find(|c| !c.q.is_empty()).unwrap();
    col.q.pop();
    let bad = failing(&t);
    assert!(bad.contains(&"counting_identity"), "{bad:?}");
    assert!(bad.contains(&"recorded_sets"), "{bad:?}");
}

#[test]
fn altering_n_is_detected() {
    let mut t = trace_for(Family::Cycle(4), Family::Cycle(4));
    t.n += 1;
    assert!(failing(&t).contains(&"counting_identity"));
}

#[test]
fn altering_weight_is_detected() {
    let mut t = trace_for(Family::Complete(2), Family::Complete(2));
    let moved = t.f.v2.pop().unwrap();
    t.f.v1.push(moved);
    t.f.v1.sort();
    let bad = failing(&t);
    assert!(bad.contains(&"weight_consistency"), "{bad:?}");

    let mut t = trace_for(Family::Complete(2), Family::Complete(2));
    t.gamma_r_product = 2;
    assert!(failing(&t).contains(&"weight_consistency"));
}

#[test]
fn other_corruptions() {
    let base = trace_for(Family::Path(3), Family::Cycle(4));

    let mut t = base.clone();
    t.c.pop();
    assert!(failing(&t).contains(&"counting_identity"));

    let mut t = base.clone();
    t.partition.blocks[0].clear();
    assert!(failing(&t).contains(&"partition_valid"));

    let mut t = base.clone();
    t.gamma_h_witness.clear();
    assert!(failing(&t).contains(&"certificate_gamma_h"));

    let mut t = base.clone();
    t.checks.lower_bound = false;
    assert!(failing(&t).contains(&"recorded_verdicts"));

    let mut t = base.clone();
    t.schema = "something-else".into();
    assert!(failing(&t).contains(&"schema"));

    let mut t = base.clone();
    t.g.graph6 = "A".into();
    assert_eq!(failing(&t), vec!["graphs"]);

    let mut t = base.clone();
    t.f.v0.pop();
    assert!(failing(&t).contains(&"f_partition"));
}

#[test]
fn schema_mismatch_rejected_on_parse() {
    let t = trace_for(Family::Complete(2), Family::Complete(2));
    let json = t
        .to_json()
        .replace("domcheck.proof-trace/v1", "domcheck.proof-trace/v0");
    assert!(ProofTrace::from_json(&json).is_err());
    assert!(ProofTrace::from_json("{").is_err());
}

#[test]
fn alternative_tie_breaks_verify() {
    let g = Family::Cycle(5).build().unwrap();
    let h = Graph::new(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
    for rule in [TieBreak::Largest, TieBreak::Seeded(1), TieBreak::Seeded(2)] {
        let options = AuditOptions {
            tie_break: rule,
            ..AuditOptions::default()
        };
        let (report, trace) = audit_pair_with(&g, &h, SolverBudget::default(), &options).unwrap();
        assert!(report.passed(), "{rule}");
        assert_eq!(trace.partition.tie_break, rule.to_string());
        assert!(verify_trace(&trace).passed(), "{rule}");
    }
}
