use buctest_core::exact::{compute_w, is_blowup_collection, verify_evidence, WitnessReport};
use buctest_core::generators::{gen_far_cycle_mismatch, gen_high_degree, gen_member, member_labels};
use buctest_core::graph::{BaseGraphProfile, CollectionView, Graph, WitnessBound};
use buctest_core::oracle::{open_adaptive, open_plan};
use buctest_core::testers::{
    adaptive_buc_test, combined_test, low_degree_test, nonadaptive_buc_test, run_tester,
    AdaptiveSizes, Decision, Evidence, NonAdaptiveSizes, TesterKind, TesterParams, Variant,
};
use buctest_core::Error;

fn c4() -> BaseGraphProfile {
    BaseGraphProfile::new(Graph::cycle(4)).with_w(compute_w(&Graph::cycle(4), 7).unwrap())
}

fn sound(g: &Graph, r: &WitnessReport, p: &BaseGraphProfile) -> bool {
    verify_evidence(g, r, p.graph(), p.delta())
}

#[test]
fn low_degree_accepts_empty_graph() {
    let g = Graph::empty(2000);
    let params = TesterParams::default();
    for seed in 0..200 {
        let v = low_degree_test(open_plan(&g), 0.01, 2.0, 0.25, &params, seed).unwrap();
        assert!(v.is_accept());
        assert_eq!(v.premature_reads, 0);
    }
}

#[test]
fn low_degree_rejects_heavy_cliques() {
    // cliques of ⌈4cεN⌉ = 160 vertices
    let n = 2000;
    let k = 160;
    let g = Graph::from_fn(n, |u, v| u / k == v / k);
    let params = TesterParams::default();
    let rejects = (0..200)
        .filter(|&seed| !low_degree_test(open_plan(&g), 0.01, 2.0, 0.25, &params, seed).unwrap().is_accept())
        .count();
    assert!(rejects >= 190, "{rejects}");
}

#[test]
fn low_degree_accepts_degree_at_bound() {
    // disjoint K_{40,40}: every degree is exactly cεN = 40
    let n = 2000;
    let g = Graph::from_fn(n, |u, v| u / 80 == v / 80 && (u % 80 < 40) != (v % 80 < 40));
    assert_eq!(g.max_degree(), 40);
    let params = TesterParams::default();
    let accepts = (0..200)
        .filter(|&seed| low_degree_test(open_plan(&g), 0.01, 2.0, 0.25, &params, seed).unwrap().is_accept())
        .count();
    assert!(accepts >= 160, "{accepts}");
}

#[test]
fn low_degree_argument_errors() {
    let g = Graph::empty(10);
    let p = TesterParams::default();
    assert!(matches!(low_degree_test(open_plan(&g), 0.0, 2.0, 0.5, &p, 0), Err(Error::Argument(_))));
    assert!(matches!(low_degree_test(open_plan(&g), 0.1, 1.0, 0.5, &p, 0), Err(Error::Argument(_))));
    assert!(matches!(low_degree_test(open_plan(&g), 0.1, 2.0, 1.5, &p, 0), Err(Error::Argument(_))));
}

#[test]
fn degree_evidence_exceeds_threshold() {
    let g = gen_high_degree(2000, 0.01, 2.0, 1).unwrap();
    let v = low_degree_test(open_plan(&g), 0.01, 2.0, 0.25, &TesterParams::default(), 3).unwrap();
    match v.evidence {
        Some(Evidence::Degree(r)) => assert!(r.estimate > r.threshold),
        other => panic!("{other:?}"),
    }
}

#[test]
fn buc_testers_accept_members() {
    let p = c4();
    let params = TesterParams::default();
    for seed in 0..10 {
        let (g, _) = gen_member(p.graph(), 500, 0.02, 2.0, seed).unwrap();
        let a = adaptive_buc_test(open_adaptive(&g, seed), 0.02, &p, 2.0, &params).unwrap();
        let b = nonadaptive_buc_test(open_plan(&g), 0.02, &p, 2.0, &params, seed).unwrap();
        assert!(a.is_accept() && b.is_accept());
        let sa = AdaptiveSizes::new(500, 0.02, &p, 2.0, &params).unwrap();
        let sb = NonAdaptiveSizes::new(500, 0.02, &p, 2.0, &params).unwrap();
        assert!(a.distinct_queries() <= sa.query_bound(500));
        assert!(b.distinct_queries() <= sb.query_bound(500));
    }
}

#[test]
fn buc_testers_reject_far_instance_with_sound_evidence() {
    let p = c4();
    let params = TesterParams::default();
    let g = gen_far_cycle_mismatch(4, 2000, 0.01, 7).unwrap();
    let mut rejects = [0; 2];
    for seed in 0..20 {
        let a = adaptive_buc_test(open_adaptive(&g, seed), 0.01, &p, 2.0, &params).unwrap();
        let b = nonadaptive_buc_test(open_plan(&g), 0.01, &p, 2.0, &params, seed).unwrap();
        for (i, v) in [a, b].iter().enumerate() {
            if let Some(r) = v.witness() {
                assert!(sound(&g, r, &p));
                rejects[i] += 1;
            }
        }
    }
    assert!(rejects[0] >= 14 && rejects[1] >= 14, "{rejects:?}");
}

#[test]
fn nonadaptive_witness_is_small() {
    let p = c4();
    let g = gen_far_cycle_mismatch(4, 2000, 0.01, 7).unwrap();
    for seed in 0..10 {
        let v = nonadaptive_buc_test(open_plan(&g), 0.01, &p, 2.0, &TesterParams::default(), seed).unwrap();
        if let Some(WitnessReport::InducedSubgraph { vertices }) = v.witness() {
            assert!(vertices.len() <= 4);
            let sub = Graph::from_adjacency(&g, vertices);
            assert!(is_blowup_collection(&sub, p.graph()).is_none());
        }
    }
}

/// Centers with three pairwise-distinguished neighbor classes.
#[test]
fn stage_one_finds_partitionability_witness() {
    // blow-up of K_{1,3} with leaves distinguished by private blocks
    let base = Graph::from_edge_list(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
    let (g, _) = base.blow_up(&[20; 7]).unwrap();
    let p = c4();
    let params = TesterParams::default();
    let v = adaptive_buc_test(open_adaptive(&g, 1), 0.05, &p, 2.0, &params).unwrap();
    let r = v.witness().expect("rejects");
    assert!(matches!(r, WitnessReport::Partitionability { .. }));
    assert!(sound(&g, r, &p));
    let v = nonadaptive_buc_test(open_plan(&g), 0.05, &p, 2.0, &params, 1).unwrap();
    let r = v.witness().expect("rejects");
    assert!(matches!(r, WitnessReport::Partitionability { .. }));
    assert!(sound(&g, r, &p));
}

#[test]
fn missing_w_is_a_config_error() {
    let p = BaseGraphProfile::new(Graph::cycle(5));
    let g = Graph::cycle(5);
    let params = TesterParams::default();
    assert!(matches!(
        adaptive_buc_test(open_adaptive(&g, 0), 0.1, &p, 2.0, &params),
        Err(Error::Config(_))
    ));
    assert!(matches!(
        nonadaptive_buc_test(open_plan(&g), 0.1, &p, 2.0, &params, 0),
        Err(Error::Config(_))
    ));
}

#[test]
fn determinism() {
    let p = c4();
    let params = TesterParams::default();
    let g = gen_far_cycle_mismatch(4, 500, 0.02, 2).unwrap();
    for kind in TesterKind::ALL {
        let a = run_tester(kind, &g, 0.02, &p, 2.0, &params, 11).unwrap();
        let b = run_tester(kind, &g, 0.02, &p, 2.0, &params, 11).unwrap();
        assert_eq!(a.decision, b.decision);
        assert_eq!(a.evidence, b.evidence);
        assert_eq!(a.ledger.digest(), b.ledger.digest());
    }
}

#[test]
fn combined_on_three_workloads() {
    let p = c4();
    let params = TesterParams::default();
    let (member, _) = gen_member(p.graph(), 500, 0.02, 2.0, 3).unwrap();
    let far = gen_far_cycle_mismatch(4, 500, 0.02, 3).unwrap();
    let heavy = gen_high_degree(500, 0.02, 2.0, 3).unwrap();
    for variant in [Variant::Adaptive, Variant::NonAdaptive] {
        for seed in 0..5 {
            let m = combined_test(variant, &member, 0.02, &p, 2.0, &params, seed).unwrap();
            assert_eq!(m.decision, Decision::Accept);
            let h = combined_test(variant, &heavy, 0.02, &p, 2.0, &params, seed).unwrap();
            assert!(matches!(h.evidence, Some(Evidence::Degree(_))));
            let f = combined_test(variant, &far, 0.02, &p, 2.0, &params, seed).unwrap();
            if let Some(r) = f.witness() {
                assert!(sound(&far, r, &p));
            }
            assert_eq!(f.premature_reads, 0);
        }
    }
}

#[test]
fn implicit_instances_run_at_large_n() {
    let p = c4();
    let params = TesterParams::scaling_profile();
    let labels = member_labels(p.graph(), 1 << 22, 1.0 / 50.0, 2.0, 1).unwrap();
    let view = CollectionView::new(p.graph(), &labels);
    let a = run_tester(TesterKind::Adaptive, &view, 1.0 / 50.0, &p, 2.0, &params, 1).unwrap();
    let b = run_tester(TesterKind::NonAdaptive, &view, 1.0 / 50.0, &p, 2.0, &params, 1).unwrap();
    assert!(a.is_accept() && b.is_accept());
    assert!(a.distinct_queries() > 0 && b.distinct_queries() > 0);
}

#[test]
fn c5_profile_accepts_members() {
    let c5 = Graph::cycle(5);
    let p = BaseGraphProfile::new(c5.clone()).with_w(WitnessBound { value: 6, exact: false });
    let params = TesterParams {
        w_override: Some(6),
        ..TesterParams::default()
    };
    let (g, _) = gen_member(&c5, 500, 0.02, 2.0, 1).unwrap();
    assert!(run_tester(TesterKind::Adaptive, &g, 0.02, &p, 2.0, &params, 0).unwrap().is_accept());
    assert!(run_tester(TesterKind::NonAdaptive, &g, 0.02, &p, 2.0, &params, 0).unwrap().is_accept());
}
