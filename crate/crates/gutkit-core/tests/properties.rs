//! Property tests for the exact-arithmetic invariants: dimension
//! conservation, Weyl symmetry, conjugation equivariance, index
//! additivity, and the closed-form running laws.

use gutkit_core::liealg::{
    branch, conjugate, dynkin_index, find_embedding, weight_system, weyl_dimension, AlgebraId,
    BranchTerm, Irrep, RootSystem,
};
use gutkit_core::rg::{mssm_betas, run, sm_betas, CouplingState, RunPlan};
use num_rational::Ratio;
use proptest::prelude::*;

fn alg(name: &str) -> AlgebraId {
    AlgebraId::parse(name).unwrap()
}

/// Small label vectors keep every dimension far below the weight cap.
fn small_labels(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..3, rank).prop_filter("nontrivial", |v| v.iter().sum::<i64>() > 0)
}

fn sort_terms(mut terms: Vec<BranchTerm>) -> Vec<BranchTerm> {
    terms.sort_by_key(|t| {
        (
            t.irreps.iter().map(|r| r.labels().to_vec()).collect::<Vec<_>>(),
            t.charges.clone(),
        )
    });
    terms
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn freudenthal_total_equals_weyl_dimension(labels in small_labels(4)) {
        let r = Irrep::new(alg("SU(5)"), labels).unwrap();
        prop_assume!(weyl_dimension(&r).unwrap() <= 10_000);
        let ws = weight_system(&r).unwrap();
        prop_assert_eq!(ws.total(), weyl_dimension(&r).unwrap());
    }

    #[test]
    fn weight_systems_are_weyl_symmetric(labels in small_labels(3)) {
        let r = Irrep::new(alg("SU(4)"), labels).unwrap();
        prop_assume!(weyl_dimension(&r).unwrap() <= 5_000);
        let rs = RootSystem::new(r.algebra());
        let ws = weight_system(&r).unwrap();
        for i in 0..3 {
            for (w, &m) in ws.entries() {
                prop_assert_eq!(ws.multiplicity(&rs.simple_reflection(w, i)), m);
            }
        }
    }

    #[test]
    fn branching_conserves_dimension(labels in small_labels(5)) {
        let r = Irrep::new(alg("SO(10)"), labels).unwrap();
        prop_assume!(weyl_dimension(&r).unwrap() <= 20_000);
        let e = find_embedding(alg("SO(10)"), &[alg("SU(5)")], 1).unwrap();
        let b = branch(&e, &r).unwrap();
        prop_assert_eq!(b.dimension_sum(), weyl_dimension(&r).unwrap());
    }

    #[test]
    fn branching_commutes_with_conjugation(labels in small_labels(5)) {
        let r = Irrep::new(alg("SO(10)"), labels).unwrap();
        prop_assume!(weyl_dimension(&r).unwrap() <= 20_000);
        let e = find_embedding(alg("SO(10)"), &[alg("SU(5)")], 1).unwrap();
        let direct = sort_terms(branch(&e, &conjugate(&r)).unwrap().terms().to_vec());
        let conjugated = sort_terms(
            branch(&e, &r)
                .unwrap()
                .terms()
                .iter()
                .map(BranchTerm::conjugate)
                .collect(),
        );
        prop_assert_eq!(direct, conjugated);
    }

    #[test]
    fn dynkin_index_is_additive_over_branchings(labels in small_labels(5)) {
        let r = Irrep::new(alg("SO(10)"), labels).unwrap();
        prop_assume!(weyl_dimension(&r).unwrap() <= 20_000);
        let e = find_embedding(alg("SO(10)"), &[alg("SU(5)")], 1).unwrap();
        let b = branch(&e, &r).unwrap();
        let mut total = Ratio::from_integer(0);
        for t in b.terms() {
            total += dynkin_index(&t.irreps[0]).unwrap()
                * Ratio::from_integer(t.multiplicity as i64);
        }
        prop_assert_eq!(total, dynkin_index(&r).unwrap() * e.embedding_index(0));
    }

    #[test]
    fn conjugation_preserves_dimension_and_involutes(
        labels in small_labels(6),
    ) {
        let r = Irrep::new(alg("E6"), labels).unwrap();
        let c = conjugate(&r);
        prop_assert_eq!(weyl_dimension(&r).unwrap(), weyl_dimension(&c).unwrap());
        prop_assert_eq!(conjugate(&c), r);
    }

    #[test]
    fn running_composes_and_reverses(
        mid_exp in 3.0f64..10.0,
        top_exp in 10.0f64..16.0,
    ) {
        let initial = CouplingState::from_electroweak(91.19, 0.231, 127.9, 0.118).unwrap();
        let plan =
            RunPlan::new(initial, vec![(91.19, sm_betas()), (1000.0, mssm_betas())]).unwrap();
        let mid = 10f64.powf(mid_exp);
        let top = 10f64.powf(top_exp);
        let direct = run(&plan, top).unwrap();
        let half = run(&plan, mid).unwrap();
        let via = run(&RunPlan::new(half, plan.thresholds.clone()).unwrap(), top).unwrap();
        for i in 0..3 {
            prop_assert!(
                (direct.inv_alpha[i] - via.inv_alpha[i]).abs()
                    <= 1e-12 * direct.inv_alpha[i].abs().max(1.0)
            );
        }
        let back = run(&RunPlan::new(direct, plan.thresholds.clone()).unwrap(), 91.19).unwrap();
        for i in 0..3 {
            prop_assert!(
                (back.inv_alpha[i] - plan.initial.inv_alpha[i]).abs()
                    <= 1e-12 * plan.initial.inv_alpha[i]
            );
        }
    }
}
