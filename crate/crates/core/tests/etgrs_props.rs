mod common;

use common::{field, random_params};
use etgrs_core::etgrs::{
    check_amds, check_dual_amds, check_mds, etgrs_code, extension_target, extension_vector, generator_matrix,
    punctured_code, punctured_generator, twisted_encode, Criterion, ExtensionSource, FindingKind,
};
use etgrs_core::{classify_full, search, EtgrsParams, Error, Mode, SearchOptions, Verdict};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = 1 << 24;

fn gf13_n5_k3() -> EtgrsParams {
    EtgrsParams::with_unit_multipliers(&field(13), 3, vec![1, 2, 5, 6, 7], 9, 9).unwrap()
}

#[test]
fn gf13_n5_k3_generator() {
    let g = generator_matrix(&gf13_n5_k3());
    let expected = "1 1 1 1 1 0 0 1\n1 2 5 6 7 0 1 0\n10 6 5 2 5 1 0 9\n";
    assert_eq!(g.to_text(), expected);
    assert_eq!(punctured_generator(&gf13_n5_k3()).cols(), 7);
}

#[test]
fn parameter_validation() {
    let f = field(13);
    let err = |k, alpha: Vec<u32>, v: Vec<u32>, eta| EtgrsParams::new(&f, k, alpha, v, eta, 0).unwrap_err();
    assert!(matches!(err(2, vec![1, 2, 3], vec![1; 3], 1), Error::InvalidParams(_)));
    assert!(matches!(err(4, vec![1, 2, 3], vec![1; 3], 1), Error::InvalidParams(_)));
    assert!(matches!(err(3, vec![1, 2, 1], vec![1; 3], 1), Error::RepeatedValue { first: 0, second: 2 }));
    assert!(matches!(err(3, vec![1, 2, 3], vec![1, 0, 1], 1), Error::ZeroMultiplier(1)));
    assert!(matches!(err(3, vec![1, 2, 3], vec![1; 3], 0), Error::InvalidParams(_)));
    let too_many: Vec<u32> = (0..7).collect();
    assert!(EtgrsParams::with_unit_multipliers(&field(7), 3, too_many, 1, 0).is_ok());
}

#[test]
fn gf13_n5_k3_is_nmds_not_mds() {
    let p = gf13_n5_k3();
    let r = classify_full(&p, Mode::Both, BUDGET).unwrap();
    assert_eq!(r.headline(), "NMDS [8,3,5]");
    assert_eq!(r.code.unwrap().dual_min_distance, Some(3));
    assert_eq!(r.agreement, Some(true));
    let mds = r.check(Criterion::Mds).unwrap();
    assert!(!mds.holds);
    // Evaluation points {1, 6} with column n+3, and {2, 7} with column n+3.
    let b3 = &mds.conditions[2];
    assert!(!b3.holds);
    assert_eq!(b3.witness.as_ref().unwrap().columns, vec![1, 4, 8]);
    let b2 = &mds.conditions[1];
    assert_eq!(b2.witness.as_ref().unwrap().columns, vec![3, 5, 7]);
}

#[test]
fn gf13_mds_pairs_for_fixed_points() {
    let base = gf13_n5_k3();
    let etas: Vec<u32> = (1..13).collect();
    let deltas: Vec<u32> = (0..13).collect();
    let rows = search(&base, &etas, &deltas, &SearchOptions::default()).unwrap();
    let mds: Vec<(u32, u32)> = rows.iter().filter(|r| r.verdict == Verdict::Mds).map(|r| (r.eta, r.delta)).collect();
    assert_eq!(mds, vec![(1, 5), (1, 6), (1, 11), (12, 3), (12, 4), (12, 9)]);
    for &(eta, delta) in &mds {
        let r = classify_full(&base.with_eta_delta(eta, delta).unwrap(), Mode::Brute, BUDGET).unwrap();
        assert_eq!(r.headline(), "MDS [8,3,6]");
    }
}

#[test]
fn gf8_n5_k3_literal_conditions_match_rank() {
    // In characteristic two the printed conditions and the determinants agree.
    let f = field(8);
    let p = EtgrsParams::with_unit_multipliers(&f, 3, vec![1, 2, 4, 6, 7], 4, 0).unwrap();
    for check in [check_mds(&p, BUDGET).unwrap(), check_amds(&p, BUDGET).unwrap()] {
        assert!(check.findings.iter().all(|x| x.kind != FindingKind::LiteralConditionMismatch));
        assert!(check.conditions.iter().all(|c| c.literal.as_ref().unwrap().agrees));
    }
}

#[test]
fn printed_fifth_condition_mismatches_in_odd_characteristic() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut mismatches = 0;
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let check = check_mds(&p, BUDGET).unwrap();
        for c in &check.conditions[..4] {
            assert!(c.literal.as_ref().unwrap().agrees, "{p:?} condition {}", c.condition);
        }
        if !check.conditions[4].literal.as_ref().unwrap().agrees {
            assert_ne!(p.field().p(), 2);
            mismatches += 1;
        }
    }
    assert!(mismatches > 0);
}

#[test]
fn dependent_short_columns_when_zero_is_a_point_and_delta_vanishes() {
    let f = field(11);
    let p = EtgrsParams::with_unit_multipliers(&f, 3, vec![0, 4, 5, 8, 9], 1, 0).unwrap();
    let dual = check_dual_amds(&p, BUDGET).unwrap();
    assert!(dual.conditions[0].holds);
    assert!(!dual.conditions[1].holds);
    assert_eq!(dual.conditions[1].witness.as_ref().unwrap().columns, vec![1, 8]);
    let r = classify_full(&p, Mode::Both, BUDGET).unwrap();
    assert_eq!(r.code.unwrap().dual_min_distance, Some(2));
    assert_eq!(r.agreement, Some(true));
}

#[test]
fn extension_contract_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..200 {
        let p = random_params(&mut rng);
        let ext = extension_vector(&p).unwrap();
        assert!(ext.contract_holds);
        let h1 = p.alpha().iter().fold(0, |acc, &a| p.field().add(acc, a));
        let expected = if p.field().p() == 2 || h1 == 0 { ExtensionSource::FormulaPlus } else { ExtensionSource::FormulaMinus };
        assert_eq!(ext.source, expected);
        assert_eq!(punctured_generator(&p).matvec(&ext.t).unwrap(), extension_target(&p));
        assert!(punctured_code(&p).extend(&ext.t).unwrap().same_code(&etgrs_code(&p)));
    }
}

#[test]
fn search_rejects_empty_sets_and_sorts_rows() {
    let base = gf13_n5_k3();
    assert!(search(&base, &[], &[1], &SearchOptions::default()).is_err());
    let rows = search(&base, &[3, 1, 3], &[2, 0], &SearchOptions::default()).unwrap();
    let keys: Vec<(u32, u32)> = rows.iter().map(|r| (r.eta, r.delta)).collect();
    assert_eq!(keys, vec![(1, 0), (1, 2), (3, 0), (3, 2)]);
}

#[test]
fn search_is_independent_of_worker_count() {
    let base = gf13_n5_k3();
    let etas: Vec<u32> = (1..13).collect();
    let deltas: Vec<u32> = (0..13).collect();
    let run = |w| {
        let opts = SearchOptions { brute: true, workers: Some(w), ..SearchOptions::default() };
        search(&base, &etas, &deltas, &opts).unwrap()
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert!(one.iter().all(|r| r.agreement == Some(true)));
}

fn params_strategy() -> impl Strategy<Value = EtgrsParams> {
    any::<u64>().prop_map(|seed| random_params(&mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encoding_is_message_times_generator(p in params_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = p.field().q();
        let coeffs: Vec<u32> = (0..p.k()).map(|_| rng.gen_range(0..q)).collect();
        let g = generator_matrix(&p);
        prop_assert_eq!(twisted_encode(&p, &coeffs).unwrap(), g.vecmat(&coeffs).unwrap());
    }

    #[test]
    fn verdict_is_invariant_under_multiplier_scaling(p in params_strategy(), c in 1u32..7) {
        let scaled = p.scaled(c).unwrap();
        let a = classify_full(&p, Mode::Both, BUDGET).unwrap();
        let b = classify_full(&scaled, Mode::Both, BUDGET).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.theorem_verdict, b.theorem_verdict);
        prop_assert_eq!(a.code, b.code);
    }

    #[test]
    fn code_has_full_dimension(p in params_strategy()) {
        prop_assert_eq!(generator_matrix(&p).rank(), p.k());
        prop_assert_eq!(punctured_generator(&p).rank(), p.k());
    }
}
