mod common;

use common::{distinct, field, nonzero, TEST_FIELDS};
use etgrs_core::etgrs::{generator_matrix, EtgrsParams};
use etgrs_core::symfun::{complete, elementary};
use etgrs_core::{FieldMatrix, FieldSpec, SigmaConvention, SymContext};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn subset_sum(f: &FieldSpec, vals: &[u32], r: usize) -> u32 {
    vals.iter()
        .combinations(r)
        .map(|c| c.into_iter().fold(1, |acc, &x| f.mul(acc, x)))
        .fold(0, |acc, t| f.add(acc, t))
}

fn multiset_sum(f: &FieldSpec, vals: &[u32], r: usize) -> u32 {
    vals.iter()
        .combinations_with_replacement(r)
        .map(|c| c.into_iter().fold(1, |acc, &x| f.mul(acc, x)))
        .fold(0, |acc, t| f.add(acc, t))
}

fn ctx(q: u32, vals: &[u32]) -> SymContext {
    SymContext::from_raw(&field(q), vals.to_vec()).unwrap()
}

#[test]
fn small_context_values() {
    let c = ctx(13, &[1, 2, 5]);
    assert_eq!(c.elem_sym(0).value(), 1);
    assert_eq!(c.elem_sym(1).value(), 8);
    assert_eq!(c.elem_sym(2).value(), 4);
    assert_eq!(c.elem_sym(3).value(), 10);
    assert_eq!(c.elem_sym(4).value(), 0);
    assert_eq!(c.complete_sym(0).value(), 1);
    assert_eq!(c.power_weight_sum(0).value(), 0);
    assert_eq!(c.power_weight_sum(1).value(), 0);
    assert_eq!(c.power_weight_sum(2).value(), 1);
    let u: Vec<u32> = ctx(13, &[3, 8]).u_weights().iter().map(|x| x.value()).collect();
    assert_eq!(field(13).add(u[0], u[1]), 0);
}

#[test]
fn repeated_values_are_rejected() {
    assert!(SymContext::from_raw(&field(13), vec![1, 2, 1]).is_err());
}

#[test]
fn recurrences_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for q in TEST_FIELDS {
        let f = field(q);
        for n in 0..=6 {
            for _ in 0..10 {
                let vals = distinct(&mut rng, q, n);
                let e = elementary(&f, &vals, 6);
                let h = complete(&f, &vals, 6);
                for r in 0..=6 {
                    assert_eq!(e[r], subset_sum(&f, &vals, r), "e_{r} of {vals:?} over GF({q})");
                    assert_eq!(h[r], multiset_sum(&f, &vals, r), "h_{r} of {vals:?} over GF({q})");
                }
            }
        }
    }
}

#[test]
fn power_weight_sums_reduce_to_complete_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for q in TEST_FIELDS {
        for n in 2..=(q as usize).min(8) {
            for _ in 0..5 {
                let c = ctx(q, &distinct(&mut rng, q, n));
                for h in 0..=(n + 6) {
                    let expected = if h + 2 <= n { 0 } else { c.complete_sym(h + 1 - n).value() };
                    assert_eq!(c.power_weight_sum(h as u64).value(), expected, "n={n} h={h} GF({q})");
                }
            }
        }
    }
}

#[test]
fn printed_deltas_by_convention() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for q in TEST_FIELDS {
        let f = field(q);
        for _ in 0..100 {
            let n = rng.gen_range(1..=6.min(q as usize));
            let c = ctx(q, &distinct(&mut rng, q, n));
            let h: Vec<u32> = (0..=5).map(|r| c.complete_sym(r).value()).collect();
            let un = |r| c.printed_delta(r, SigmaConvention::Unsigned).unwrap().value();
            let si = |r| c.printed_delta(r, SigmaConvention::Signed).unwrap().value();
            assert_eq!([un(2), un(3), un(4), un(5)], [h[2], h[3], h[4], f.neg(h[5])]);
            assert_eq!([si(2), si(3), si(4), si(5)], [h[2], f.neg(h[3]), h[4], h[5]]);
            for r in 2..=5 {
                assert_eq!(c.delta(r).unwrap().value(), si(r));
            }
        }
    }
}

#[test]
fn printed_fifth_delta_differs_from_h5_in_odd_characteristic() {
    let c = ctx(13, &[1, 2, 5, 6]);
    let d5 = c.printed_delta(5, SigmaConvention::Unsigned).unwrap();
    assert_ne!(d5, c.complete_sym(5));
    let c = ctx(8, &[1, 2, 5, 6]);
    assert_eq!(c.printed_delta(5, SigmaConvention::Unsigned).unwrap(), c.complete_sym(5));
}

#[test]
fn inline_and_grouped_b3_expressions_coincide() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for q in TEST_FIELDS {
        for _ in 0..100 {
            let n = rng.gen_range(1..=6.min(q as usize));
            let c = ctx(q, &distinct(&mut rng, q, n));
            for conv in [SigmaConvention::Signed, SigmaConvention::Unsigned] {
                assert_eq!(c.b3_inline(conv), c.b3_grouped(conv));
            }
        }
    }
}

/// `det(B) / (det V · ∏ v)` for the five square families at a random subset,
/// columns ordered subset first, then tails.
fn quotients(rng: &mut ChaCha8Rng, q: u32) -> ([u32; 5], [u32; 5]) {
    let f = field(q);
    let k = rng.gen_range(3..=5);
    let n = rng.gen_range(k..=q.min(8) as usize);
    let alpha = distinct(rng, q, n);
    let v: Vec<u32> = (0..n).map(|_| nonzero(rng, q)).collect();
    let (eta, delta) = (nonzero(rng, q), rng.gen_range(0..q));
    let p = EtgrsParams::new(&f, k, alpha.clone(), v.clone(), eta, delta).unwrap();
    let g = generator_matrix(&p);
    let rows: Vec<usize> = (0..k).collect();
    let mut actual = [0; 5];
    let mut closed = [0; 5];
    let families = [(k, vec![]), (k - 1, vec![n + 1]), (k - 1, vec![n + 2]), (k - 2, vec![n, n + 2]), (k - 2, vec![n + 1, n + 2])];
    for (i, (size, tails)) in families.into_iter().enumerate() {
        let mut all: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(all.as_mut_slice(), rng);
        let mut subset = all[..size].to_vec();
        subset.sort_unstable();
        let vals: Vec<u32> = subset.iter().map(|&j| alpha[j]).collect();
        let mut cols = subset.clone();
        cols.extend(tails);
        let det = g.select(&rows, &cols).unwrap().det().unwrap().value();
        let van = FieldMatrix::vandermonde(&f, &vals, size).det().unwrap().value();
        let scale = subset.iter().fold(van, |acc, &j| f.mul(acc, v[j]));
        actual[i] = f.mul(det, f.inv(scale).unwrap());
        let e = elementary(&f, &vals, 5);
        let h = complete(&f, &vals, 5);
        closed[i] = match i {
            0 => f.add(1, f.mul(eta, h[3])),
            1 => f.neg(f.add(e[1], f.mul(eta, h[4]))),
            2 => f.add(f.add(e[2], delta), f.mul(eta, f.sub(f.mul(e[1], h[4]), h[5]))),
            3 => e[1],
            _ => f.sub(f.sub(delta, h[2]), f.mul(eta, h[5])),
        };
    }
    (actual, closed)
}

#[test]
fn square_family_determinant_quotients() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for q in TEST_FIELDS {
        for _ in 0..100 {
            let (actual, closed) = quotients(&mut rng, q);
            assert_eq!(actual, closed, "GF({q})");
        }
    }
}
