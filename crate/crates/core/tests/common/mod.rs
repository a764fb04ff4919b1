#![allow(dead_code)]

use etgrs_core::etgrs::EtgrsParams;
use etgrs_core::FieldSpec;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TEST_FIELDS: [u32; 5] = [7, 8, 9, 11, 13];

pub fn field(q: u32) -> FieldSpec {
    FieldSpec::parse(&q.to_string()).unwrap()
}

pub fn distinct(rng: &mut ChaCha8Rng, q: u32, n: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (0..q).collect();
    all.shuffle(rng);
    all.truncate(n);
    all
}

pub fn nonzero(rng: &mut ChaCha8Rng, q: u32) -> u32 {
    rng.gen_range(1..q)
}

/// Random parameters with `3 <= k <= min(5, n)` and `k <= n <= 7`.
pub fn random_params(rng: &mut ChaCha8Rng) -> EtgrsParams {
    let q = *TEST_FIELDS.choose(rng).unwrap();
    let f = field(q);
    let k = rng.gen_range(3..=5);
    let n = rng.gen_range(k..=7);
    let alpha = distinct(rng, q, n);
    let v = (0..n).map(|_| nonzero(rng, q)).collect();
    let eta = nonzero(rng, q);
    let delta = rng.gen_range(0..q);
    EtgrsParams::new(&f, k, alpha, v, eta, delta).unwrap()
}
