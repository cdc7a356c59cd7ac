#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rittlab::{Mobius, Poly, RatMap, GQ};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer polynomial of exact degree `d`, coefficients in `[-h, h]`.
pub fn int_poly(rng: &mut ChaCha8Rng, d: usize, h: i64) -> Poly {
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-h..=h)).collect();
    while c[d] == 0 {
        c[d] = rng.gen_range(-h..=h);
    }
    Poly::from_ints(&c)
}

/// Random rational map of exact degree `d` with integer coefficients in `[-h, h]`.
pub fn int_map(rng: &mut ChaCha8Rng, d: usize, h: i64) -> RatMap {
    loop {
        let num_deg = rng.gen_range(0..=d);
        let den_deg = if num_deg == d { rng.gen_range(0..=d) } else { d };
        let num = int_poly(rng, num_deg, h);
        let den = int_poly(rng, den_deg, h);
        if let Ok(r) = RatMap::new(num, den) {
            if r.degree() == d {
                return r;
            }
        }
    }
}

pub fn int_polymap(rng: &mut ChaCha8Rng, d: usize, h: i64) -> RatMap {
    RatMap::from_poly(int_poly(rng, d, h))
}

/// Möbius map with Gaussian-integer entries of height at most `h`.
pub fn mobius(rng: &mut ChaCha8Rng, h: i64) -> Mobius {
    loop {
        let mut e = || GQ::gaussian(rng.gen_range(-h..=h), rng.gen_range(-h..=h));
        if let Ok(m) = Mobius::new(e(), e(), e(), e()) {
            return m;
        }
    }
}

/// Proptest settings for integration tests: `n` cases from a fixed seed, so
/// every run draws the same inputs, and no regression files.
pub fn cases(n: u32) -> proptest::prelude::ProptestConfig {
    proptest::prelude::ProptestConfig {
        cases: n,
        failure_persistence: None,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_2026),
        ..Default::default()
    }
}
