mod common;

use common::{int_poly, rng};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use rittlab::factor::factor_gaussian;
use rittlab::{Poly, GQ};

fn degrees(f: &Poly) -> Vec<(usize, usize)> {
    let mut d: Vec<(usize, usize)> = factor_gaussian(f).factors.iter().map(|(g, m)| (g.degree(), *m)).collect();
    d.sort();
    d
}

#[test]
fn known_factorizations() {
    // x^4 + 1 = (x^2 + i)(x^2 - i) over Q(i).
    assert_eq!(degrees(&Poly::from_ints(&[1, 0, 0, 0, 1])), vec![(2, 1), (2, 1)]);
    // Roots ±√2 ± √3 generate a field without i.
    assert_eq!(degrees(&Poly::from_ints(&[1, 0, -10, 0, 1])), vec![(4, 1)]);
    // x^2 + 1 splits completely.
    let f = factor_gaussian(&Poly::from_ints(&[1, 0, 1]));
    let mut roots: Vec<GQ> = f.linear_roots().into_iter().map(|(r, _)| r).collect();
    roots.sort_by_key(|r| r.to_exact_string());
    assert_eq!(roots.len(), 2);
    assert!(roots.contains(&GQ::i()) && roots.contains(&-GQ::i()));
}

#[test]
fn large_coefficients_lift_quickly() {
    let big = GQ::from_bigint(BigInt::from(10).pow(40) + 7);
    let lin = Poly::new(vec![-big, GQ::one()]);
    let f = &(&lin * &Poly::from_ints(&[3, 0, 1])) * &Poly::from_ints(&[-5, 1, 0, 2]);
    let t = std::time::Instant::now();
    let fac = factor_gaussian(&f);
    assert!(t.elapsed().as_secs() < 5);
    assert_eq!(fac.expand(), f);
    assert_eq!(fac.factors.len(), 3);
}

proptest! {
    #![proptest_config(common::cases(40))]

    #[test]
    fn factors_multiply_back(seed: u64, parts in 1usize..=4) {
        let mut g = rng(seed);
        let mut f = Poly::one();
        for _ in 0..parts {
            let d = g.gen_range(1..=4);
            f = &f * &int_poly(&mut g, d, 6);
        }
        let fac = factor_gaussian(&f);
        prop_assert_eq!(fac.expand(), f.clone());
        let pieces: usize = fac.factors.iter().map(|(_, m)| m).sum();
        prop_assert!(pieces >= parts);
        for (p, _) in &fac.factors {
            prop_assert!(p.degree() >= 1);
            prop_assert_eq!(p.lc(), GQ::one());
        }
    }
}
