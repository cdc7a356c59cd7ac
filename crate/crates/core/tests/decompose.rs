mod common;

use common::{int_map, int_polymap, mobius, rng};
use proptest::prelude::*;
use rittlab::decompose::{
    common_iterate_search, commutes, decompositions_equivalent, is_prime, left_factor_solve, poly_right_factor,
    prime_decompositions, rat_decompose_split, virtual_decomposability_scan, Budget, Decomposition, DegreeSplit,
    FindingStatus, Primality,
};
use rittlab::dynamics::chebyshev;
use rittlab::{parse_ratmap, Mobius, Poly, RatMap, GQ};

fn m(s: &str) -> RatMap {
    parse_ratmap(s).unwrap()
}

fn chain(fs: &[&str]) -> Decomposition {
    Decomposition::new(fs.iter().map(|f| m(f)).collect()).unwrap()
}

fn split(d1: usize, d2: usize) -> DegreeSplit {
    DegreeSplit::new(d1, d2).unwrap()
}

/// Normal form of a polynomial under post-composition by affine maps.
fn affine_normal(p: &Poly) -> Poly {
    let p = p.monic();
    &p - &Poly::constant(p.coeff(0))
}

#[test]
fn left_factor_examples() {
    assert_eq!(left_factor_solve(&m("4*z^2/(z^2+1)^2"), &m("z^2")), Some(m("4*z/(z+1)^2")));
    assert_eq!(left_factor_solve(&m("z^6"), &m("z^3")), Some(m("z^2")));
    assert_eq!(left_factor_solve(&m("(z-1)^2/(z+1)^2"), &m("z^2")), None);
}

#[test]
fn split_examples() {
    let b = Budget::default();
    let res = rat_decompose_split(&m("4*z^2/(z^2+1)^2"), split(2, 2), &b).unwrap();
    let want = chain(&["4*z/(z+1)^2", "z^2"]);
    assert!(res.decompositions.iter().any(|d| decompositions_equivalent(d, &want).is_some()));
    assert!(res.decompositions.iter().all(Decomposition::verify));

    let res = rat_decompose_split(&m("z^4"), split(2, 2), &b).unwrap();
    let want = chain(&["z^2", "z^2"]);
    assert!(res.decompositions.iter().any(|d| decompositions_equivalent(d, &want).is_some()));

    let res = rat_decompose_split(&m("z*(z-8)^3/(z+1)^3"), split(2, 2), &b).unwrap();
    assert!(res.decompositions.is_empty());
    assert!(!res.budget_exhausted);
}

#[test]
fn polynomial_right_factor_examples() {
    let p = Poly::from_ints(&[0, 0, 2, 0, 1]);
    let rs = poly_right_factor(&p, 2);
    assert!(rs.iter().any(|r| affine_normal(r) == Poly::from_ints(&[0, 0, 1])));
    let b = rs.iter().find(|r| affine_normal(r) == Poly::from_ints(&[0, 0, 1])).unwrap();
    let a = left_factor_solve(&RatMap::from_poly(p.clone()), &RatMap::from_poly(b.clone())).unwrap();
    assert_eq!(a.compose(&RatMap::from_poly(b.clone())), RatMap::from_poly(p));

    let rs = poly_right_factor(&Poly::from_ints(&[0, 0, 0, 0, 0, 0, 1]), 3);
    assert!(rs.iter().any(|r| affine_normal(r) == Poly::from_ints(&[0, 0, 0, 1])));

    // Full degree: only the map itself, up to affine change.
    let p = Poly::from_ints(&[1, 0, 1]);
    assert!(poly_right_factor(&p, 2).iter().all(|r| affine_normal(r) == affine_normal(&p)));
}

#[test]
fn prime_chain_examples() {
    let b = Budget::default();
    let r = m("(z^2+3)/(z-1)");
    let pc = prime_decompositions(&r, &b).unwrap();
    assert_eq!(pc.chains, vec![Decomposition::new(vec![r]).unwrap()]);

    let pc = prime_decompositions(&m("z^4"), &b).unwrap();
    assert_eq!(pc.chains.len(), 1);
    assert_eq!(pc.chains[0].degrees(), vec![2, 2]);
}

#[test]
fn primality_examples() {
    let b = Budget::default();
    assert!(matches!(is_prime(&m("z^3+z+1"), &b).unwrap(), Primality::Prime));
    match is_prime(&m("z^4"), &b).unwrap() {
        Primality::Composite { witness } => {
            assert_eq!(witness.degrees(), vec![2, 2]);
            assert!(decompositions_equivalent(&witness, &chain(&["z^2", "z^2"])).is_some());
        }
        other => panic!("z^4 reported {other:?}"),
    }
    assert!(matches!(is_prime(&m("z*(z-8)^3/(z+1)^3"), &b).unwrap(), Primality::Prime));
}

#[test]
fn equivalence_examples() {
    let r = "(z-1)^2/(z+1)^2";
    assert!(decompositions_equivalent(&chain(&[r, r]), &chain(&["4*z/(z+1)^2", "z^2"])).is_none());

    let d = chain(&["4*z/(z+1)^2", "z^2"]);
    let w = decompositions_equivalent(&d, &d).unwrap();
    assert_eq!(w.gammas, vec![Mobius::identity()]);

    let w = decompositions_equivalent(&chain(&["z^2", "z^2"]), &chain(&["4*z^2", "z^2/2"])).unwrap();
    assert_eq!(w.gammas, vec![Mobius::affine(GQ::from_int(2), GQ::from_int(0))]);
    assert_eq!(w.apply(&chain(&["z^2", "z^2"])), chain(&["4*z^2", "z^2/2"]));
}

#[test]
fn chains_of_different_length_are_not_compared() {
    let a = chain(&["z^2", "z^2", "z^2"]);
    let b = chain(&["z^4", "z^2"]);
    assert_eq!(a.product, b.product);
    assert!(decompositions_equivalent(&a, &b).is_none());
}

#[test]
fn commuting_examples() {
    assert!(commutes(&m("z^2"), &m("z^3")));
    assert_eq!(common_iterate_search(&m("z^2"), &m("z^4"), 4, 4096).unwrap(), Some((2, 1)));
    assert!(!commutes(&m("z^2"), &m("z^2-1")));
    assert_eq!(common_iterate_search(&m("z^2"), &m("z^2-1"), 3, 4096).unwrap(), None);
}

#[test]
fn virtual_scan_examples() {
    let b = Budget::default();
    let rep = virtual_decomposability_scan(&m("(z-1)^2/(z+1)^2"), 2, &b).unwrap();
    assert_eq!(rep.alpha_lower_bound, 2);
    let want = chain(&["4*z/(z+1)^2", "z^2"]);
    assert!(rep
        .findings
        .iter()
        .any(|f| f.n == 2 && f.status == FindingStatus::New && decompositions_equivalent(&f.decomposition, &want).is_some()));

    let rep = virtual_decomposability_scan(&m("z^2+1"), 2, &b).unwrap();
    assert!(rep.findings.iter().filter(|f| f.n == 2).all(|f| f.status != FindingStatus::New));

    let rep = virtual_decomposability_scan(&m("z^2"), 2, &b).unwrap();
    assert!(rep.exceptional.is_some());
    for f in &rep.findings {
        assert_eq!(f.decomposition.product, m("z^2").iterate(f.n, 4096).unwrap());
    }
}

proptest! {
    #![proptest_config(common::cases(24))]

    #[test]
    fn constructed_splits_are_recovered(seed: u64) {
        let mut g = rng(seed);
        let (a, b) = (int_map(&mut g, 2, 3), int_map(&mut g, 2, 3));
        let r = a.compose(&b);
        let res = rat_decompose_split(&r, split(2, 2), &Budget::default()).unwrap();
        prop_assert!(res.decompositions.iter().all(Decomposition::verify));
        let want = Decomposition::new(vec![a, b]).unwrap();
        prop_assert!(res.decompositions.iter().any(|d| decompositions_equivalent(d, &want).is_some()), "{r}");
    }

    #[test]
    fn equivalence_is_an_equivalence_relation(seed: u64) {
        let mut g = rng(seed);
        let d1 = Decomposition::new(vec![int_map(&mut g, 2, 3), int_map(&mut g, 3, 3)]).unwrap();
        let move_by = |d: &Decomposition, gamma: &Mobius| {
            Decomposition::new(vec![
                d.factors[0].mobius_apply(Some(gamma), None),
                d.factors[1].mobius_apply(None, Some(&gamma.inverse())),
            ])
            .unwrap()
        };
        let d2 = move_by(&d1, &mobius(&mut g, 2));
        let d3 = move_by(&d2, &mobius(&mut g, 2));

        let w11 = decompositions_equivalent(&d1, &d1).unwrap();
        prop_assert_eq!(w11.apply(&d1), d1.clone());

        let w12 = decompositions_equivalent(&d1, &d2).unwrap();
        prop_assert_eq!(w12.apply(&d1), d2.clone());
        let w21 = decompositions_equivalent(&d2, &d1).unwrap();
        prop_assert_eq!(w12.inverse().apply(&d2), d1.clone());
        prop_assert_eq!(w21.apply(&d2), d1.clone());

        let w23 = decompositions_equivalent(&d2, &d3).unwrap();
        prop_assert_eq!(w12.then(&w23).apply(&d1), d3.clone());
        prop_assert!(decompositions_equivalent(&d1, &d3).is_some());
    }

    #[test]
    fn polynomial_prime_chains_have_equal_length(seed: u64) {
        let mut g = rng(seed);
        let r = int_polymap(&mut g, 2, 3).compose(&int_polymap(&mut g, 3, 3));
        let pc = prime_decompositions(&r, &Budget::default()).unwrap();
        prop_assert!(!pc.chains.is_empty());
        for c in &pc.chains {
            prop_assert!(c.verify());
            prop_assert_eq!(c.product.clone(), r.clone());
            prop_assert_eq!(c.len(), 2);
        }
    }

    #[test]
    fn commuting_survives_iteration(seed: u64, a in 2usize..=3, b in 2usize..=3, cheb: bool) {
        let mut g = rng(seed);
        let gamma = mobius(&mut g, 1);
        let (r1, r2) = if cheb { (chebyshev(a), chebyshev(b)) } else { (RatMap::power(a as i64), RatMap::power(b as i64)) };
        let (r1, r2) = (r1.conjugate_by(&gamma), r2.conjugate_by(&gamma));
        prop_assert!(commutes(&r1, &r2));
        for k in 1..=3 {
            let (i1, i2) = (r1.iterate(k, 4096).unwrap(), r2.iterate(k, 4096).unwrap());
            if i1.degree() * i2.degree() > 100 {
                break;
            }
            prop_assert!(commutes(&i1, &i2));
        }
    }
}
