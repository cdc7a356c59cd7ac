mod common;

use common::{int_map, mobius, rng};
use proptest::prelude::*;
use rittlab::dynamics::{
    chain_rule_check, chebyshev, classify_critical_orbits, critical_points, detect_special, hyperbolic_symmetry_probe,
    OrbitConfig, OrbitStatus, SpecialKind, Verdict,
};
use rittlab::{parse_ratmap, Mobius, ProjPoint, RatMap, GQ};

fn m(s: &str) -> RatMap {
    parse_ratmap(s).unwrap()
}

fn fin(n: i64) -> ProjPoint {
    ProjPoint::finite(GQ::from_int(n))
}

fn crit(s: &str) -> Vec<(ProjPoint, usize)> {
    let r = m(s);
    let cs = critical_points(&r).unwrap();
    assert!(cs.riemann_hurwitz_ok(r.degree()));
    cs.points
}

fn has(points: &[(ProjPoint, usize)], p: &ProjPoint, k: usize) -> bool {
    points.iter().any(|(q, j)| q == p && *j == k)
}

#[test]
fn critical_point_examples() {
    let c = crit("z^2");
    assert_eq!(c.len(), 2);
    assert!(has(&c, &fin(0), 1) && has(&c, &ProjPoint::infinity(), 1));

    let c = crit("(z-1)^2/(z+1)^2");
    assert_eq!(c.len(), 2);
    assert!(has(&c, &fin(1), 1) && has(&c, &fin(-1), 1));

    let c = crit("z^3");
    assert_eq!(c.len(), 2);
    assert!(has(&c, &fin(0), 2) && has(&c, &ProjPoint::infinity(), 2));
}

#[test]
fn chain_rule_examples() {
    let rep = chain_rule_check(&m("z^2"), &m("z^2")).unwrap();
    assert!(rep.holds);
    assert_eq!(rep.lhs.len(), 2);
    assert!(rep.only_lhs.is_empty() && rep.only_rhs.is_empty());

    let (a, b) = (m("4*z/(z+1)^2"), m("z^2"));
    assert_eq!(a.compose(&b), m("(z-1)^2/(z+1)^2").iterate(2, 4096).unwrap());
    assert!(chain_rule_check(&a, &b).unwrap().holds);
}

#[test]
fn orbit_examples() {
    let cfg = OrbitConfig::default();
    let c = classify_critical_orbits(&m("z^2-1"), &cfg).unwrap();
    assert_eq!(c.verdict, Verdict::HeuristicallyHyperbolic);
    for o in &c.orbits {
        assert!(matches!(o.status, OrbitStatus::Attracted { period: 1 | 2, .. }), "{:?}", o.status);
    }
    assert!(c.orbits.iter().any(|o| matches!(o.status, OrbitStatus::Attracted { period: 2, .. })));

    let c = classify_critical_orbits(&m("z^2"), &cfg).unwrap();
    assert_eq!(c.verdict, Verdict::HeuristicallyHyperbolic);

    let c = classify_critical_orbits(&m("z^2+1/4"), &cfg).unwrap();
    assert_eq!(c.verdict, Verdict::NotDecided);
}

#[test]
fn special_form_examples() {
    let s = detect_special(&m("z^3"));
    assert_eq!(s.kind, SpecialKind::Power { n: 3, inverted: false });
    assert_eq!(s.conjugacy, Some(Mobius::identity()));

    let s = detect_special(&m("2*z^2-1"));
    assert_eq!(s.kind, SpecialKind::Chebyshev { d: 2, negated: false });
    assert_eq!(s.conjugacy, Some(Mobius::identity()));

    assert_eq!(detect_special(&m("(z-1)^2/(z+1)^2")).kind, SpecialKind::None);
}

#[test]
fn chebyshev_recurrence() {
    assert_eq!(chebyshev(3), m("4*z^3-3*z"));
    assert_eq!(chebyshev(2).compose(&chebyshev(3)), chebyshev(6));
}

#[test]
fn symmetry_probe_examples() {
    let cfg = OrbitConfig::default();
    let rep = hyperbolic_symmetry_probe(&m("z^2"), &m("z^2-1"), &cfg).unwrap();
    assert_eq!(rep.forward, Verdict::HeuristicallyHyperbolic);
    assert_eq!(rep.backward, Verdict::HeuristicallyHyperbolic);
    assert!(rep.agree && rep.both_decided);

    let rep = hyperbolic_symmetry_probe(&m("z^2"), &m("z^2"), &cfg).unwrap();
    assert!(rep.agree && rep.forward == Verdict::HeuristicallyHyperbolic);

    let rep = hyperbolic_symmetry_probe(&m("4*z/(z+1)^2"), &m("z^2"), &cfg).unwrap();
    assert!(rep.agree);
}

proptest! {
    #![proptest_config(common::cases(64))]

    #[test]
    fn riemann_hurwitz(seed: u64, d in 2usize..=5) {
        let r = int_map(&mut rng(seed), d, 5);
        let cs = critical_points(&r).unwrap();
        prop_assert_eq!(cs.total, 2 * d - 2);
        prop_assert_eq!(cs.points.iter().map(|(_, k)| k).sum::<usize>(), 2 * d - 2);
    }

    #[test]
    fn chain_rule_on_random_pairs(seed: u64, d1 in 2usize..=3, d2 in 2usize..=3) {
        let mut g = rng(seed);
        let (a, b) = (int_map(&mut g, d1, 3), int_map(&mut g, d2, 3));
        let rep = chain_rule_check(&a, &b).unwrap();
        prop_assert!(rep.holds, "{a} after {b}: only lhs {:?}, only rhs {:?}", rep.only_lhs, rep.only_rhs);
    }

    #[test]
    fn conjugated_powers_are_detected(seed: u64, n in 2i64..=4) {
        let gamma = mobius(&mut rng(seed), 3);
        let r = RatMap::power(n).conjugate_by(&gamma);
        let s = detect_special(&r);
        prop_assert_eq!(s.kind, SpecialKind::Power { n: n as usize, inverted: false });
        let w = s.conjugacy.expect("verified witness");
        prop_assert_eq!(r.conjugate_by(&w), RatMap::power(n));
    }
}

proptest! {
    #![proptest_config(common::cases(16))]

    #[test]
    fn hyperbolic_verdict_is_conjugation_invariant(seed: u64, c in -3i64..=1) {
        let mut g = rng(seed);
        let r = RatMap::from_poly(rittlab::Poly::from_ints(&[c, 0, 1]));
        let cfg = OrbitConfig::default();
        let v = classify_critical_orbits(&r, &cfg).unwrap().verdict;
        prop_assume!(v == Verdict::HeuristicallyHyperbolic);
        let s = r.conjugate_by(&mobius(&mut g, 2));
        prop_assert_eq!(classify_critical_orbits(&s, &cfg).unwrap().verdict, v);
    }
}
