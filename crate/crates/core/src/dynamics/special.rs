//! Detection of the power and Chebyshev normal forms.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::decgraph::{conjugate_maps, Conjugacy};
use crate::factor::factor_gaussian;
use crate::ratfun::poly::homogeneous_substitute;
use crate::ratfun::{Mobius, Poly, ProjPoint, RatMap, GQ};

use super::{form_zeros, same_point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialKind {
    /// Conjugate to `zⁿ`, or to `z⁻ⁿ` when `inverted`.
    Power { n: usize, inverted: bool },
    /// Conjugate to `T_d`, or to `−T_d` when `negated`.
    Chebyshev { d: usize, negated: bool },
    None,
}

impl fmt::Display for SpecialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialKind::Power { n, inverted } => write!(f, "power({}{n})", if *inverted { "-" } else { "" }),
            SpecialKind::Chebyshev { d, negated } => write!(f, "chebyshev({},{d})", if *negated { "-" } else { "+" }),
            SpecialKind::None => write!(f, "none-detected"),
        }
    }
}

impl Serialize for SpecialKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialForm {
    pub kind: SpecialKind,
    /// `γ` with `γ⁻¹∘R∘γ` equal to the normal form, verified exactly.
    pub conjugacy: Option<Mobius>,
}

/// `T_d` from `T_{k+1} = 2z·T_k − T_{k−1}`.
pub fn chebyshev(d: usize) -> RatMap {
    let mut prev = Poly::one();
    let mut cur = Poly::x();
    if d == 0 {
        return RatMap::from_poly(prev);
    }
    let two_z = Poly::from_ints(&[0, 2]);
    for _ in 1..d {
        let next = &(&two_z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    RatMap::from_poly(cur)
}

pub fn detect_special(r: &RatMap) -> SpecialForm {
    let none = SpecialForm { kind: SpecialKind::None, conjugacy: None };
    if r.degree() < 2 {
        return none;
    }
    if let Some(found) = detect_power(r) {
        return found;
    }
    detect_chebyshev(r).unwrap_or(none)
}

/// Both critical points totally ramified and the pair invariant.
fn detect_power(r: &RatMap) -> Option<SpecialForm> {
    let d = r.degree();
    let w = r.wronskian();
    let fz = factor_gaussian(&w);
    let at_inf = 2 * d - 2 - w.degree();
    let mut mults: Vec<(Poly, usize)> = fz.factors.clone();
    if at_inf > 0 {
        mults.push((Poly::one(), at_inf));
    }
    // the critical pair as a quadratic form, dehomogenized
    let pair = match mults.as_slice() {
        [(a, ma), (b, mb)] if *ma == d - 1 && *mb == d - 1 && a.degree() <= 1 && b.degree() <= 1 => a * b,
        [(q, m)] if *m == d - 1 && q.degree() == 2 => q.clone(),
        _ => return None,
    };
    let pulled = homogeneous_substitute(&pair, 2, r.num(), r.den());
    let inf_ok = 2 * d - pulled.degree() >= 2 - pair.degree();
    if !pulled.rem(&pair).is_zero() || !inf_ok {
        return None;
    }
    let pts: Vec<ProjPoint> = form_zeros(&pair, 2).ok()?.into_iter().map(|(p, _)| p).collect();
    let (a, b) = (&pts[0], &pts[1]);
    let image = r.eval_proj(&a.to_approx());
    let inverted = !same_point(&image, &a.to_approx()) && image.chordal(&a.to_approx()) > 1e-6;
    let kind = SpecialKind::Power { n: d, inverted };
    let conjugacy = if a.is_exact() && b.is_exact() { power_witness(r, a, b, inverted) } else { None };
    Some(SpecialForm { kind, conjugacy })
}

/// `γ` sending `0, ∞, 1` to the critical pair and a rational fixed point.
fn power_witness(r: &RatMap, a: &ProjPoint, b: &ProjPoint, inverted: bool) -> Option<Mobius> {
    let target = RatMap::power(if inverted { -(r.degree() as i64) } else { r.degree() as i64 });
    if *r == target {
        return Some(Mobius::identity());
    }
    let fixed = homogeneous_fixed_form(r);
    let zeros = form_zeros(&fixed, r.degree() + 1).ok()?;
    let src = [ProjPoint::finite(GQ::zero()), ProjPoint::infinity(), ProjPoint::finite(GQ::one())];
    for (e, _) in zeros.iter().filter(|(e, _)| e.is_exact() && e != a && e != b) {
        for (x, y) in [(a, b), (b, a)] {
            let Ok(g) = Mobius::from_three_points([&src[0], &src[1], &src[2]], [x, y, e]) else { continue };
            if r.conjugate_by(&g) == target {
                return Some(g);
            }
        }
    }
    None
}

/// Dehomogenized fixed-point form `f − z·g` of degree `d + 1`.
pub(crate) fn homogeneous_fixed_form(r: &RatMap) -> Poly {
    r.num() - &(&Poly::x() * r.den())
}

fn detect_chebyshev(r: &RatMap) -> Option<SpecialForm> {
    let d = r.degree();
    // T_d has a totally invariant point: a fixed critical point of multiplicity d − 1.
    let crit = super::critical_points(r).ok()?;
    let has_exceptional = crit
        .points
        .iter()
        .any(|(p, m)| *m == d - 1 && same_point(&r.eval_proj(p), p) || *m == d - 1 && r.eval_proj(p).chordal(p) < 1e-9);
    if !has_exceptional {
        return None;
    }
    let t = chebyshev(d);
    for negated in [false, true] {
        let target = if negated { t.mobius_apply(None, Some(&Mobius::affine(-GQ::one(), GQ::zero()))) } else { t.clone() };
        if let Conjugacy::Verified(g) = conjugate_maps(r, &target) {
            return Some(SpecialForm { kind: SpecialKind::Chebyshev { d, negated }, conjugacy: Some(g) });
        }
    }
    None
}
