//! Exact tier. The near-separated form `Φ(x,y) = f(x)g(y) − f(y)g(x)` is
//! specialized at two generic points `y₀, y₁`: for any right factor `B`, the
//! block `B⁻¹(B(yⱼ))` is a degree-`d2` divisor of `Φ(x,yⱼ)` over ℚ(i) through
//! `yⱼ`, and the two blocks span the pencil of `B`.

use std::collections::HashSet;

use crate::factor::factor_gaussian;
use crate::ratfun::{Poly, ProjPoint, RatMap, GQ};

use super::{canonical_right, left_factor_solve, DegreeSplit};

pub(super) struct TierOutput {
    pub rights: Vec<RatMap>,
    pub exhausted: bool,
}

/// Small Gaussian integers in a fixed order, used as specialization points.
pub(super) fn sample_points() -> impl Iterator<Item = GQ> {
    const BASE: &[(i64, i64)] = &[
        (2, 0), (3, 0), (-2, 0), (1, 1), (5, 0), (-3, 0), (2, 1), (1, -2), (7, 0), (-5, 0), (3, 2), (-1, 3),
        (4, -1), (11, 0), (-7, 2), (6, 5), (13, 0), (-9, -4), (17, 3), (19, -6),
    ];
    BASE.iter().map(|&(a, b)| GQ::gaussian(a, b))
}

/// `Φ(x, y)` for fixed `y`, i.e. `w_y·f(x) − w_x·g(x)` where `(w_x : w_y) = R(y)`.
fn fiber_poly(r: &RatMap, w: &ProjPoint) -> Poly {
    let ProjPoint::Exact { x, y } = w else { unreachable!("exact evaluation") };
    &r.num().scale(y) - &r.den().scale(x)
}

fn generic_points(r: &RatMap, count: usize) -> Vec<(GQ, Poly)> {
    let at_inf = r.eval_proj(&ProjPoint::infinity());
    let wr = r.wronskian();
    let mut chosen: Vec<(GQ, ProjPoint, Poly)> = Vec::new();
    for y in sample_points() {
        if chosen.len() == count {
            break;
        }
        let w = r.eval(&y);
        if w == at_inf || wr.eval(&y).is_zero() || chosen.iter().any(|(_, v, _)| *v == w) {
            continue;
        }
        let f = fiber_poly(r, &w);
        chosen.push((y, w, f));
    }
    chosen.into_iter().map(|(y, _, f)| (y, f)).collect()
}

/// Monic degree-`d` divisors of `f` divisible by `x − y`, or `None` past `cap`.
fn divisors_through(f: &Poly, y: &GQ, d: usize, cap: usize) -> Option<Vec<Poly>> {
    let lin = Poly::linear_root(y);
    let fz = factor_gaussian(f);
    let mut parts: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in fz.factors {
        let m = if g == lin { m - 1 } else { m };
        if m > 0 {
            parts.push((g, m));
        }
    }
    let mut out = Vec::new();
    let mut chosen = lin;
    let ok = enumerate(&parts, 0, d - 1, &mut chosen, &mut out, cap);
    ok.then_some(out)
}

fn enumerate(parts: &[(Poly, usize)], i: usize, left: usize, acc: &mut Poly, out: &mut Vec<Poly>, cap: usize) -> bool {
    if left == 0 {
        out.push(acc.clone());
        return out.len() <= cap;
    }
    if i == parts.len() {
        return true;
    }
    let (g, m) = &parts[i];
    let saved = acc.clone();
    for e in 0..=*m {
        if e * g.degree() > left {
            break;
        }
        if !enumerate(parts, i + 1, left - e * g.degree(), acc, out, cap) {
            return false;
        }
        *acc = &*acc * g;
    }
    *acc = saved;
    true
}

pub(super) fn exact_tier(r: &RatMap, split: DegreeSplit, cap: usize) -> TierOutput {
    let pts = generic_points(r, 2);
    let [(y0, f0), (y1, f1)] = <[(GQ, Poly); 2]>::try_from(pts).expect("enough generic sample points");
    let (Some(g0s), Some(g1s)) =
        (divisors_through(&f0, &y0, split.d2, cap), divisors_through(&f1, &y1, split.d2, cap))
    else {
        return TierOutput { rights: Vec::new(), exhausted: true };
    };
    let mut seen = HashSet::new();
    let mut rights = Vec::new();
    let mut pairs = 0usize;
    for g0 in &g0s {
        for g1 in &g1s {
            pairs += 1;
            if pairs > cap {
                return TierOutput { rights, exhausted: true };
            }
            if g0 == g1 || g0.gcd(g1).degree() > 0 {
                continue;
            }
            let b = canonical_right(&RatMap::new(g0.clone(), g1.clone()).expect("coprime pencil"));
            if b.degree() != split.d2 || !seen.insert(b.clone()) {
                continue;
            }
            if left_factor_solve(r, &b).is_some() {
                rights.push(b);
            }
        }
    }
    TierOutput { rights, exhausted: false }
}
