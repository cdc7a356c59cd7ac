//! Critical sets, the chain rule for critical points, critical-orbit
//! classification and detection of power and Chebyshev normal forms.

mod orbits;
mod special;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::factor_gaussian;
use crate::ratfun::poly::homogeneous_substitute;
use crate::ratfun::{roots_numeric, Poly, ProjPoint, RatMap, RootConfig};

pub use orbits::{
    classify_critical_orbits, hyperbolic_symmetry_probe, multiplier_at, OrbitClassification, OrbitConfig, OrbitReport,
    OrbitStatus, SymmetryReport, Verdict,
};
pub use special::{chebyshev, detect_special, SpecialForm, SpecialKind};

/// Tolerance for matching approximate points on the sphere (chordal metric).
pub const POINT_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct CriticalSet {
    pub points: Vec<(ProjPoint, usize)>,
    pub total: usize,
}

impl CriticalSet {
    pub fn riemann_hurwitz_ok(&self, degree: usize) -> bool {
        self.total == 2 * degree - 2
    }

    pub fn distinct(&self) -> Vec<ProjPoint> {
        self.points.iter().map(|(p, _)| p.clone()).collect()
    }
}

/// Zeros on the sphere of the binary form of degree `k` whose dehomogenization
/// is `h`; `∞` carries multiplicity `k − deg h`. Rational zeros are exact, the
/// others come from numeric roots of exact irreducible factors.
pub fn form_zeros(h: &Poly, k: usize) -> Result<Vec<(ProjPoint, usize)>> {
    let mut out = Vec::new();
    if h.is_zero() {
        return Err(Error::domain("zero form has no finite zero set"));
    }
    if h.degree() > 0 {
        for (g, m) in factor_gaussian(h).factors {
            if g.degree() == 1 {
                out.push((ProjPoint::finite(-g.coeff(0)), m));
            } else {
                for r in roots_numeric(&g, &RootConfig::default())? {
                    out.push((ProjPoint::approx(r.value), m * r.multiplicity));
                }
            }
        }
    }
    if k > h.degree() {
        out.push((ProjPoint::infinity(), k - h.degree()));
    }
    sort_points(&mut out);
    Ok(out)
}

fn sort_points(v: &mut [(ProjPoint, usize)]) {
    v.sort_by(|(a, _), (b, _)| point_order(a, b));
}

pub(crate) fn point_order(a: &ProjPoint, b: &ProjPoint) -> std::cmp::Ordering {
    let key = |p: &ProjPoint| {
        let (x, y) = p.unit_c64();
        let z = if y.norm() > 0.0 { x / y } else { num_complex::Complex64::new(f64::INFINITY, 0.0) };
        (!p.is_exact(), z.re, z.im)
    };
    let (ka, kb) = (key(a), key(b));
    ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(ka.2.total_cmp(&kb.2))
}

/// Critical points with multiplicities, from the Wronskian read as a form of degree `2d − 2`.
pub fn critical_points(r: &RatMap) -> Result<CriticalSet> {
    let d = r.degree();
    if d < 2 {
        return Err(Error::domain("critical points need degree at least 2"));
    }
    let points = form_zeros(&r.wronskian(), 2 * d - 2)?;
    let total = points.iter().map(|(_, m)| m).sum();
    Ok(CriticalSet { points, total })
}

/// Points equal exactly when both are exact, otherwise within [`POINT_TOL`].
pub fn same_point(a: &ProjPoint, b: &ProjPoint) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        a.chordal(b) <= POINT_TOL
    }
}

pub(crate) fn push_distinct(set: &mut Vec<ProjPoint>, p: ProjPoint) {
    if !set.iter().any(|q| same_point(q, &p)) {
        set.push(p);
    }
}

/// Preimage under `r` of the zeros of a degree-`k` form `h`.
pub fn preimage_of_form(r: &RatMap, h: &Poly, k: usize) -> Result<Vec<ProjPoint>> {
    let pulled = homogeneous_substitute(h, k, r.num(), r.den());
    Ok(form_zeros(&pulled, k * r.degree())?.into_iter().map(|(p, _)| p).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainRuleReport {
    pub holds: bool,
    /// `Cr(R1∘R2)`.
    pub lhs: Vec<ProjPoint>,
    /// `R2⁻¹(Cr(R1)) ∪ Cr(R2)`.
    pub rhs: Vec<ProjPoint>,
    #[serde(rename = "onlyLhs")]
    pub only_lhs: Vec<ProjPoint>,
    #[serde(rename = "onlyRhs")]
    pub only_rhs: Vec<ProjPoint>,
}

/// Compares `Cr(R1∘R2)` with `R2⁻¹(Cr(R1)) ∪ Cr(R2)` as sets of points.
pub fn chain_rule_check(r1: &RatMap, r2: &RatMap) -> Result<ChainRuleReport> {
    if r1.degree() < 2 || r2.degree() < 2 {
        return Err(Error::domain("chain rule check needs degrees at least 2"));
    }
    let mut lhs = Vec::new();
    for p in critical_points(&r1.compose(r2))?.distinct() {
        push_distinct(&mut lhs, p);
    }
    let mut rhs = Vec::new();
    for p in critical_points(r2)?.distinct() {
        push_distinct(&mut rhs, p);
    }
    // Cr(R1) as a product of forms: each irreducible factor of the Wronskian, and y for ∞.
    let w1 = r1.wronskian();
    let mut forms: Vec<(Poly, usize)> = factor_gaussian(&w1).factors.into_iter().map(|(g, _)| {
        let k = g.degree();
        (g, k)
    }).collect();
    if w1.degree() < 2 * r1.degree() - 2 {
        forms.push((Poly::one(), 1));
    }
    for (h, k) in forms {
        for p in preimage_of_form(r2, &h, k)? {
            push_distinct(&mut rhs, p);
        }
    }
    let only_lhs: Vec<ProjPoint> = lhs.iter().filter(|p| !rhs.iter().any(|q| same_point(p, q))).cloned().collect();
    let only_rhs: Vec<ProjPoint> = rhs.iter().filter(|p| !lhs.iter().any(|q| same_point(p, q))).cloned().collect();
    let by_order = |v: &mut Vec<ProjPoint>| v.sort_by(point_order);
    by_order(&mut lhs);
    by_order(&mut rhs);
    Ok(ChainRuleReport { holds: only_lhs.is_empty() && only_rhs.is_empty(), lhs, rhs, only_lhs, only_rhs })
}
