//! Conjugacy of rational maps by Möbius transformations.

use num_complex::Complex64;
use serde::Serialize;

use crate::decompose::numeric::gq_approx;
use crate::dynamics::{critical_points, form_zeros, multiplier_at, push_distinct, same_point};
use crate::ratfun::{CMobius, Mobius, Poly, ProjPoint, RatMap, GQ};

/// Denominator bound for reconstructing numeric conjugacies.
const DEN_BOUND: u64 = 1_000_000;
// Loose on purpose: near-coincident fixed points lose accuracy in their
// multipliers, and every positive answer is verified separately.
const MULT_TOL: f64 = 1e-4;

/// Conjugacy invariants: degree, fixed-point multipliers, number of critical values.
#[derive(Clone, Debug)]
pub struct Fingerprint {
    pub degree: usize,
    /// With multiplicity, sorted by real then imaginary part.
    pub multipliers: Vec<Complex64>,
    pub critical_values: usize,
}

impl Fingerprint {
    pub fn of(r: &RatMap) -> Fingerprint {
        let fixed = fixed_points(r);
        let mut multipliers: Vec<Complex64> = Vec::new();
        for (p, m) in &fixed {
            let mu = multiplier_at(r, p);
            multipliers.extend(std::iter::repeat_n(mu, *m));
        }
        multipliers.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let mut cv = Vec::new();
        if let Ok(cs) = critical_points(r) {
            for p in cs.distinct() {
                push_distinct(&mut cv, r.eval_proj(&p));
            }
        }
        Fingerprint { degree: r.degree(), multipliers, critical_values: cv.len() }
    }

    /// Multisets compared by greedy matching within a tolerance.
    pub fn matches(&self, other: &Fingerprint) -> bool {
        if self.degree != other.degree
            || self.critical_values != other.critical_values
            || self.multipliers.len() != other.multipliers.len()
        {
            return false;
        }
        let mut used = vec![false; other.multipliers.len()];
        self.multipliers.iter().all(|a| {
            let hit = other
                .multipliers
                .iter()
                .enumerate()
                .filter(|(i, b)| !used[*i] && (*a - **b).norm() <= MULT_TOL * a.norm().max(1.0))
                .min_by(|x, y| (*a - *x.1).norm().total_cmp(&(*a - *y.1).norm()));
            match hit {
                Some((i, _)) => {
                    used[i] = true;
                    true
                }
                None => false,
            }
        })
    }

    /// Stable text form, multipliers rounded to 9 digits.
    pub fn key(&self) -> String {
        let r9 = |x: f64| {
            let v = (x * 1e9).round() / 1e9;
            if v == 0.0 { 0.0 } else { v }
        };
        let mut ms: Vec<(f64, f64)> = self.multipliers.iter().map(|m| (r9(m.re), r9(m.im))).collect();
        ms.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let ms: Vec<String> = ms.iter().map(|(re, im)| format!("{re}{im:+}i")).collect();
        format!("d{}|cv{}|[{}]", self.degree, self.critical_values, ms.join(","))
    }
}

impl Serialize for Fingerprint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.key())
    }
}

fn fixed_points(r: &RatMap) -> Vec<(ProjPoint, usize)> {
    let form = r.num() - &(&Poly::x() * r.den());
    form_zeros(&form, r.degree() + 1).unwrap_or_default()
}

/// Conjugate of `r` by the translation moving the centroid of its finite
/// fixed points to 0, when that lowers the coefficient height. Undoes far-off
/// translates, whose expanded coefficients ruin the numeric invariants.
pub fn centered(r: &RatMap) -> (RatMap, Mobius) {
    let form = r.num() - &(&Poly::x() * r.den());
    let k = form.degree();
    if k == 0 {
        return (r.clone(), Mobius::identity());
    }
    let c = -&(&form.coeff(k - 1) / &(&form.lc() * &GQ::from_int(k as i64)));
    if c.is_zero() {
        return (r.clone(), Mobius::identity());
    }
    let g = Mobius::affine(GQ::one(), c);
    let s = r.conjugate_by(&g);
    if height(&s) < height(r) {
        (s, g)
    } else {
        (r.clone(), Mobius::identity())
    }
}

/// Total bit size of all coefficients.
fn height(r: &RatMap) -> u64 {
    let bits = |q: &num_rational::BigRational| q.numer().bits() + q.denom().bits();
    r.num().coeffs().iter().chain(r.den().coeffs()).map(|c| bits(&c.re) + bits(&c.im)).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "kebab-case")]
pub enum Conjugacy {
    /// `B = γ⁻¹∘A∘γ`, checked exactly.
    Verified(Mobius),
    /// A numerically valid conjugacy without Gaussian-rational reconstruction.
    NumericOnly(#[serde(serialize_with = "ser_cmobius")] CMobius),
    NotConjugate,
    Unknown,
}

fn ser_cmobius<S: serde::Serializer>(m: &CMobius, s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<String> = m.0.iter().map(|z| format!("{:.12e}{:+.12e}*i", z.re, z.im)).collect();
    v.serialize(s)
}

#[derive(Clone, Debug)]
struct Marked {
    point: ProjPoint,
    fixed: usize,
    crit: usize,
    /// 0 for fixed or critical points, 1 for their images, 2 for their preimages.
    tag: u8,
    multiplier: Option<Complex64>,
}

impl Marked {
    fn compatible(&self, o: &Marked) -> bool {
        self.fixed == o.fixed
            && self.crit == o.crit
            && self.tag == o.tag
            && match (self.multiplier, o.multiplier) {
                (Some(a), Some(b)) => (a - b).norm() <= MULT_TOL * a.norm().max(1.0),
                (None, None) => true,
                _ => false,
            }
    }
}

fn marked_points(r: &RatMap, extended: bool) -> Vec<Marked> {
    let mut out: Vec<Marked> = Vec::new();
    let crit = critical_points(r).map(|c| c.points).unwrap_or_default();
    for (p, m) in fixed_points(r) {
        let c = crit.iter().find(|(q, _)| same_point(q, &p)).map_or(0, |(_, k)| *k);
        let mu = multiplier_at(r, &p);
        out.push(Marked { point: p, fixed: m, crit: c, tag: 0, multiplier: Some(mu) });
    }
    for (p, k) in &crit {
        if !out.iter().any(|q| same_point(&q.point, p)) {
            out.push(Marked { point: p.clone(), fixed: 0, crit: *k, tag: 0, multiplier: None });
        }
    }
    if extended {
        let base: Vec<ProjPoint> = out.iter().map(|m| m.point.clone()).collect();
        for p in &base {
            let img = r.eval_proj(p);
            if !out.iter().any(|q| same_point(&q.point, &img)) {
                out.push(Marked { point: img, fixed: 0, crit: 0, tag: 1, multiplier: None });
            }
        }
        for p in &base {
            let (h, k) = point_form(p);
            for q in crate::dynamics::preimage_of_form(r, &h, k).unwrap_or_default() {
                if !out.iter().any(|m| same_point(&m.point, &q)) {
                    out.push(Marked { point: q, fixed: 0, crit: 0, tag: 2, multiplier: None });
                }
            }
        }
    }
    out
}

/// Linear form vanishing at `p`, exact when `p` is; for approximate points
/// the preimage is computed from a rounded Gaussian-rational form instead.
fn point_form(p: &ProjPoint) -> (Poly, usize) {
    if p.is_infinity() {
        return (Poly::one(), 1);
    }
    let g = match p.exact_value() {
        Some(v) => v,
        None => gq_approx(p.to_c64().unwrap_or_default(), 1 << 40).unwrap_or_else(GQ::zero),
    };
    (Poly::linear_root(&g), 1)
}

const SAMPLES: [(f64, f64); 5] = [(0.31, 0.72), (-1.13, 0.21), (2.47, -0.38), (0.05, -1.29), (7.3, 3.1)];

fn numerically_conjugate(a: &RatMap, b: &RatMap, g: &CMobius) -> bool {
    SAMPLES.iter().all(|&(re, im)| {
        let z = (Complex64::new(re, im), Complex64::new(1.0, 0.0));
        let (gx, gy) = g.apply(z);
        let lhs = a.eval_hom_c64(gx, gy);
        let (bx, by) = b.eval_hom_c64(z.0, z.1);
        let rhs = g.apply((bx, by));
        crate::ratfun::proj::chordal_hom(lhs, rhs) <= 1e-7
    })
}

fn reconstruct(g: &CMobius) -> Option<Mobius> {
    let big = g.0.iter().copied().max_by(|x, y| x.norm().total_cmp(&y.norm()))?;
    let e: Option<Vec<_>> = g.0.iter().map(|&v| gq_approx(v / big, DEN_BOUND)).collect();
    let e = e?;
    Mobius::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()).ok()
}

/// Searches for `γ` with `B = γ⁻¹∘A∘γ`.
pub fn conjugate_maps(a: &RatMap, b: &RatMap) -> Conjugacy {
    if a.degree() != b.degree() || a.degree() < 2 {
        return Conjugacy::NotConjugate;
    }
    if a == b {
        return Conjugacy::Verified(Mobius::identity());
    }
    // Work with centered forms; a far-off translate can make the numeric
    // invariants of an otherwise tame map meaningless.
    let (ca, ga) = centered(a);
    let (cb, gb) = centered(b);
    match conjugate_centered(&ca, &cb) {
        Conjugacy::Verified(h) => {
            let g = ga.compose(&h).compose(&gb.inverse());
            debug_assert!(a.conjugate_by(&g) == *b);
            Conjugacy::Verified(g)
        }
        Conjugacy::NumericOnly(h) => {
            // The centering translations can carry large denominators, so
            // retry reconstruction in the original coordinates.
            let c = |m: &Mobius| CMobius(m.to_c64());
            let g = c(&ga).compose(&h).compose(&c(&gb.inverse())).normalized();
            match reconstruct(&g) {
                Some(ex) if a.conjugate_by(&ex) == *b => Conjugacy::Verified(ex),
                _ => Conjugacy::NumericOnly(g),
            }
        }
        other => other,
    }
}

fn conjugate_centered(a: &RatMap, b: &RatMap) -> Conjugacy {
    if a == b {
        return Conjugacy::Verified(Mobius::identity());
    }
    if !Fingerprint::of(a).matches(&Fingerprint::of(b)) {
        return Conjugacy::NotConjugate;
    }
    let (mut ma, mut mb) = (marked_points(a, false), marked_points(b, false));
    if ma.len() < 3 || mb.len() < 3 {
        ma = marked_points(a, true);
        mb = marked_points(b, true);
        if ma.len() < 3 || mb.len() != ma.len() {
            return Conjugacy::Unknown;
        }
    }
    if ma.len() != mb.len() {
        return Conjugacy::NotConjugate;
    }
    // Anchor: three points of A with the fewest compatible partners in B.
    let mut order: Vec<(usize, usize)> =
        ma.iter().enumerate().map(|(i, m)| (mb.iter().filter(|n| m.compatible(n)).count(), i)).collect();
    order.sort();
    if order.iter().any(|(c, _)| *c == 0) {
        return Conjugacy::NotConjugate;
    }
    let anchor: Vec<&Marked> = order.iter().take(3).map(|(_, i)| &ma[*i]).collect();
    let cands: Vec<Vec<&Marked>> = anchor.iter().map(|m| mb.iter().filter(|n| m.compatible(n)).collect()).collect();
    let pa: Vec<ProjPoint> = anchor.iter().map(|m| m.point.clone()).collect();
    let mut numeric: Option<CMobius> = None;
    for q0 in &cands[0] {
        for q1 in &cands[1] {
            for q2 in &cands[2] {
                let qs = [&q0.point, &q1.point, &q2.point];
                if same_point(qs[0], qs[1]) || same_point(qs[0], qs[2]) || same_point(qs[1], qs[2]) {
                    continue;
                }
                if pa.iter().chain(qs).all(ProjPoint::is_exact) {
                    if let Ok(g) = Mobius::from_three_points(qs, [&pa[0], &pa[1], &pa[2]]) {
                        if a.conjugate_by(&g) == *b {
                            return Conjugacy::Verified(g);
                        }
                    }
                    continue;
                }
                let hom = |p: &ProjPoint| p.unit_c64();
                let Some(g) = CMobius::from_three_points(
                    [hom(qs[0]), hom(qs[1]), hom(qs[2])],
                    [hom(&pa[0]), hom(&pa[1]), hom(&pa[2])],
                ) else {
                    continue;
                };
                if !numerically_conjugate(a, b, &g) {
                    continue;
                }
                if let Some(ex) = reconstruct(&g) {
                    if a.conjugate_by(&ex) == *b {
                        return Conjugacy::Verified(ex);
                    }
                }
                numeric.get_or_insert(g.normalized());
            }
        }
    }
    match numeric {
        Some(g) => Conjugacy::NumericOnly(g),
        None => Conjugacy::NotConjugate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::parse_ratmap as p;

    #[test]
    fn examples() {
        let a = p("z^2").unwrap();
        let g = Mobius::affine(GQ::one(), GQ::one());
        let b = a.mobius_apply(Some(&g), Some(&g.inverse()));
        match conjugate_maps(&a, &b) {
            Conjugacy::Verified(w) => assert_eq!(a.conjugate_by(&w), b),
            other => panic!("{other:?}"),
        }
        assert_eq!(conjugate_maps(&a, &p("2*z^2-1").unwrap()), Conjugacy::NotConjugate);
        assert_eq!(conjugate_maps(&a, &a), Conjugacy::Verified(Mobius::identity()));
    }

    #[test]
    fn irrational_anchor_points() {
        // Irrational fixed points, rational conjugacy.
        let a = p("(z^3+2)/(z^2-z+3)").unwrap();
        let g = Mobius::new(GQ::from_int(1), GQ::from_int(2), GQ::from_int(-1), GQ::from_int(3)).unwrap();
        let b = a.conjugate_by(&g);
        match conjugate_maps(&a, &b) {
            Conjugacy::Verified(w) => assert_eq!(a.conjugate_by(&w), b),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fingerprints_agree_on_conjugates() {
        let a = p("(z-1)^2/(z+1)^2").unwrap();
        let b = a.conjugate_by(&Mobius::affine(GQ::from_int(3), GQ::gaussian(0, 1)));
        assert!(Fingerprint::of(&a).matches(&Fingerprint::of(&b)));
        assert_eq!(Fingerprint::of(&a).key(), Fingerprint::of(&b).key());
    }
}
