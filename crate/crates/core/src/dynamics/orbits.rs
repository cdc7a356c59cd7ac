//! Critical-orbit classification in double precision.
//!
//! Points are carried in one of two affine charts (`z` when `|z| ≤ 1`, `1/z`
//! otherwise), so derivatives along a cycle multiply to its multiplier.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::ratfun::proj::chordal_hom;
use crate::ratfun::{Mobius, ProjPoint, RatMap, GQ};

use super::critical_points;

#[derive(Clone, Copy, Debug)]
pub struct OrbitConfig {
    pub max_iter: usize,
    /// Nearest-return distance (chordal) that triggers cycle refinement.
    pub tol: f64,
    pub period_cap: usize,
    /// An attracting cycle needs multiplier modulus below `1 − margin`.
    pub margin: f64,
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig { max_iter: 10_000, tol: 1e-8, period_cap: 64, margin: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OrbitStatus {
    Attracted {
        period: usize,
        #[serde(rename = "multiplierAbs")]
        multiplier_abs: f64,
    },
    Undecided { iterations: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub point: ProjPoint,
    #[serde(flatten)]
    pub status: OrbitStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    HeuristicallyHyperbolic,
    NotDecided,
}

#[derive(Clone, Debug)]
pub struct OrbitClassification {
    pub map: RatMap,
    pub critical_points: Vec<ProjPoint>,
    pub orbits: Vec<OrbitReport>,
    pub verdict: Verdict,
}

impl OrbitClassification {
    pub fn to_json(&self) -> Value {
        json!({
            "map": self.map,
            "criticalPoints": self.critical_points,
            "orbits": self.orbits,
            "verdict": self.verdict,
        })
    }
}

/// Numeric coefficient data of a map in both charts.
struct ChartMap {
    f: Vec<Complex64>,
    g: Vec<Complex64>,
    /// `u^d f(1/u)` and `u^d g(1/u)`.
    fr: Vec<Complex64>,
    gr: Vec<Complex64>,
}

/// A point in chart coordinates: `u = z` or, when `inv`, `u = 1/z`.
#[derive(Clone, Copy, Debug)]
struct Pt {
    u: Complex64,
    inv: bool,
}

impl Pt {
    fn from_hom((x, y): (Complex64, Complex64)) -> Pt {
        if x.norm() > y.norm() {
            Pt { u: y / x, inv: true }
        } else {
            Pt { u: x / y, inv: false }
        }
    }

    fn hom(self) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        if self.inv {
            (one, self.u)
        } else {
            (self.u, one)
        }
    }
}

fn horner_d(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

impl ChartMap {
    fn new(r: &RatMap) -> ChartMap {
        let d = r.degree();
        let pad = |v: Vec<Complex64>| {
            let mut v = v;
            v.resize(d + 1, Complex64::new(0.0, 0.0));
            v
        };
        let f = pad(r.num().to_c64());
        let g = pad(r.den().to_c64());
        let fr = f.iter().rev().copied().collect();
        let gr = g.iter().rev().copied().collect();
        ChartMap { f, g, fr, gr }
    }

    /// Image of `p` and the derivative in chart coordinates; the target chart
    /// is `force` if given, else the better-conditioned one.
    fn step(&self, p: Pt, force: Option<bool>) -> (Pt, Complex64) {
        let (fc, gc) = if p.inv { (&self.fr, &self.gr) } else { (&self.f, &self.g) };
        let (a, da) = horner_d(fc, p.u);
        let (b, db) = horner_d(gc, p.u);
        let out_inv = force.unwrap_or(a.norm() > b.norm());
        if out_inv {
            (Pt { u: b / a, inv: true }, (db * a - b * da) / (a * a))
        } else {
            (Pt { u: a / b, inv: false }, (da * b - a * db) / (b * b))
        }
    }

    /// `Rᵖ` in the chart of `p`, with derivative.
    fn iterate(&self, p: Pt, period: usize) -> (Pt, Complex64) {
        let mut cur = p;
        let mut d = Complex64::new(1.0, 0.0);
        for k in 0..period {
            let force = (k + 1 == period).then_some(p.inv);
            let (next, dk) = self.step(cur, force);
            cur = next;
            d *= dk;
        }
        (cur, d)
    }
}

/// Multiplier of `R` at a fixed point, exact at exact points.
pub fn multiplier_at(r: &RatMap, p: &ProjPoint) -> Complex64 {
    if p.is_infinity() && p.is_exact() {
        let flipped = r.conjugate_by(&Mobius::inversion());
        return multiplier_at(&flipped, &ProjPoint::finite(GQ::zero()));
    }
    if let Some(a) = p.exact_value() {
        let (f, g) = (r.num(), r.den());
        let ga = g.eval(&a);
        if !ga.is_zero() {
            let top = &(&f.derivative().eval(&a) * &ga) - &(&f.eval(&a) * &g.derivative().eval(&a));
            return (&top / &(&ga * &ga)).to_c64();
        }
    }
    let cm = ChartMap::new(r);
    let pt = Pt::from_hom(p.unit_c64());
    cm.step(pt, Some(pt.inv)).1
}

/// Newton refinement of a period-`p` point near `start`; returns the multiplier.
fn refine_cycle(cm: &ChartMap, start: Pt, period: usize) -> Option<Complex64> {
    let mut u = start.u;
    for _ in 0..60 {
        let (v, dv) = cm.iterate(Pt { u, inv: start.inv }, period);
        let den = dv - 1.0;
        if !den.norm().is_normal() {
            break;
        }
        let du = (v.u - u) / den;
        if !du.re.is_finite() || !du.im.is_finite() {
            return None;
        }
        u += du;
        if du.norm() <= 1e-15 * u.norm().max(1.0) {
            break;
        }
    }
    let refined = Pt { u, inv: start.inv };
    let (v, dv) = cm.iterate(refined, period);
    let close = chordal_hom(refined.hom(), start.hom()) <= 1e-6;
    let fixed = chordal_hom(v.hom(), refined.hom()) <= 1e-10;
    (close && fixed && dv.re.is_finite() && dv.im.is_finite()).then_some(dv)
}

fn classify_orbit(cm: &ChartMap, start: Pt, cfg: &OrbitConfig) -> OrbitStatus {
    let cap = cfg.period_cap;
    let mut ring: Vec<(Complex64, Complex64)> = vec![start.hom(); cap + 1];
    let mut cur = start;
    let mut resume = 0;
    for k in 1..=cfg.max_iter {
        cur = cm.step(cur, None).0;
        ring[k % (cap + 1)] = cur.hom();
        // Checking every few steps keeps long undecided runs cheap.
        if k < resume || (k % 8 != 0 && k > 16) {
            continue;
        }
        let here = ring[k % (cap + 1)];
        let Some(p) = (1..=cap.min(k)).find(|&p| chordal_hom(here, ring[(k - p) % (cap + 1)]) < cfg.tol) else {
            continue;
        };
        match refine_cycle(cm, cur, p) {
            Some(lambda) if lambda.norm() < 1.0 - cfg.margin => {
                return OrbitStatus::Attracted { period: p, multiplier_abs: lambda.norm() };
            }
            _ => resume = k + 256,
        }
    }
    OrbitStatus::Undecided { iterations: cfg.max_iter }
}

pub fn classify_critical_orbits(r: &RatMap, cfg: &OrbitConfig) -> Result<OrbitClassification> {
    let crit = critical_points(r)?.distinct();
    let cm = ChartMap::new(r);
    let orbits: Vec<OrbitReport> = crit
        .iter()
        .map(|c| OrbitReport { point: c.clone(), status: classify_orbit(&cm, Pt::from_hom(c.unit_c64()), cfg) })
        .collect();
    let verdict = if orbits.iter().all(|o| matches!(o.status, OrbitStatus::Attracted { .. })) {
        Verdict::HeuristicallyHyperbolic
    } else {
        Verdict::NotDecided
    };
    Ok(OrbitClassification { map: r.clone(), critical_points: crit, orbits, verdict })
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    /// Verdict for `R1∘R2`.
    pub forward: Verdict,
    /// Verdict for `R2∘R1`.
    pub backward: Verdict,
    #[serde(rename = "bothDecided")]
    pub both_decided: bool,
    pub agree: bool,
}

/// Classifies both `R1∘R2` and `R2∘R1` and compares the verdicts.
pub fn hyperbolic_symmetry_probe(r1: &RatMap, r2: &RatMap, cfg: &OrbitConfig) -> Result<SymmetryReport> {
    let forward = classify_critical_orbits(&r1.compose(r2), cfg)?.verdict;
    let backward = classify_critical_orbits(&r2.compose(r1), cfg)?.verdict;
    let decided = |v: Verdict| v == Verdict::HeuristicallyHyperbolic;
    Ok(SymmetryReport {
        forward,
        backward,
        both_decided: decided(forward) && decided(backward),
        agree: forward == backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::parse_ratmap as p;

    #[test]
    fn basilica_and_square() {
        let c = classify_critical_orbits(&p("z^2-1").unwrap(), &OrbitConfig::default()).unwrap();
        assert_eq!(c.verdict, Verdict::HeuristicallyHyperbolic);
        let periods: Vec<usize> = c
            .orbits
            .iter()
            .map(|o| match o.status {
                OrbitStatus::Attracted { period, .. } => period,
                _ => 0,
            })
            .collect();
        assert!(periods.contains(&2));
        let c = classify_critical_orbits(&p("z^2").unwrap(), &OrbitConfig::default()).unwrap();
        assert_eq!(c.verdict, Verdict::HeuristicallyHyperbolic);
    }

    #[test]
    fn parabolic_is_undecided() {
        let c = classify_critical_orbits(&p("z^2+1/4").unwrap(), &OrbitConfig::default()).unwrap();
        assert_eq!(c.verdict, Verdict::NotDecided);
    }

    #[test]
    fn multipliers() {
        let r = p("z^2").unwrap();
        assert!(multiplier_at(&r, &ProjPoint::finite(crate::ratfun::GQ::one())).re - 2.0 < 1e-12);
        assert!(multiplier_at(&r, &ProjPoint::infinity()).norm() < 1e-12);
    }

    #[test]
    fn symmetry_probe_examples() {
        let cfg = OrbitConfig::default();
        let rep = hyperbolic_symmetry_probe(&p("z^2").unwrap(), &p("z^2-1").unwrap(), &cfg).unwrap();
        assert!(rep.both_decided && rep.agree);
        let rep = hyperbolic_symmetry_probe(&p("4*z/(z+1)^2").unwrap(), &p("z^2").unwrap(), &cfg).unwrap();
        assert!(rep.agree);
    }
}
