//! Simultaneous numerical root finding (Aberth–Ehrlich) with root clustering.

use num_complex::Complex64;
use serde::Serialize;

use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct RootConfig {
    /// Relative step size below which an iterate counts as converged.
    pub tol: f64,
    /// Relative distance under which roots are merged into one cluster.
    pub cluster: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig { tol: 1e-10, cluster: 1e-8, max_iter: 1000 }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct NumericRoot {
    #[serde(serialize_with = "ser_c64")]
    pub value: Complex64,
    pub multiplicity: usize,
    /// `|P(value)|`.
    pub residual: f64,
    /// Rounding-error bound for evaluating `P` at `value`; a root is accepted
    /// only when its residual stays below a small multiple of this bound.
    pub residual_bound: f64,
}

fn ser_c64<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{:.15e}{:+.15e}*i", z.re, z.im))
}

/// All complex roots of an exact polynomial, clustered with multiplicities.
pub fn roots_numeric(p: &Poly, cfg: &RootConfig) -> Result<Vec<NumericRoot>> {
    roots_c64(&p.to_c64(), cfg)
}

/// Same as [`roots_numeric`] for floating-point coefficients (lowest degree first).
pub fn roots_c64(coeffs: &[Complex64], cfg: &RootConfig) -> Result<Vec<NumericRoot>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|v| *v == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    assert!(c.len() >= 2, "roots of a constant polynomial");
    let zeros = c.iter().take_while(|v| v.norm() == 0.0).count();
    let reduced = &c[zeros..];
    let mut approx = aberth(reduced, cfg)?;
    approx.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros));
    Ok(cluster(&c, approx, cfg.cluster))
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn eval_bound(c: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let s = c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm());
    s * f64::EPSILON * (4 * c.len() + 1) as f64
}

fn aberth(c: &[Complex64], cfg: &RootConfig) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![-c[0] / c[1]]);
    }
    let lead = c[n].norm();
    // Fujiwara-style radius for the starting circle.
    let radius = (1..=n)
        .map(|k| (c[n - k].norm() / lead).powf(1.0 / k as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    for _ in 0..cfg.max_iter {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(c, z[i]);
            if p.norm() <= eval_bound(c, z[i]) {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.re.is_finite() || !w.im.is_finite() {
                let bump = Complex64::new(1e-8, 1e-8) * (1.0 + z[i].norm());
                z[i] += bump;
                all = false;
                continue;
            }
            z[i] -= w;
            if w.norm() <= cfg.tol * 1e-4 * z[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Ok(polish(c, z));
        }
    }
    // Clustered (multiple) roots converge slowly; accept when residuals are tiny.
    let ok = z.iter().all(|&zi| horner(c, zi).0.norm() <= 1e6 * eval_bound(c, zi).max(f64::MIN_POSITIVE));
    if ok {
        Ok(z)
    } else {
        Err(Error::NonConvergence { iterations: cfg.max_iter })
    }
}

/// One or two Newton steps on isolated roots.
fn polish(c: &[Complex64], mut z: Vec<Complex64>) -> Vec<Complex64> {
    for zi in z.iter_mut() {
        for _ in 0..2 {
            let (p, dp) = horner(c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            let cand = *zi - step;
            if horner(c, cand).0.norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    z
}

fn cluster(c: &[Complex64], z: Vec<Complex64>, thresh: f64) -> Vec<NumericRoot> {
    let n = z.len();
    let deg = (c.len() - 1) as f64;
    // Newton inclusion radius: the disk of radius n|p/p'| around z holds a root.
    let incl: Vec<f64> = z
        .iter()
        .map(|&zi| {
            let (p, dp) = horner(c, zi);
            if dp.norm() == 0.0 { 0.0 } else { deg * (p / dp).norm() }
        })
        .collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let scale = z[i].norm().max(z[j].norm()).max(1.0);
            let gap = (z[i] - z[j]).norm();
            let overlap = gap <= incl[i] + incl[j] && incl[i].max(incl[j]) <= 1e-4 * scale;
            if gap <= thresh * scale || overlap {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, v)) => v.push(z[i]),
            None => groups.push((r, vec![z[i]])),
        }
    }
    let mut out: Vec<NumericRoot> = groups
        .into_iter()
        .map(|(_, v)| {
            let m = v.len();
            let value = v.iter().sum::<Complex64>() / m as f64;
            NumericRoot {
                value,
                multiplicity: m,
                residual: horner(c, value).0.norm(),
                residual_bound: eval_bound(c, value),
            }
        })
        .collect();
    out.sort_by(|a, b| a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im)));
    out
}
