//! Numeric tier: partitions of a generic fiber into blocks that form the
//! fibers of a right factor, followed by rational reconstruction and exact
//! re-verification.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::Result;
use crate::ratfun::proj::chordal_hom;
use crate::ratfun::{roots_numeric, Poly, RatMap, GQ};

use super::exact::sample_points;
use super::{canonical_right, left_factor_solve, Budget, DegreeSplit};

pub(super) struct NumericOutput {
    pub rights: Vec<RatMap>,
    pub exhausted: bool,
    pub unverified: usize,
}

/// Number of partitions of `n` points into blocks of size `d2`.
pub(super) fn partition_count(n: usize, d2: usize) -> f64 {
    let lf = |k: usize| (1..=k).map(|i| (i as f64).ln()).sum::<f64>();
    let d1 = n / d2;
    (lf(n) - d1 as f64 * lf(d2) - lf(d1)).exp().round()
}

/// Roots of `f − c·g` for the first sample value `c` giving a squarefree fiber
/// of full degree, skipping the values in `avoid`.
fn generic_fiber(r: &RatMap, avoid: &[GQ], budget: &Budget) -> Result<(GQ, Vec<Complex64>)> {
    let n = r.degree();
    for c in sample_points() {
        if avoid.contains(&c) {
            continue;
        }
        let f = r.num() - &r.den().scale(&c);
        if f.degree() != n || f.gcd(&f.derivative()).degree() > 0 {
            continue;
        }
        let roots = roots_numeric(&f, &budget.roots)?;
        if roots.len() == n {
            return Ok((c, roots.into_iter().map(|x| x.value).collect()));
        }
    }
    unreachable!("all sample values critical")
}

/// Monic polynomial with the given roots, coefficients highest degree first.
fn block_poly(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &z in roots {
        c.push(Complex64::new(0.0, 0.0));
        for k in (1..c.len()).rev() {
            let prev = c[k - 1];
            c[k] -= z * prev;
        }
    }
    c
}

fn horner_desc(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

fn scale_of(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(1.0, f64::max)
}

/// Is the monic `pj` an affine combination of `p0` and `p1`?
fn in_pencil(p0: &[Complex64], p1: &[Complex64], pj: &[Complex64]) -> bool {
    let u: Vec<Complex64> = p0.iter().zip(p1).map(|(a, b)| a - b).collect();
    let v: Vec<Complex64> = pj.iter().zip(p1).map(|(a, b)| a - b).collect();
    let uu: f64 = u.iter().map(|x| x.norm_sqr()).sum();
    if uu == 0.0 {
        return false;
    }
    let alpha: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum::<Complex64>() / uu;
    let res: f64 = u.iter().zip(&v).map(|(a, b)| (b - alpha * a).norm_sqr()).sum::<f64>().sqrt();
    res <= 1e-6 * scale_of(pj).max(scale_of(p0))
}

/// The values of `p0/p1` on a second fiber must form `d1` clusters of size `d2`.
fn second_fiber_ok(p0: &[Complex64], p1: &[Complex64], fiber: &[Complex64], d2: usize) -> bool {
    let vals: Vec<(Complex64, Complex64)> = fiber.iter().map(|&s| (horner_desc(p0, s), horner_desc(p1, s))).collect();
    vals.iter().all(|&a| vals.iter().filter(|&&b| chordal_hom(a, b) <= 1e-6).count() == d2)
}

/// Numeric reduced row echelon form of the pencil `span{p0, p1}`.
fn pencil_rref(p0: &[Complex64], p1: &[Complex64]) -> Option<(Vec<Complex64>, Vec<Complex64>)> {
    let mut r1 = p0.to_vec();
    let mut r2: Vec<Complex64> = p1.iter().zip(p0).map(|(a, b)| a - b).collect();
    let scale = scale_of(p0).max(scale_of(p1));
    let piv = r2.iter().position(|x| x.norm() > 1e-7 * scale)?;
    let inv = r2[piv].inv();
    for x in r2.iter_mut() {
        *x *= inv;
    }
    for x in r2.iter_mut().take(piv) {
        *x = Complex64::new(0.0, 0.0);
    }
    r2[piv] = Complex64::new(1.0, 0.0);
    let f = r1[piv];
    for (a, b) in r1.iter_mut().zip(&r2) {
        *a -= f * b;
    }
    r1[piv] = Complex64::new(0.0, 0.0);
    Some((r1, r2))
}

/// Best rational approximation with denominator at most `bound`, accepted
/// only when it matches `x` to a relative `1e-8`.
pub(crate) fn rat_approx(x: f64, bound: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let tol = 1e-8 * x.abs().max(1.0);
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut y = x;
    for _ in 0..64 {
        let a = y.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > bound as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = y - a;
        if frac == 0.0 {
            break;
        }
        y = 1.0 / frac;
    }
    (k1 != 0 && (x - h1 as f64 / k1 as f64).abs() <= tol).then(|| BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

pub(crate) fn gq_approx(z: Complex64, bound: u64) -> Option<GQ> {
    Some(GQ::new(rat_approx(z.re, bound)?, rat_approx(z.im, bound)?))
}

fn reconstruct(row: &[Complex64], bound: u64) -> Option<Poly> {
    let c: Option<Vec<GQ>> = row.iter().rev().map(|&z| gq_approx(z, bound)).collect();
    Some(Poly::new(c?))
}

/// Visits every partition of `0..n` into blocks of size `d`, first element of
/// each block minimal; stops when `visit` returns false.
fn partitions(n: usize, d: usize, visit: &mut dyn FnMut(&[Vec<usize>]) -> bool) {
    fn rec(rest: &[usize], d: usize, blocks: &mut Vec<Vec<usize>>, visit: &mut dyn FnMut(&[Vec<usize>]) -> bool) -> bool {
        if rest.is_empty() {
            return visit(blocks);
        }
        let first = rest[0];
        let others = &rest[1..];
        let mut idx: Vec<usize> = (0..d - 1).collect();
        loop {
            let mut block = vec![first];
            block.extend(idx.iter().map(|&i| others[i]));
            let remaining: Vec<usize> =
                others.iter().enumerate().filter(|(i, _)| !idx.contains(i)).map(|(_, &x)| x).collect();
            blocks.push(block);
            let go = rec(&remaining, d, blocks, visit);
            blocks.pop();
            if !go {
                return false;
            }
            // next (d−1)-combination of `others`
            let k = idx.len();
            let m = others.len();
            let mut i = k;
            loop {
                if i == 0 {
                    return true;
                }
                i -= 1;
                if idx[i] < m - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    let all: Vec<usize> = (0..n).collect();
    rec(&all, d, &mut Vec::new(), visit);
}

pub(super) fn numeric_tier(r: &RatMap, split: DegreeSplit, budget: &Budget) -> Result<NumericOutput> {
    let (c, fiber) = generic_fiber(r, &[], budget)?;
    let (_, fiber2) = generic_fiber(r, &[c], budget)?;
    let mut rights: Vec<RatMap> = Vec::new();
    let mut unverified = 0;
    let mut seen = 0usize;
    let mut exhausted = false;
    partitions(r.degree(), split.d2, &mut |blocks| {
        seen += 1;
        if seen > budget.partition_cap {
            exhausted = true;
            return false;
        }
        let polys: Vec<Vec<Complex64>> =
            blocks.iter().map(|b| block_poly(&b.iter().map(|&i| fiber[i]).collect::<Vec<_>>())).collect();
        let (p0, p1) = (&polys[0], &polys[1]);
        if !polys[2..].iter().all(|pj| in_pencil(p0, p1, pj)) || !second_fiber_ok(p0, p1, &fiber2, split.d2) {
            return true;
        }
        let Some((r1, r2)) = pencil_rref(p0, p1) else { return true };
        let exact = reconstruct(&r1, budget.den_bound)
            .zip(reconstruct(&r2, budget.den_bound))
            .and_then(|(a, b)| RatMap::new(a, b).ok())
            .filter(|b| b.degree() == split.d2)
            .map(|b| canonical_right(&b))
            .filter(|b| left_factor_solve(r, b).is_some());
        match exact {
            Some(b) if !rights.contains(&b) => rights.push(b),
            Some(_) => {}
            None => unverified += 1,
        }
        true
    });
    Ok(NumericOutput { rights, exhausted, unverified })
}
