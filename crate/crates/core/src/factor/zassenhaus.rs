//! Factorization of squarefree primitive integer polynomials: modular
//! factorization, Hensel lifting and exhaustive recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{Fp, PolyP};

pub type ZPoly = Vec<BigInt>;

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103,
    107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211,
    223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317, 331,
    337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421, 431, 433, 439, 443, 449,
    457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541, 547, 557, 563, 569, 571, 577, 587,
    593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653, 659, 661, 673, 677, 683, 691, 701, 709,
    719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787, 797, 809, 811, 821, 823, 827, 829, 839, 853,
    857, 859, 863, 877, 881, 883, 887, 907, 911, 919, 929, 937, 941, 947, 953, 967, 971, 977, 983, 991, 997,
];

/// Number of good primes tried when choosing the modular image.
const PRIME_TRIALS: usize = 6;

pub fn trim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn deg(f: &ZPoly) -> usize {
    f.len().saturating_sub(1)
}

pub fn content(f: &ZPoly) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(f: &ZPoly) -> ZPoly {
    let mut c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    if f.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    f.iter().map(|x| x / &c).collect()
}

pub fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

/// Exact quotient `a / b` over ℤ, or `None` if `b` does not divide `a`.
pub fn exact_div(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (f, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &f * bj;
        }
        q[k] = f;
    }
    if r.iter().all(Zero::is_zero) {
        Some(trim(q))
    } else {
        None
    }
}

fn to_modp(fp: &Fp, f: &ZPoly) -> PolyP {
    let pb = BigInt::from(fp.p);
    fp.trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced mod p")).collect())
}

fn from_modp(f: &PolyP) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn reduce(f: &ZPoly, m: &BigInt) -> ZPoly {
    trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn add_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn sub_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

/// Division by a monic polynomial, reducing everything modulo `m`.
fn div_rem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = reduce(a, m);
    let db = deg(b);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    (reduce(&q, m), reduce(&r, m))
}

/// Lifts `f ≡ g·h (mod p)` (all monic) to a factorization modulo `p^k`,
/// squaring the modulus at each step.
fn hensel_two(f: &ZPoly, g: &PolyP, h: &PolyP, fp: &Fp, k: u32) -> (ZPoly, ZPoly) {
    let (one, s, t) = fp.ext_gcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let target = BigInt::from(fp.p).pow(k);
    let (mut g, mut h) = (from_modp(g), from_modp(h));
    let (mut s, mut t) = (from_modp(&s), from_modp(&t));
    let mut m = BigInt::from(fp.p);
    while m < target {
        m = &m * &m;
        // s·g + t·h ≡ 1 and f ≡ g·h modulo the previous modulus.
        let e = reduce(&sub_z(f, &mul(&g, &h)), &m);
        let (q, r) = div_rem_monic(&mul(&s, &e), &h, &m);
        let g2 = reduce(&add_z(&add_z(&g, &mul(&t, &e)), &mul(&q, &g)), &m);
        let h2 = reduce(&add_z(&h, &r), &m);
        let b = reduce(&sub_z(&add_z(&mul(&s, &g2), &mul(&t, &h2)), &vec![BigInt::one()]), &m);
        let (c, d) = div_rem_monic(&mul(&s, &b), &h2, &m);
        s = reduce(&sub_z(&s, &d), &m);
        t = reduce(&sub_z(&sub_z(&t, &mul(&t, &b)), &mul(&c, &g2)), &m);
        (g, h) = (g2, h2);
    }
    (reduce(&g, &target), reduce(&h, &target))
}

/// Lifts the monic modular factors of monic `f` (mod `p^k`) along a balanced tree.
fn hensel_multi(f: &ZPoly, factors: &[PolyP], fp: &Fp, k: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let m = BigInt::from(fp.p).pow(k);
        return vec![reduce(f, &m)];
    }
    let mid = factors.len() / 2;
    let g = factors[..mid].iter().fold(vec![1u64], |acc, x| fp.mul_poly(&acc, x));
    let h = factors[mid..].iter().fold(vec![1u64], |acc, x| fp.mul_poly(&acc, x));
    let (gz, hz) = hensel_two(f, &g, &h, fp, k);
    let mut out = hensel_multi(&gz, &factors[..mid], fp, k);
    out.extend(hensel_multi(&hz, &factors[mid..], fp, k));
    out
}

fn subset_degrees(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree primitive polynomial of positive degree.
pub fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let f = primitive(&trim(f.clone()));
    let n = deg(&f);
    if n <= 1 {
        return vec![f];
    }
    // x | f is handled directly so the modular images have nonzero constant term.
    if f[0].is_zero() {
        let rest = primitive(&f[1..].to_vec());
        let mut out = vec![vec![BigInt::zero(), BigInt::one()]];
        if deg(&rest) > 0 {
            out.extend(factor_squarefree(&rest));
        }
        return out;
    }
    let lc = f.last().unwrap().clone();

    // Pick the good prime with the fewest modular factors; intersect degree sets.
    let mut best: Option<(Fp, Vec<PolyP>)> = None;
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut tried = 0;
    for &p in PRIMES {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Fp::new(p);
        let fm = fp.monic(&to_modp(&fp, &f));
        if Fp::deg(&fp.gcd(&fm, &fp.derivative(&fm))) > 0 {
            continue;
        }
        let fac = fp.factor_squarefree(&fm);
        let degs: Vec<usize> = fac.iter().map(Fp::deg).collect();
        let sd = subset_degrees(&degs);
        allowed = Some(match allowed {
            None => sd,
            Some(a) => a.intersection(&sd).copied().collect(),
        });
        if best.as_ref().is_none_or(|(_, b)| fac.len() < b.len()) {
            best = Some((fp, fac));
        }
        tried += 1;
        if tried >= PRIME_TRIALS || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (fp, modular) = best.expect("some prime keeps a squarefree image");
    let allowed = allowed.unwrap();
    if modular.len() == 1 || allowed.iter().all(|&d| d == 0 || d == n) {
        return vec![f];
    }

    // Coefficient bound for lc·(any factor), doubled for the symmetric range.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (norm2 << n) * lc.abs() * 2;
    let p = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lc_inv = mod_inverse(&lc, &pk);
    let monic_f: ZPoly = reduce(&f.iter().map(|c| c * &lc_inv).collect(), &pk);
    let lifted = hensel_multi(&monic_f, &modular, &fp, k);

    recombine(f, lifted, &pk, &allowed)
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, pk: &BigInt, allowed: &BTreeSet<usize>) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let d: usize = idx.iter().map(|&i| deg(&lifted[i])).sum();
            if allowed.contains(&d) {
                let lc = f.last().unwrap().clone();
                let mut cand = vec![lc.clone()];
                for &i in &idx {
                    cand = reduce(&mul(&cand, &lifted[i]), pk);
                }
                let cand = primitive(&symmetric(&cand, pk));
                let const_ok = cand[0].is_zero() || (&f[0] % &cand[0]).is_zero();
                if const_ok {
                    if let Some(q) = exact_div(&f, &cand) {
                        out.push(cand);
                        f = q;
                        for &i in idx.iter().rev() {
                            lifted.remove(i);
                        }
                        found = true;
                    }
                }
            }
            if found || !next_combination(&mut idx, r) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if deg(&f) > 0 {
        out.push(primitive(&f));
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}
