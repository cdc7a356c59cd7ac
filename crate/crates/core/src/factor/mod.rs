//! Exact factorization of polynomials over ℚ(i).
//!
//! Real polynomials go through Zassenhaus over ℤ; each rational irreducible
//! (and every non-real squarefree part) is then split over ℚ(i) with
//! Trager's norm method.

pub mod modp;
pub mod zassenhaus;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ratfun::{Poly, GQ};
use zassenhaus::ZPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: GQ,
    /// Monic irreducible factors with multiplicities, in a canonical order.
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    /// Roots lying in ℚ(i), with multiplicities.
    pub fn linear_roots(&self) -> Vec<(GQ, usize)> {
        self.factors
            .iter()
            .filter(|(f, _)| f.degree() == 1)
            .map(|(f, m)| (-f.coeff(0), *m))
            .collect()
    }
}

/// Yun's squarefree decomposition of a nonconstant polynomial: monic
/// pairwise coprime squarefree parts with their multiplicities.
pub fn squarefree(f: &Poly) -> Vec<(Poly, usize)> {
    let f = f.monic();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut k = 1;
    while b.degree() > 0 {
        let a = b.gcd(&d);
        if a.degree() > 0 {
            out.push((a.clone(), k));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        k += 1;
    }
    out
}

pub fn factor_gaussian(f: &Poly) -> Factorization {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let unit = f.lc();
    let mut factors = Vec::new();
    if f.degree() > 0 {
        for (part, m) in squarefree(f) {
            for g in split_squarefree(&part) {
                factors.push((g, m));
            }
        }
    }
    factors.sort_by_cached_key(|(g, m)| sort_key(g, *m));
    Factorization { unit, factors }
}

fn sort_key(g: &Poly, m: usize) -> (usize, Vec<String>, usize) {
    (g.degree(), g.coeffs().iter().map(GQ::to_exact_string).collect(), m)
}

/// Monic irreducible factors over ℚ(i) of a monic squarefree polynomial.
fn split_squarefree(h: &Poly) -> Vec<Poly> {
    if h.degree() <= 1 {
        return vec![h.clone()];
    }
    if h.is_real() {
        let mut out = Vec::new();
        for g in factor_rational(h) {
            if g.degree() % 2 == 0 && g.degree() > 0 {
                out.extend(trager(&g));
            } else {
                out.push(g);
            }
        }
        out
    } else {
        trager(h)
    }
}

/// Monic irreducible factors over ℚ of a real squarefree polynomial.
fn factor_rational(h: &Poly) -> Vec<Poly> {
    let z = to_zpoly(h);
    zassenhaus::factor_squarefree(&z).iter().map(from_zpoly).collect()
}

/// Trager's algorithm: splits a squarefree `h` over ℚ(i) via the rational
/// factorization of `N(x) = h(x + s·i)·conj(h)(x - s·i)` for a shift `s`
/// making the norm squarefree.
fn trager(h: &Poly) -> Vec<Poly> {
    for s in shifts() {
        let shift = GQ::new(BigRational::zero(), BigRational::from_integer(s.into()));
        let hs = h.shift(&shift);
        let norm = &hs * &hs.conj();
        debug_assert!(norm.is_real());
        if norm.gcd(&norm.derivative()).degree() > 0 {
            continue;
        }
        let parts = factor_rational(&norm);
        if parts.len() == 1 {
            return vec![h.clone()];
        }
        let back = -shift;
        let mut out: Vec<Poly> = parts
            .iter()
            .map(|nj| hs.gcd(nj))
            .filter(|g| g.degree() > 0)
            .map(|g| g.shift(&back).monic())
            .collect();
        out.sort_by_cached_key(|g| sort_key(g, 1));
        return out;
    }
    unreachable!("only finitely many shifts give a non-squarefree norm")
}

fn shifts() -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..).flat_map(|k| [k, -k]))
}

fn to_zpoly(h: &Poly) -> ZPoly {
    let l = h.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()));
    zassenhaus::trim(
        h.coeffs()
            .iter()
            .map(|c| (c.re.clone() * BigRational::from_integer(l.clone())).to_integer())
            .collect(),
    )
}

fn from_zpoly(z: &ZPoly) -> Poly {
    Poly::new(z.iter().map(|c| GQ::from_bigint(c.clone())).collect()).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::parse_ratmap;

    fn p(s: &str) -> Poly {
        parse_ratmap(s).unwrap().num().clone()
    }

    fn check(f: &Poly, expected_degs: &[(usize, usize)]) {
        let fz = factor_gaussian(f);
        assert_eq!(fz.expand(), *f);
        let mut degs: Vec<(usize, usize)> = fz.factors.iter().map(|(g, m)| (g.degree(), *m)).collect();
        degs.sort();
        assert_eq!(degs, expected_degs);
    }

    #[test]
    fn splits_sum_of_squares_over_gaussian_field() {
        check(&p("z^2+1"), &[(1, 1), (1, 1)]);
        check(&p("z^4+1"), &[(2, 1), (2, 1)]);
        check(&p("z^4-16"), &[(1, 1), (1, 1), (1, 1), (1, 1)]);
        check(&p("z^4-4"), &[(2, 1), (2, 1)]);
    }

    #[test]
    fn multiplicities_and_units() {
        check(&p("3*(z-1)^3*(z^2+z+1)^2"), &[(1, 3), (2, 2)]);
        check(&p("(2*z-i)^2*(z+i)"), &[(1, 1), (1, 2)]);
    }

    #[test]
    fn non_real_irreducible() {
        // z^2 - i has roots ±(1+i)/√2, not in ℚ(i).
        check(&p("z^2-i"), &[(2, 1)]);
        check(&p("(z^2-i)*(z-1-i)"), &[(1, 1), (2, 1)]);
    }

    #[test]
    fn linear_roots_are_exact() {
        let fz = factor_gaussian(&p("(z-1/2)*(z^2+4)"));
        let mut roots: Vec<String> = fz.linear_roots().iter().map(|(r, _)| r.to_string()).collect();
        roots.sort();
        assert_eq!(roots, vec!["-2*i", "1/2", "2*i"]);
    }
}
