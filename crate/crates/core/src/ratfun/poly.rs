//! Dense univariate polynomials over ℚ(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::gq::GQ;

/// Coefficients are stored lowest degree first; the last stored coefficient is
/// nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GQ>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GQ>) -> Self {
        while coeffs.last().is_some_and(GQ::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| GQ::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(GQ::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![GQ::zero(), GQ::one()])
    }

    pub fn constant(c: GQ) -> Self {
        Poly::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: GQ, k: usize) -> Self {
        let mut v = vec![GQ::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// `x - a`.
    pub fn linear_root(a: &GQ) -> Self {
        Poly::new(vec![-a, GQ::one()])
    }

    pub fn coeffs(&self) -> &[GQ] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> GQ {
        self.coeffs.get(k).cloned().unwrap_or_else(GQ::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> GQ {
        self.coeffs.last().cloned().unwrap_or_else(GQ::zero)
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(GQ::is_real)
    }

    pub fn eval(&self, x: &GQ) -> GQ {
        let mut acc = GQ::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c.to_c64())
    }

    pub fn to_c64(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(GQ::to_c64).collect()
    }

    pub fn scale(&self, c: &GQ) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lc().inv())
    }

    pub fn conj(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(GQ::conj).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &GQ::from_int(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dl = d.coeffs.len();
        let inv = d.lc().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![GQ::zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let f = top * &inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &f * dc;
                r[k + j] -= &t;
            }
            q[k] = f;
        }
        r.truncate(dl - 1);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self`, otherwise `None`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    /// Substitution `self(inner(x))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `x ↦ x + a`.
    pub fn shift(&self, a: &GQ) -> Poly {
        self.compose(&Poly::new(vec![a.clone(), GQ::one()]))
    }

    /// Reverses the coefficient vector padded to length `n + 1`: `x^n · p(1/x)`.
    pub fn reversed(&self, n: usize) -> Poly {
        assert!(self.is_zero() || self.degree() <= n);
        let mut v = vec![GQ::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[n - k] = c.clone();
        }
        Poly::new(v)
    }

    /// Order of vanishing at `x = 0`.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

/// `Σ_k c_k · p^k · q^(d-k)`: the homogenized substitution of the pencil `(p : q)`
/// into a form of degree `d` with coefficient list `c`.
pub fn homogeneous_substitute(c: &Poly, d: usize, p: &Poly, q: &Poly) -> Poly {
    let mut p_pows = Vec::with_capacity(d + 1);
    let mut q_pows = Vec::with_capacity(d + 1);
    p_pows.push(Poly::one());
    q_pows.push(Poly::one());
    for k in 1..=d {
        p_pows.push(&p_pows[k - 1] * p);
        q_pows.push(&q_pows[k - 1] * q);
    }
    let mut acc = Poly::zero();
    for k in 0..=d {
        let ck = c.coeff(k);
        if ck.is_zero() {
            continue;
        }
        acc = &acc + &(&p_pows[k] * &q_pows[d - k]).scale(&ck);
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![GQ::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a * b;
                v[i + j] += &t;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

/// Coefficient formatting shared with the rational-map printer.
pub(crate) fn fmt_coeff_term(c: &GQ, k: usize, first: bool, out: &mut String) {
    let var = match k {
        0 => String::new(),
        1 => "z".to_string(),
        _ => format!("z^{k}"),
    };
    let zero = num_rational::BigRational::from_integer(0.into());
    let (neg, mag) = if (c.im.is_zero() && c.re < zero) || (c.re.is_zero() && c.im < zero) {
        (true, -c)
    } else {
        (false, c.clone())
    };
    if neg {
        out.push('-');
    } else if !first {
        out.push('+');
    }
    let compound = !mag.re.is_zero() && !mag.im.is_zero();
    let mag_str = mag.to_string();
    if k == 0 {
        if compound {
            out.push_str(&format!("({mag_str})"));
        } else {
            out.push_str(&mag_str);
        }
        return;
    }
    if mag.is_one() {
        out.push_str(&var);
    } else if compound {
        out.push_str(&format!("({mag_str})*{var}"));
    } else {
        out.push_str(&format!("{mag_str}*{var}"));
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            fmt_coeff_term(c, k, first, &mut s);
            first = false;
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        let a = Poly::from_ints(&[-1, 0, 1]); // z^2 - 1
        let b = Poly::from_ints(&[1, 1]); // z + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        let c = Poly::from_ints(&[1, 2, 1]);
        assert_eq!(a.gcd(&c), b);
        assert_eq!(Poly::from_ints(&[1, 0, 1]).gcd(&b), Poly::one());
    }

    #[test]
    fn compose_and_shift() {
        let p = Poly::from_ints(&[0, 0, 1]);
        let s = p.shift(&GQ::from_int(1));
        assert_eq!(s, Poly::from_ints(&[1, 2, 1]));
        assert_eq!(p.compose(&p), Poly::from_ints(&[0, 0, 0, 0, 1]));
    }

    #[test]
    fn display() {
        let p = Poly::new(vec![GQ::from_int(-1), GQ::gaussian(0, 2), GQ::from_ratio(3, 4)]);
        assert_eq!(p.to_string(), "3/4*z^2+2*i*z-1");
        let q = Poly::new(vec![GQ::gaussian(1, 1), GQ::gaussian(-1, 2)]);
        assert_eq!(q.to_string(), "(-1+2*i)*z+(1+i)");
    }
}
