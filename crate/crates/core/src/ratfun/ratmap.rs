//! Rational maps of the Riemann sphere with exact ℚ(i) coefficients.
//!
//! Every `RatMap` is stored in lowest terms with a monic denominator, so two
//! maps are equal exactly when their stored polynomials are equal.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::gq::GQ;
use super::mobius::Mobius;
use super::poly::{homogeneous_substitute, Poly};
use super::proj::ProjPoint;
use crate::error::{Error, Result};

/// Default cap on the degree of any composite or iterate.
pub const DEFAULT_DEGREE_BUDGET: usize = 4096;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMap {
    num: Poly,
    den: Poly,
    degree: usize,
}

impl RatMap {
    /// Reduces `num/den` to lowest terms and scales the denominator to be monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatMap { num, den: Poly::one(), degree: 0 });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Caller guarantees `gcd(num, den) = 1` and `den ≠ 0`.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> Self {
        let s = den.lc().inv();
        let num = num.scale(&s);
        let den = den.scale(&s);
        let degree = num.degree().max(den.degree());
        RatMap { num, den, degree }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::from_coprime(p, Poly::one())
    }

    pub fn identity() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn constant(c: GQ) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `z^n` for `n ≥ 0`, `1/z^|n|` for negative `n`.
    pub fn power(n: i64) -> Self {
        let m = Poly::monomial(GQ::one(), n.unsigned_abs() as usize);
        if n >= 0 {
            Self::from_poly(m)
        } else {
            Self::from_coprime(Poly::one(), m)
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_identity(&self) -> bool {
        *self == RatMap::identity()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RatMap) -> RatMap {
        if self.is_constant() {
            return self.clone();
        }
        if inner.is_constant() {
            let v = self.eval_proj(&ProjPoint::finite(inner.num.coeff(0)));
            return match v.exact_value() {
                Some(c) => RatMap::constant(c),
                // Constant ∞ has no finite representative.
                None => panic!("composition evaluates to the constant ∞"),
            };
        }
        let d = self.degree;
        let num = homogeneous_substitute(&self.num, d, &inner.num, &inner.den);
        let den = homogeneous_substitute(&self.den, d, &inner.num, &inner.den);
        // Coprime forms stay coprime under substitution of a coprime pencil.
        RatMap::from_coprime(num, den)
    }

    /// `self ∘ inner`, refusing results above `budget` in degree.
    pub fn compose_within(&self, inner: &RatMap, budget: usize) -> Result<RatMap> {
        let needed = self.degree as u128 * inner.degree as u128;
        if needed > budget as u128 {
            return Err(Error::DegreeBudget { needed, budget });
        }
        Ok(self.compose(inner))
    }

    /// `n`-th iterate.
    pub fn iterate(&self, n: usize, budget: usize) -> Result<RatMap> {
        if n == 0 {
            return Ok(RatMap::identity());
        }
        let needed = (self.degree as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if needed > budget as u128 {
            return Err(Error::DegreeBudget { needed, budget });
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose(&acc);
        }
        Ok(acc)
    }

    /// `num'·den − num·den'`; its roots are the finite critical points.
    pub fn wronskian(&self) -> Poly {
        &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative())
    }

    /// Homogeneous evaluation, total on the sphere.
    pub fn eval_proj(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Exact { x, y } => {
                let (f, g) = self.eval_hom(x, y);
                ProjPoint::exact(f, g)
            }
            ProjPoint::Approx { x, y } => {
                let (f, g) = self.eval_hom_c64(*x, *y);
                ProjPoint::approx_hom(f, g)
            }
        }
    }

    pub fn eval(&self, z: &GQ) -> ProjPoint {
        self.eval_proj(&ProjPoint::finite(z.clone()))
    }

    /// `(F(x, y), G(x, y))` for the degree-`d` homogenizations of num and den.
    pub fn eval_hom(&self, x: &GQ, y: &GQ) -> (GQ, GQ) {
        let d = self.degree;
        let mut xp = vec![GQ::one()];
        let mut yp = vec![GQ::one()];
        for k in 1..=d {
            xp.push(&xp[k - 1] * x);
            yp.push(&yp[k - 1] * y);
        }
        let form = |p: &Poly| {
            let mut acc = GQ::zero();
            for (k, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc += &(&(c * &xp[k]) * &yp[d - k]);
                }
            }
            acc
        };
        (form(&self.num), form(&self.den))
    }

    pub fn eval_hom_c64(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        hom_eval_c64(&self.num.to_c64(), &self.den.to_c64(), self.degree, x, y)
    }

    /// `post ∘ self ∘ pre`.
    pub fn mobius_apply(&self, pre: Option<&Mobius>, post: Option<&Mobius>) -> RatMap {
        let mut r = self.clone();
        if let Some(g) = pre {
            r = r.compose(&g.to_ratmap());
        }
        if let Some(g) = post {
            r = g.to_ratmap().compose(&r);
        }
        r
    }

    /// `γ⁻¹ ∘ self ∘ γ`.
    pub fn conjugate_by(&self, gamma: &Mobius) -> RatMap {
        self.mobius_apply(Some(gamma), Some(&gamma.inverse()))
    }

    /// Interprets a degree-1 map as a Möbius transformation.
    pub fn to_mobius(&self) -> Option<Mobius> {
        if self.degree != 1 {
            return None;
        }
        Mobius::new(self.num.coeff(1), self.num.coeff(0), self.den.coeff(1), self.den.coeff(0)).ok()
    }

    pub fn to_expr(&self) -> String {
        self.to_string()
    }
}

/// Homogeneous evaluation of the pair of degree-`d` forms given by coefficient lists.
pub fn hom_eval_c64(
    num: &[Complex64],
    den: &[Complex64],
    d: usize,
    x: Complex64,
    y: Complex64,
) -> (Complex64, Complex64) {
    // Horner in whichever affine chart is better conditioned.
    let eval = |c: &[Complex64]| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        if y.norm() >= x.norm() {
            let t = x / y;
            for k in (0..=d).rev() {
                acc = acc * t + c.get(k).copied().unwrap_or_default();
            }
            acc * y.powu(d as u32)
        } else {
            let t = y / x;
            for k in 0..=d {
                acc = acc * t + c.get(k).copied().unwrap_or_default();
            }
            acc * x.powu(d as u32)
        }
    };
    (eval(num), eval(den))
}

fn needs_parens(p: &Poly) -> bool {
    p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
        || p.coeffs().last().is_some_and(|c| !c.re.is_zero() && !c.im.is_zero())
}

impl fmt::Display for RatMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMap({self})")
    }
}

impl Serialize for RatMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = |p: &Poly| p.coeffs().iter().map(GQ::to_exact_string).collect::<Vec<_>>();
        let mut st = s.serialize_struct("RatMap", 4)?;
        st.serialize_field("expr", &self.to_string())?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("num", &coeffs(&self.num))?;
        st.serialize_field("den", &coeffs(&self.den))?;
        st.end()
    }
}
