//! Exact Gaussian rationals `re + im·i` with `re, im ∈ ℚ`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An element of ℚ(i). Both parts are kept in lowest terms by `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl GQ {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GQ { re, im }
    }

    pub fn zero() -> Self {
        GQ { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        GQ::from_int(1)
    }

    pub fn i() -> Self {
        GQ { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GQ { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GQ { re: BigRational::from_integer(n), im: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GQ::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn real(re: BigRational) -> Self {
        GQ { re, im: BigRational::zero() }
    }

    /// `a + b·i` with integer parts.
    pub fn gaussian(a: i64, b: i64) -> Self {
        GQ {
            re: BigRational::from_integer(BigInt::from(a)),
            im: BigRational::from_integer(BigInt::from(b)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> GQ {
        GQ { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> GQ {
        assert!(!self.is_zero(), "inverse of zero in Q(i)");
        let n = self.norm_sqr();
        GQ { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn pow(&self, mut e: u32) -> GQ {
        let mut base = self.clone();
        let mut acc = GQ::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denom_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.re.denom(), self.im.denom())
    }

    /// Serialized form `a/b+c/d*i` (parts omitted when zero).
    pub fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Huge numerator or denominator: drop common low bits first.
    let (n, d) = (r.numer(), r.denom());
    let s = n.bits().max(d.bits()).saturating_sub(900) as usize;
    let nn = (n >> s).to_f64().unwrap_or(f64::NAN);
    let dd = (d >> s).to_f64().unwrap_or(f64::NAN);
    nn / dd
}

fn fmt_rat(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rat(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rat(&self.re, f)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_one() {
            write!(f, "i")
        } else if (-self.im.clone()).is_one() {
            write!(f, "-i")
        } else {
            fmt_rat(&self.im, f)?;
            write!(f, "*i")
        }
    }
}

impl fmt::Debug for GQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for GQ {
    fn from(n: i64) -> Self {
        GQ::from_int(n)
    }
}

impl From<BigRational> for GQ {
    fn from(r: BigRational) -> Self {
        GQ::real(r)
    }
}

macro_rules! forward_binop {
    ($Tr:ident, $m:ident, $body:expr) => {
        impl<'a> $Tr<&'a GQ> for &'a GQ {
            type Output = GQ;
            fn $m(self, rhs: &'a GQ) -> GQ {
                let f: fn(&GQ, &GQ) -> GQ = $body;
                f(self, rhs)
            }
        }
        impl $Tr<GQ> for GQ {
            type Output = GQ;
            fn $m(self, rhs: GQ) -> GQ {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $Tr<&'a GQ> for GQ {
            type Output = GQ;
            fn $m(self, rhs: &'a GQ) -> GQ {
                (&self).$m(rhs)
            }
        }
        impl<'a> $Tr<GQ> for &'a GQ {
            type Output = GQ;
            fn $m(self, rhs: GQ) -> GQ {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GQ { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GQ { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GQ::real(&a.re * &b.re);
    }
    GQ { re: &a.re * &b.re - &a.im * &b.im, im: &a.re * &b.im + &a.im * &b.re }
});
forward_binop!(Div, div, |a, b| {
    if b.im.is_zero() {
        assert!(!b.re.is_zero(), "division by zero in Q(i)");
        return GQ { re: &a.re / &b.re, im: &a.im / &b.re };
    }
    a * &b.inv()
});

impl Neg for GQ {
    type Output = GQ;
    fn neg(self) -> GQ {
        GQ { re: -self.re, im: -self.im }
    }
}

impl Neg for &GQ {
    type Output = GQ;
    fn neg(self) -> GQ {
        GQ { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GQ> for GQ {
    fn add_assign(&mut self, rhs: &GQ) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GQ> for GQ {
    fn sub_assign(&mut self, rhs: &GQ) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GQ> for GQ {
    fn mul_assign(&mut self, rhs: &GQ) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_identities() {
        let a = GQ::gaussian(3, -2);
        let b = GQ::from_ratio(1, 7) + GQ::i();
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv(), GQ::one());
        assert_eq!(GQ::i() * GQ::i(), GQ::from_int(-1));
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }

    #[test]
    fn display_forms() {
        assert_eq!(GQ::from_ratio(-3, 4).to_string(), "-3/4");
        assert_eq!(GQ::gaussian(0, 1).to_string(), "i");
        assert_eq!(GQ::gaussian(2, -1).to_string(), "2-i");
        assert_eq!((GQ::from_ratio(1, 2) + GQ::from_ratio(3, 5) * GQ::i()).to_string(), "1/2+3/5*i");
    }

    #[test]
    fn huge_values_convert() {
        let big = BigInt::from(10).pow(400);
        let r = BigRational::new(big.clone() * 3, big);
        assert!((rat_to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
