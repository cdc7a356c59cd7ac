//! Points of the Riemann sphere in homogeneous coordinates.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::gq::GQ;

/// `(x : y)` with `(x, y) ≠ (0, 0)`; `∞ = (1 : 0)`.
#[derive(Clone)]
pub enum ProjPoint {
    Exact { x: GQ, y: GQ },
    Approx { x: Complex64, y: Complex64 },
}

impl ProjPoint {
    pub fn exact(x: GQ, y: GQ) -> Self {
        assert!(!(x.is_zero() && y.is_zero()), "(0:0) is not a point");
        ProjPoint::Exact { x, y }.normalized()
    }

    pub fn finite(z: GQ) -> Self {
        ProjPoint::Exact { x: z, y: GQ::one() }
    }

    pub fn infinity() -> Self {
        ProjPoint::Exact { x: GQ::one(), y: GQ::zero() }
    }

    pub fn approx(z: Complex64) -> Self {
        ProjPoint::Approx { x: z, y: Complex64::new(1.0, 0.0) }
    }

    pub fn approx_hom(x: Complex64, y: Complex64) -> Self {
        ProjPoint::Approx { x, y }.normalized()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ProjPoint::Exact { .. })
    }

    /// Rescaled so that `y = 1`, or `(1 : 0)` at infinity.
    pub fn normalized(self) -> Self {
        match self {
            ProjPoint::Exact { x, y } => {
                if y.is_zero() {
                    ProjPoint::Exact { x: GQ::one(), y }
                } else {
                    ProjPoint::Exact { x: &x / &y, y: GQ::one() }
                }
            }
            ProjPoint::Approx { x, y } => {
                if y.norm() >= x.norm() {
                    ProjPoint::Approx { x: x / y, y: Complex64::new(1.0, 0.0) }
                } else {
                    ProjPoint::Approx { x: Complex64::new(1.0, 0.0), y: y / x }
                }
            }
        }
    }

    pub fn is_infinity(&self) -> bool {
        match self {
            ProjPoint::Exact { y, .. } => y.is_zero(),
            ProjPoint::Approx { x, y } => y.norm() <= 1e-300 * x.norm().max(1e-300),
        }
    }

    /// Affine coordinate of an exact finite point.
    pub fn exact_value(&self) -> Option<GQ> {
        match self {
            ProjPoint::Exact { x, y } if !y.is_zero() => Some(x / y),
            _ => None,
        }
    }

    pub fn hom_c64(&self) -> (Complex64, Complex64) {
        match self {
            ProjPoint::Exact { x, y } => (x.to_c64(), y.to_c64()),
            ProjPoint::Approx { x, y } => (*x, *y),
        }
    }

    /// Homogeneous coordinates scaled to unit max-modulus.
    pub fn unit_c64(&self) -> (Complex64, Complex64) {
        let (x, y) = self.hom_c64();
        let s = x.norm().max(y.norm());
        (x / s, y / s)
    }

    pub fn to_approx(&self) -> ProjPoint {
        let (x, y) = self.hom_c64();
        ProjPoint::approx_hom(x, y)
    }

    /// Chordal distance on the sphere, in `[0, 1]`.
    pub fn chordal(&self, other: &ProjPoint) -> f64 {
        chordal_hom(self.hom_c64(), other.hom_c64())
    }

    /// Exact equality when both are exact, otherwise chordal distance within `tol`.
    pub fn same_point(&self, other: &ProjPoint, tol: f64) -> bool {
        match (self, other) {
            (ProjPoint::Exact { x: x1, y: y1 }, ProjPoint::Exact { x: x2, y: y2 }) => {
                x1 * y2 == x2 * y1
            }
            _ => self.chordal(other) <= tol,
        }
    }

    pub fn to_c64(&self) -> Option<Complex64> {
        let (x, y) = self.hom_c64();
        (y.norm() > 0.0).then(|| x / y)
    }
}

pub fn chordal_hom(a: (Complex64, Complex64), b: (Complex64, Complex64)) -> f64 {
    let cross = (a.0 * b.1 - a.1 * b.0).norm();
    let na = (a.0.norm_sqr() + a.1.norm_sqr()).sqrt();
    let nb = (b.0.norm_sqr() + b.1.norm_sqr()).sqrt();
    cross / (na * nb)
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.same_point(other, 0.0)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.clone().normalized() {
            ProjPoint::Exact { x, y } => {
                if y.is_zero() {
                    write!(f, "inf")
                } else {
                    write!(f, "{x}")
                }
            }
            p @ ProjPoint::Approx { .. } => {
                if p.is_infinity() {
                    return write!(f, "inf");
                }
                let z = p.to_c64().unwrap_or_default();
                if z.im == 0.0 {
                    write!(f, "~{:.12e}", z.re)
                } else {
                    write!(f, "~{:.12e}{:+.12e}*i", z.re, z.im)
                }
            }
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
