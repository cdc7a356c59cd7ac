//! Möbius transformations `z ↦ (az + b)/(cz + d)` as matrices modulo scalars.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use super::gq::GQ;
use super::poly::Poly;
use super::proj::ProjPoint;
use super::ratmap::RatMap;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Mobius {
    pub a: GQ,
    pub b: GQ,
    pub c: GQ,
    pub d: GQ,
}

impl Mobius {
    pub fn new(a: GQ, b: GQ, c: GQ, d: GQ) -> Result<Self> {
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::domain("singular Möbius matrix"));
        }
        Ok(Mobius { a, b, c, d }.normalized())
    }

    pub fn identity() -> Self {
        Mobius { a: GQ::one(), b: GQ::zero(), c: GQ::zero(), d: GQ::one() }
    }

    /// `z ↦ a·z + b`.
    pub fn affine(a: GQ, b: GQ) -> Self {
        Mobius::new(a, b, GQ::zero(), GQ::one()).expect("a ≠ 0")
    }

    /// `z ↦ 1/z`.
    pub fn inversion() -> Self {
        Mobius { a: GQ::zero(), b: GQ::one(), c: GQ::one(), d: GQ::zero() }
    }

    pub fn det(&self) -> GQ {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// Scales so the first nonzero entry of `(c, d)` is 1.
    fn normalized(self) -> Self {
        let s = if !self.c.is_zero() { self.c.inv() } else { self.d.inv() };
        Mobius { a: &self.a * &s, b: &self.b * &s, c: &self.c * &s, d: &self.d * &s }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            a: &(&self.a * &other.a) + &(&self.b * &other.c),
            b: &(&self.a * &other.b) + &(&self.b * &other.d),
            c: &(&self.c * &other.a) + &(&self.d * &other.c),
            d: &(&self.c * &other.b) + &(&self.d * &other.d),
        }
        .normalized()
    }

    pub fn inverse(&self) -> Mobius {
        Mobius { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }.normalized()
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        match p {
            ProjPoint::Exact { x, y } => ProjPoint::exact(
                &(&self.a * x) + &(&self.b * y),
                &(&self.c * x) + &(&self.d * y),
            ),
            ProjPoint::Approx { x, y } => {
                let m = self.to_c64();
                ProjPoint::approx_hom(m[0] * x + m[1] * y, m[2] * x + m[3] * y)
            }
        }
    }

    pub fn to_ratmap(&self) -> RatMap {
        RatMap::new(
            Poly::new(vec![self.b.clone(), self.a.clone()]),
            Poly::new(vec![self.d.clone(), self.c.clone()]),
        )
        .expect("nonsingular Möbius has nonzero denominator")
    }

    pub fn to_c64(&self) -> [Complex64; 4] {
        [self.a.to_c64(), self.b.to_c64(), self.c.to_c64(), self.d.to_c64()]
    }

    /// The unique `γ` with `γ(p_k) = q_k` for `k = 1, 2, 3`.
    pub fn from_three_points(p: [&ProjPoint; 3], q: [&ProjPoint; 3]) -> Result<Mobius> {
        let tp = to_standard(p)?;
        let tq = to_standard(q)?;
        Ok(tq.inverse().compose(&tp))
    }
}

fn hom(p: &ProjPoint) -> Result<(GQ, GQ)> {
    match p {
        ProjPoint::Exact { x, y } => Ok((x.clone(), y.clone())),
        ProjPoint::Approx { .. } => Err(Error::NotExact),
    }
}

/// Linear form vanishing at `(x : y)`, evaluated at `(u : v)`.
fn lform(p: &(GQ, GQ), u: &(GQ, GQ)) -> GQ {
    &(&p.1 * &u.0) - &(&p.0 * &u.1)
}

/// Sends `p1, p2, p3` to `0, 1, ∞`.
fn to_standard(p: [&ProjPoint; 3]) -> Result<Mobius> {
    let (p1, p2, p3) = (hom(p[0])?, hom(p[1])?, hom(p[2])?);
    let k1 = lform(&p3, &p2);
    let k3 = lform(&p1, &p2);
    if k1.is_zero() || k3.is_zero() || lform(&p1, &p3).is_zero() {
        return Err(Error::RepeatedPoints);
    }
    Mobius::new(&p1.1 * &k1, -&(&p1.0 * &k1), &p3.1 * &k3, -&(&p3.0 * &k3))
}

impl PartialEq for Mobius {
    fn eq(&self, o: &Self) -> bool {
        // Proportional matrices: all 2×2 minors of the stacked entries vanish.
        let s = [&self.a, &self.b, &self.c, &self.d];
        let t = [&o.a, &o.b, &o.c, &o.d];
        (0..4).all(|i| (i + 1..4).all(|j| s[i] * t[j] == s[j] * t[i]))
    }
}

impl Eq for Mobius {}

impl fmt::Display for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratmap())
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mobius[{}, {}; {}, {}]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Mobius {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Floating-point Möbius candidate used during witness searches.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMobius(pub [Complex64; 4]);

impl CMobius {
    pub fn apply(&self, (x, y): (Complex64, Complex64)) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[0] * x + m[1] * y, m[2] * x + m[3] * y)
    }

    pub fn inverse(&self) -> CMobius {
        let m = &self.0;
        CMobius([m[3], -m[1], -m[2], m[0]])
    }

    pub fn compose(&self, o: &CMobius) -> CMobius {
        let (s, t) = (&self.0, &o.0);
        CMobius([
            s[0] * t[0] + s[1] * t[2],
            s[0] * t[1] + s[1] * t[3],
            s[2] * t[0] + s[3] * t[2],
            s[2] * t[1] + s[3] * t[3],
        ])
    }

    pub fn from_three_points(p: [(Complex64, Complex64); 3], q: [(Complex64, Complex64); 3]) -> Option<CMobius> {
        let tp = c_standard(p)?;
        let tq = c_standard(q)?;
        Some(tq.inverse().compose(&tp))
    }

    /// Divides by the entry of largest modulus.
    pub fn normalized(&self) -> CMobius {
        let big = self.0.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).unwrap();
        CMobius(self.0.map(|v| v / big))
    }
}

fn c_standard(p: [(Complex64, Complex64); 3]) -> Option<CMobius> {
    let l = |a: (Complex64, Complex64), u: (Complex64, Complex64)| a.1 * u.0 - a.0 * u.1;
    let k1 = l(p[2], p[1]);
    let k3 = l(p[0], p[1]);
    let scale = |a: (Complex64, Complex64)| a.0.norm().max(a.1.norm());
    let tiny = 1e-12 * scale(p[0]) * scale(p[1]).max(scale(p[2]));
    if k1.norm() <= tiny || k3.norm() <= tiny || l(p[0], p[2]).norm() <= tiny {
        return None;
    }
    Some(CMobius([p[0].1 * k1, -p[0].0 * k1, p[2].1 * k3, -p[2].0 * k3]))
}
