//! Recursive-descent parser for rational-map expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+') factor | power ('@' power)*
//! power  := atom ('^' uint)?
//! atom   := 'z' | 'i' | uint | '(' expr ')'
//! ```
//!
//! `@` is composition: `a @ b` denotes `a(b(z))`. Whitespace is ignored.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::gq::GQ;
use super::poly::Poly;
use super::ratmap::{RatMap, DEFAULT_DEGREE_BUDGET};
use crate::error::{Error, Result};

/// Parses `text` into a reduced, canonically scaled map (constants allowed).
pub fn parse_ratmap(text: &str) -> Result<RatMap> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v.into_map())
}

/// Parses an exact scalar such as `3/4-2*i`.
pub fn parse_gq(text: &str) -> Result<GQ> {
    let m = parse_ratmap(text)?;
    if !m.is_constant() {
        return Err(Error::Syntax { pos: 0, msg: "expected a constant".into() });
    }
    Ok(m.num().coeff(0))
}

/// A fraction kept unreduced while parsing; reduced once at the end or when
/// composition needs a canonical map.
#[derive(Clone)]
struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    fn poly(p: Poly) -> Self {
        Frac { num: p, den: Poly::one() }
    }

    fn into_map(self) -> RatMap {
        RatMap::new(self.num, self.den).expect("denominator checked nonzero")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = add(&acc, &rhs, false);
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = add(&acc, &rhs, true);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = Frac { num: &acc.num * &rhs.num, den: &acc.den * &rhs.den };
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.factor()?;
                if rhs.num.is_zero() {
                    self.pos = at;
                    return Err(Error::ZeroDenominator);
                }
                acc = Frac { num: &acc.num * &rhs.den, den: &acc.den * &rhs.num };
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Frac> {
        if self.eat(b'-') {
            let f = self.factor()?;
            return Ok(Frac { num: -&f.num, den: f.den });
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let mut acc = self.power()?;
        while self.peek() == Some(b'@') {
            let at = self.pos;
            self.pos += 1;
            let inner = self.power()?;
            acc = compose(acc, inner).map_err(|e| match e {
                Error::Syntax { msg, .. } => Error::Syntax { pos: at, msg },
                other => other,
            })?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.pos;
        let e = self.uint()?;
        let e: usize = e
            .try_into()
            .ok()
            .filter(|&e: &usize| e <= DEFAULT_DEGREE_BUDGET)
            .ok_or(Error::Syntax { pos: start, msg: "exponent too large".into() })?;
        Ok(Frac { num: base.num.pow(e), den: base.den.pow(e) })
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(b'z') => {
                self.pos += 1;
                Ok(Frac::poly(Poly::x()))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Frac::poly(Poly::constant(GQ::i())))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                Ok(Frac::poly(Poly::constant(GQ::real(BigRational::from_integer(n)))))
            }
            Some(_) => Err(self.error("expected 'z', 'i', a number or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }
}

fn add(a: &Frac, b: &Frac, subtract: bool) -> Frac {
    if a.den == b.den {
        let num = if subtract { &a.num - &b.num } else { &a.num + &b.num };
        return Frac { num, den: a.den.clone() };
    }
    let l = &a.num * &b.den;
    let r = &b.num * &a.den;
    Frac { num: if subtract { &l - &r } else { &l + &r }, den: &a.den * &b.den }
}

fn compose(outer: Frac, inner: Frac) -> Result<Frac> {
    let outer = outer.into_map();
    let inner = inner.into_map();
    if inner.is_constant() && !outer.is_constant() {
        let v = outer.eval(&inner.num().coeff(0));
        return match v.exact_value() {
            Some(c) => Ok(Frac::poly(Poly::constant(c))),
            None => Err(Error::ZeroDenominator),
        };
    }
    let r = outer.compose_within(&inner, DEFAULT_DEGREE_BUDGET)?;
    Ok(Frac { num: r.num().clone(), den: r.den().clone() })
}
