//! Dense polynomials over a small prime field `F_p` (`p < 2^31`).

use num_bigint::BigUint;

pub type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31));
        Fp { p }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod p");
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, mut f: PolyP) -> PolyP {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn deg(f: &PolyP) -> usize {
        f.len().saturating_sub(1)
    }

    pub fn add_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|k| self.add(*a.get(k).unwrap_or(&0), *b.get(k).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn sub_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|k| self.sub(*a.get(k).unwrap_or(&0), *b.get(k).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn mul_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + x * y) % self.p;
            }
        }
        self.trim(v)
    }

    pub fn scale(&self, a: &PolyP, c: u64) -> PolyP {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(&self, a: &PolyP) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn div_rem(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + b.len() - 1];
            if top == 0 {
                continue;
            }
            let f = self.mul(top, inv);
            q[k] = f;
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(f, bj));
            }
        }
        r.truncate(b.len() - 1);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &PolyP, b: &PolyP) -> PolyP {
        self.div_rem(a, b).1
    }

    pub fn gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let mut a = self.monic(a);
        let mut b = self.monic(b);
        while !b.is_empty() {
            let r = self.monic(&self.rem(&a, &b));
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("gcd of nonzero inputs"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &PolyP) -> PolyP {
        self.trim(a.iter().enumerate().skip(1).map(|(k, &c)| self.mul(c, k as u64 % self.p)).collect())
    }

    /// `base^e mod m`.
    pub fn pow_mod(&self, base: &PolyP, e: &BigUint, m: &PolyP) -> PolyP {
        let mut acc = vec![1u64];
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul_poly(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul_poly(&acc, &b), m);
            }
        }
        self.trim(acc)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn ddf(&self, f: &PolyP) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x: PolyP = vec![0, 1];
        let mut h = x.clone();
        let pbig = BigUint::from(self.p);
        let mut d = 0;
        while Self::deg(&rest) >= 2 * (d + 1) {
            d += 1;
            h = self.pow_mod(&h, &pbig, &rest);
            let g = self.gcd(&self.sub_poly(&h, &x), &rest);
            if Self::deg(&g) > 0 {
                out.push((g.clone(), d));
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
            }
        }
        if Self::deg(&rest) > 0 {
            let dr = Self::deg(&rest);
            out.push((rest, dr));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus) with a deterministic generator.
    pub fn edf(&self, f: &PolyP, d: usize, seed: &mut u64) -> Vec<PolyP> {
        let n = Self::deg(f);
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: PolyP = self.trim((0..n).map(|_| next_rand(seed) % self.p).collect());
            if Self::deg(&a) == 0 {
                continue;
            }
            let g = self.gcd(&a, f);
            let h = if Self::deg(&g) > 0 {
                g
            } else {
                let b = self.pow_mod(&a, &e, f);
                self.gcd(&self.sub_poly(&b, &vec![1]), f)
            };
            if Self::deg(&h) > 0 && Self::deg(&h) < n {
                let other = self.div_rem(f, &h).0;
                let mut out = self.edf(&self.monic(&h), d, seed);
                out.extend(self.edf(&self.monic(&other), d, seed));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic irreducibles.
    pub fn factor_squarefree(&self, f: &PolyP) -> Vec<PolyP> {
        let mut seed = 0x9E37_79B9_7F4A_7C15u64 ^ self.p;
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, &mut seed));
        }
        out
    }
}

fn next_rand(s: &mut u64) -> u64 {
    // splitmix64
    *s = s.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *s;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
