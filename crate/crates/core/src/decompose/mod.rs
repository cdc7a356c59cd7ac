//! Functional decomposition of rational maps, Ritt equivalence of chains,
//! primality, commuting maps and virtual decomposability of iterates.

mod chains;
mod exact;
mod iterates;
pub(crate) mod numeric;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{kernel, rref};
use crate::ratfun::{Poly, RatMap, RootConfig, DEFAULT_DEGREE_BUDGET, GQ};

pub use chains::{decompositions_equivalent, is_prime, prime_decompositions, EquivWitness, Primality, PrimeChains};
pub use iterates::{
    commutes, common_iterate_search, virtual_decomposability_scan, Finding, FindingStatus, VirtualReport,
};

/// An ordered chain `R₁∘R₂∘…∘R_m` together with its composite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub factors: Vec<RatMap>,
    pub product: RatMap,
}

impl Decomposition {
    /// Builds the chain and its product; every factor must have degree at least 2.
    pub fn new(factors: Vec<RatMap>) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|f| f.degree() < 2) {
            return Err(Error::domain("decomposition factors must have degree at least 2"));
        }
        let product = compose_chain(&factors);
        Ok(Decomposition { factors, product })
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(RatMap::degree).collect()
    }

    /// Recomposes the factors and compares with the stored product.
    pub fn verify(&self) -> bool {
        compose_chain(&self.factors) == self.product
    }
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        json!({"product": self.product, "factors": self.factors}).serialize(s)
    }
}

pub(crate) fn compose_chain(factors: &[RatMap]) -> RatMap {
    let mut it = factors.iter().rev();
    let mut acc = it.next().cloned().unwrap_or_else(RatMap::identity);
    for f in it {
        acc = f.compose(&acc);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DegreeSplit {
    /// Degree of the left factor.
    pub d1: usize,
    /// Degree of the right factor.
    pub d2: usize,
}

impl DegreeSplit {
    pub fn new(d1: usize, d2: usize) -> Result<Self> {
        if d1 < 2 || d2 < 2 {
            return Err(Error::domain(format!("split {d1},{d2}: both degrees must be at least 2")));
        }
        Ok(DegreeSplit { d1, d2 })
    }

    /// All proper splits of `n`, ordered by the right factor's degree.
    pub fn all(n: usize) -> Vec<DegreeSplit> {
        (2..n).filter(|d2| n.is_multiple_of(*d2) && n / d2 >= 2).map(|d2| DegreeSplit { d1: n / d2, d2 }).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// Polynomial shortcut for polynomials, otherwise the exact tier cross-checked by the numeric tier.
    Auto,
    Exact,
    Numeric,
}

#[derive(Clone, Debug)]
pub struct Budget {
    /// Cap on fiber partitions examined by the numeric tier.
    pub partition_cap: usize,
    /// Cap on divisor pairs examined by the exact tier.
    pub subset_cap: usize,
    /// Denominator bound for continued-fraction reconstruction.
    pub den_bound: u64,
    pub degree_budget: usize,
    pub tier: Tier,
    pub roots: RootConfig,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            partition_cap: 100_000,
            subset_cap: 1 << 16,
            den_bound: 1_000_000,
            degree_budget: DEFAULT_DEGREE_BUDGET,
            tier: Tier::Auto,
            roots: RootConfig::default(),
        }
    }
}

/// All decompositions of one degree split, each certified by exact recomposition.
#[derive(Clone, Debug)]
pub struct SplitResult {
    pub product: RatMap,
    pub split: DegreeSplit,
    pub decompositions: Vec<Decomposition>,
    pub budget_exhausted: bool,
    /// Numerically valid candidates whose coefficients could not be reconstructed in ℚ(i).
    pub unverified: usize,
}

impl SplitResult {
    pub fn to_json(&self) -> Value {
        let records: Vec<Value> = self
            .decompositions
            .iter()
            .map(|d| {
                json!({
                    "product": d.product,
                    "split": [self.split.d1, self.split.d2],
                    "factors": d.factors,
                    "certified": true,
                    "budgetExhausted": self.budget_exhausted,
                })
            })
            .collect();
        json!({
            "product": self.product,
            "split": [self.split.d1, self.split.d2],
            "decompositions": records,
            "budgetExhausted": self.budget_exhausted,
            "unverified": self.unverified,
        })
    }
}

/// Solves `A∘B = R` for `A`, by the linear system `U(p,q)·g − V(p,q)·f = 0`
/// in the coefficients of `A = U/V`, where `R = f/g` and `B = p/q`.
pub fn left_factor_solve(r: &RatMap, b: &RatMap) -> Option<RatMap> {
    let (n, d2) = (r.degree(), b.degree());
    if d2 == 0 || n % d2 != 0 {
        return None;
    }
    let d1 = n / d2;
    let (p, q) = (b.num(), b.den());
    let (f, g) = (r.num(), r.den());
    let mut p_pows = vec![Poly::one()];
    let mut q_pows = vec![Poly::one()];
    for _ in 0..d1 {
        p_pows.push(p_pows.last().unwrap() * p);
        q_pows.push(q_pows.last().unwrap() * q);
    }
    let cols: Vec<Poly> = (0..=d1)
        .map(|k| &(&p_pows[k] * &q_pows[d1 - k]) * g)
        .chain((0..=d1).map(|k| -&(&(&p_pows[k] * &q_pows[d1 - k]) * f)))
        .collect();
    let rows = cols.iter().map(|c| c.degree() + 1).max().unwrap_or(1);
    let m: Vec<Vec<GQ>> = (0..rows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let ker = kernel(&m, cols.len());
    let v = ker.first()?;
    let u = Poly::new(v[..=d1].to_vec());
    let w = Poly::new(v[d1 + 1..].to_vec());
    let a = RatMap::new(u, w).ok()?;
    (a.degree() == d1 && a.compose(b) == *r).then_some(a)
}

/// The canonical representative of `B` modulo post-composition by Möbius maps:
/// the pencil `span{p, q}` in reduced row echelon form, highest degree first.
pub fn canonical_right(b: &RatMap) -> RatMap {
    let d = b.degree();
    let row = |p: &Poly| (0..=d).map(|j| p.coeff(d - j)).collect::<Vec<GQ>>();
    let mut m = vec![row(b.num()), row(b.den())];
    rref(&mut m);
    let poly = |r: &[GQ]| Poly::new(r.iter().rev().cloned().collect());
    RatMap::new(poly(&m[0]), poly(&m[1])).expect("pencil of a nonconstant map has rank two")
}

/// Kozen–Landau right factor of degree `d2` of a polynomial map, normalized
/// monic with zero constant term; empty if no such factor exists.
pub fn poly_right_factor(p: &Poly, d2: usize) -> Vec<Poly> {
    let n = p.degree();
    if d2 == 0 || n == 0 || !n.is_multiple_of(d2) {
        return Vec::new();
    }
    let shift_free = |b: Poly| &b - &Poly::constant(b.coeff(0));
    if d2 == n {
        return vec![shift_free(p.monic())];
    }
    if d2 == 1 {
        return vec![Poly::x()];
    }
    let d1 = n / d2;
    let monic = p.monic();
    // a(t) = P(x)/x^n with t = 1/x; s = a^{1/d1} truncated at t^{d2}.
    let a: Vec<GQ> = (0..=d2).map(|k| monic.coeff(n - k)).collect();
    let alpha = GQ::from_ratio(1, d1 as i64);
    let mut s = vec![GQ::one()];
    for k in 1..=d2 {
        let mut acc = GQ::zero();
        for j in 1..=k {
            let w = &(&(&alpha + &GQ::one()) * &GQ::from_int(j as i64)) - &GQ::from_int(k as i64);
            acc += &(&(&w * &a[j]) * &s[k - j]);
        }
        s.push(&acc * &GQ::from_ratio(1, k as i64));
    }
    let b = Poly::new(s.into_iter().rev().collect());
    let b = shift_free(b);
    let br = RatMap::from_poly(b.clone());
    match left_factor_solve(&RatMap::from_poly(p.clone()), &br) {
        Some(_) => vec![b],
        None => Vec::new(),
    }
}

/// All decompositions `R = A∘B` with `deg B = split.d2`, one per class
/// modulo a Möbius map inserted between the factors.
pub fn rat_decompose_split(r: &RatMap, split: DegreeSplit, budget: &Budget) -> Result<SplitResult> {
    if split.d1 * split.d2 != r.degree() {
        return Err(Error::domain(format!(
            "split {},{} does not match degree {}",
            split.d1,
            split.d2,
            r.degree()
        )));
    }
    let mut rights: Vec<RatMap> = Vec::new();
    let mut exhausted = false;
    let mut unverified = 0;
    match budget.tier {
        Tier::Auto if r.is_polynomial() => {
            for b in poly_right_factor(r.num(), split.d2) {
                rights.push(RatMap::from_poly(b));
            }
        }
        Tier::Auto => {
            let ex = exact::exact_tier(r, split, budget.subset_cap);
            rights.extend(ex.rights);
            if numeric::partition_count(r.degree(), split.d2) <= budget.partition_cap as f64 {
                let nu = numeric::numeric_tier(r, split, budget)?;
                for b in nu.rights {
                    if !rights.contains(&b) {
                        rights.push(b);
                    }
                }
                unverified = nu.unverified;
                exhausted = ex.exhausted && nu.exhausted;
            } else {
                exhausted = ex.exhausted;
            }
        }
        Tier::Exact => {
            let ex = exact::exact_tier(r, split, budget.subset_cap);
            rights = ex.rights;
            exhausted = ex.exhausted;
        }
        Tier::Numeric => {
            let nu = numeric::numeric_tier(r, split, budget)?;
            rights = nu.rights;
            exhausted = nu.exhausted;
            unverified = nu.unverified;
        }
    }
    let mut decompositions = Vec::new();
    for b in rights {
        let b = canonical_right(&b);
        if decompositions.iter().any(|d: &Decomposition| d.factors[1] == b) {
            continue;
        }
        if let Some(a) = left_factor_solve(r, &b) {
            let d = Decomposition { factors: vec![a, b], product: r.clone() };
            assert!(d.verify(), "decomposition failed to recompose");
            decompositions.push(d);
        }
    }
    decompositions.sort_by_cached_key(|d| d.factors[1].to_expr());
    Ok(SplitResult { product: r.clone(), split, decompositions, budget_exhausted: exhausted, unverified })
}

/// All two-factor decompositions over every proper degree split.
pub fn all_splits(r: &RatMap, budget: &Budget) -> Result<Vec<SplitResult>> {
    DegreeSplit::all(r.degree()).into_iter().map(|s| rat_decompose_split(r, s, budget)).collect()
}
