//! Ritt equivalence of decomposition chains, primality and prime chains.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::linalg::kernel;
use crate::ratfun::{Mobius, Poly, RatMap, GQ};

use super::{compose_chain, rat_decompose_split, Budget, Decomposition, DegreeSplit};

/// Möbius maps `γ₁ … γ_{m−1}` with `P₁ = R₁∘γ₁`, `Pᵢ = γᵢ₋₁⁻¹∘Rᵢ∘γᵢ` and
/// `P_m = γ_{m−1}⁻¹∘R_m`, where `R` is the first chain and `P` the second.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquivWitness {
    pub gammas: Vec<Mobius>,
}

impl EquivWitness {
    /// Applies the witness to `d`, producing the equivalent chain.
    pub fn apply(&self, d: &Decomposition) -> Decomposition {
        let m = d.factors.len();
        let factors = (0..m)
            .map(|i| {
                let pre = (i + 1 < m).then(|| &self.gammas[i]);
                let post = (i > 0).then(|| self.gammas[i - 1].inverse());
                d.factors[i].mobius_apply(pre, post.as_ref())
            })
            .collect();
        Decomposition { factors, product: d.product.clone() }
    }

    pub fn inverse(&self) -> EquivWitness {
        EquivWitness { gammas: self.gammas.iter().map(Mobius::inverse).collect() }
    }

    /// Witness for `D1 ~ D3` from witnesses of `D1 ~ D2` and `D2 ~ D3`.
    pub fn then(&self, next: &EquivWitness) -> EquivWitness {
        EquivWitness { gammas: self.gammas.iter().zip(&next.gammas).map(|(a, b)| a.compose(b)).collect() }
    }
}

/// The Möbius `μ` with `t2 = μ∘t1`, if any.
pub(crate) fn left_mobius(t1: &RatMap, t2: &RatMap) -> Option<Mobius> {
    if t1.degree() != t2.degree() {
        return None;
    }
    let (p, q) = (t1.num(), t1.den());
    let (p2, q2) = (t2.num(), t2.den());
    // (a·p + b·q)·q2 − (c·p + d·q)·p2 = 0
    let cols: [Poly; 4] = [p * q2, q * q2, -&(p * p2), -&(q * p2)];
    let rows = cols.iter().map(|c| c.degree() + 1).max().unwrap_or(1);
    let m: Vec<Vec<GQ>> = (0..rows).map(|i| cols.iter().map(|c| c.coeff(i)).collect()).collect();
    let k = kernel(&m, 4);
    let v = k.first()?;
    let mu = Mobius::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()).ok()?;
    (t1.mobius_apply(None, Some(&mu)) == *t2).then_some(mu)
}

/// Exact Ritt-equivalence test. The tails `Pᵢ₊₁∘…∘P_m = γᵢ⁻¹∘Rᵢ₊₁∘…∘R_m`
/// determine each `γᵢ` by a linear solve; the chain identities are then checked.
pub fn decompositions_equivalent(d1: &Decomposition, d2: &Decomposition) -> Option<EquivWitness> {
    if d1.len() != d2.len() || d1.product != d2.product || d1.degrees() != d2.degrees() {
        return None;
    }
    let m = d1.len();
    let mut gammas = Vec::with_capacity(m.saturating_sub(1));
    for i in 1..m {
        let t_r = compose_chain(&d1.factors[i..]);
        let t_p = compose_chain(&d2.factors[i..]);
        gammas.push(left_mobius(&t_r, &t_p)?.inverse());
    }
    let w = EquivWitness { gammas };
    (w.apply(d1).factors == d2.factors).then_some(w)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Primality {
    Prime,
    Composite { witness: Decomposition },
    Unknown {
        reason: String,
        #[serde(rename = "budgetExhausted")]
        budget_exhausted: bool,
    },
}

fn is_prime_number(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

pub fn is_prime(r: &RatMap, budget: &Budget) -> Result<Primality> {
    if is_prime_number(r.degree()) {
        return Ok(Primality::Prime);
    }
    let mut incomplete = Vec::new();
    let mut exhausted = false;
    for s in DegreeSplit::all(r.degree()) {
        let res = rat_decompose_split(r, s, budget)?;
        if let Some(d) = res.decompositions.into_iter().next() {
            return Ok(Primality::Composite { witness: d });
        }
        exhausted |= res.budget_exhausted;
        if res.budget_exhausted {
            incomplete.push(format!("split {},{}: budget exhausted", s.d1, s.d2));
        }
        if res.unverified > 0 {
            incomplete.push(format!("split {},{}: {} unreconstructed candidates", s.d1, s.d2, res.unverified));
        }
    }
    Ok(if incomplete.is_empty() {
        Primality::Prime
    } else {
        Primality::Unknown { reason: incomplete.join("; "), budget_exhausted: exhausted }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeChains {
    pub product: RatMap,
    pub chains: Vec<Decomposition>,
    #[serde(rename = "budgetExhausted")]
    pub budget_exhausted: bool,
}

/// All maximal chains of prime factors of `R`, one per Ritt-equivalence class.
pub fn prime_decompositions(r: &RatMap, budget: &Budget) -> Result<PrimeChains> {
    let mut memo = HashMap::new();
    let mut exhausted = false;
    let chains = prime_chains(r, budget, &mut memo, &mut exhausted)?;
    let mut chains: Vec<Decomposition> =
        chains.into_iter().map(|f| Decomposition { factors: f, product: r.clone() }).collect();
    for c in &chains {
        assert!(c.verify(), "prime chain failed to recompose");
    }
    chains.sort_by_cached_key(|c| (c.len(), c.factors.iter().map(RatMap::to_expr).collect::<Vec<_>>()));
    Ok(PrimeChains { product: r.clone(), chains, budget_exhausted: exhausted })
}

fn prime_chains(
    r: &RatMap,
    budget: &Budget,
    memo: &mut HashMap<RatMap, Vec<Vec<RatMap>>>,
    exhausted: &mut bool,
) -> Result<Vec<Vec<RatMap>>> {
    if let Some(c) = memo.get(r) {
        return Ok(c.clone());
    }
    let mut found: Vec<Decomposition> = Vec::new();
    if !is_prime_number(r.degree()) {
        for s in DegreeSplit::all(r.degree()) {
            let res = rat_decompose_split(r, s, budget)?;
            *exhausted |= res.budget_exhausted;
            for d in res.decompositions {
                let lefts = prime_chains(&d.factors[0], budget, memo, exhausted)?;
                let rights = prime_chains(&d.factors[1], budget, memo, exhausted)?;
                for a in &lefts {
                    for b in &rights {
                        let chain: Vec<RatMap> = a.iter().chain(b).cloned().collect();
                        let cand = Decomposition { factors: chain, product: r.clone() };
                        if !found.iter().any(|f| decompositions_equivalent(f, &cand).is_some()) {
                            found.push(cand);
                        }
                    }
                }
            }
        }
    }
    let out: Vec<Vec<RatMap>> =
        if found.is_empty() { vec![vec![r.clone()]] } else { found.into_iter().map(|d| d.factors).collect() };
    memo.insert(r.clone(), out.clone());
    Ok(out)
}
