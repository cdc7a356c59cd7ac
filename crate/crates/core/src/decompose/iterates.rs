//! Commuting maps, common iterates and the virtual-decomposability scan.

use serde::Serialize;

use crate::dynamics::{detect_special, SpecialKind};
use crate::error::{Error, Result};
use crate::ratfun::RatMap;

use super::{all_splits, compose_chain, decompositions_equivalent, Budget, Decomposition};

/// Exact test of `R1∘R2 = R2∘R1`.
pub fn commutes(r1: &RatMap, r2: &RatMap) -> bool {
    r1.compose(r2) == r2.compose(r1)
}

/// The least `(n, m)` in lexicographic order with `R1ⁿ = R2ᵐ`, both at most `max_n`.
pub fn common_iterate_search(r1: &RatMap, r2: &RatMap, max_n: usize, degree_budget: usize) -> Result<Option<(usize, usize)>> {
    let (a, b) = (r1.degree() as u128, r2.degree() as u128);
    if a < 2 || b < 2 {
        return Err(Error::domain("common iterate search needs degrees at least 2"));
    }
    for n in 1..=max_n {
        for m in 1..=max_n {
            let da = a.checked_pow(n as u32);
            if da.is_none() || da != b.checked_pow(m as u32) {
                continue;
            }
            if r1.iterate(n, degree_budget)? == r2.iterate(m, degree_budget)? {
                return Ok(Some((n, m)));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FindingStatus {
    /// Equivalent to a grouping of the iterate chain `R∘…∘R`.
    Trivial,
    /// Equivalent to a grouping of a concatenation of chains found at lower levels.
    Induced,
    New,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub n: usize,
    pub decomposition: Decomposition,
    pub status: FindingStatus,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VirtualReport {
    pub map: RatMap,
    pub requested: usize,
    /// Largest level fully scanned.
    pub horizon: usize,
    pub findings: Vec<Finding>,
    pub alpha_lower_bound: usize,
    pub partial: bool,
    /// Power or Chebyshev normal form, for which decompositions proliferate at every level.
    pub exceptional: Option<String>,
}

fn groupings(chain: &[RatMap]) -> Vec<Vec<RatMap>> {
    (1..chain.len()).map(|cut| vec![compose_chain(&chain[..cut]), compose_chain(&chain[cut..])]).collect()
}

pub fn virtual_decomposability_scan(r: &RatMap, max_n: usize, budget: &Budget) -> Result<VirtualReport> {
    if r.degree() < 2 {
        return Err(Error::domain("virtual decomposability needs degree at least 2"));
    }
    let exceptional = match detect_special(r).kind {
        SpecialKind::None => None,
        k => Some(k.to_string()),
    };
    let mut iterates: Vec<RatMap> = vec![RatMap::identity()];
    // known[k]: chains with product Rᵏ, the iterate itself first.
    let mut known: Vec<Vec<Vec<RatMap>>> = vec![Vec::new()];
    let mut findings = Vec::new();
    let mut horizon = 0;
    let mut partial = false;
    for n in 1..=max_n {
        let rn = match r.iterate(n, budget.degree_budget) {
            Ok(x) => x,
            Err(Error::DegreeBudget { .. }) => {
                partial = true;
                break;
            }
            Err(e) => return Err(e),
        };
        iterates.push(rn.clone());
        let mut trivial: Vec<Vec<RatMap>> = Vec::new();
        let mut induced: Vec<Vec<RatMap>> = Vec::new();
        for a in 1..n {
            trivial.push(vec![iterates[a].clone(), iterates[n - a].clone()]);
            for ca in &known[a] {
                for cb in &known[n - a] {
                    let chain: Vec<RatMap> = ca.iter().chain(cb).cloned().collect();
                    induced.extend(groupings(&chain));
                }
            }
        }
        let mut level = vec![vec![rn.clone()]];
        for res in all_splits(&rn, budget)? {
            partial |= res.budget_exhausted || res.unverified > 0;
            for d in res.decompositions {
                let matches = |cands: &[Vec<RatMap>]| {
                    cands.iter().any(|c| {
                        c[1].degree() == d.factors[1].degree()
                            && decompositions_equivalent(&Decomposition { factors: c.clone(), product: rn.clone() }, &d)
                                .is_some()
                    })
                };
                let status = if n == 1 {
                    FindingStatus::New
                } else if matches(&trivial) {
                    FindingStatus::Trivial
                } else if matches(&induced) {
                    FindingStatus::Induced
                } else {
                    FindingStatus::New
                };
                level.push(d.factors.clone());
                findings.push(Finding { n, decomposition: d, status });
            }
        }
        known.push(level);
        horizon = n;
    }
    let alpha_lower_bound =
        findings.iter().filter(|f| f.status == FindingStatus::New).map(|f| f.n).max().unwrap_or(0);
    Ok(VirtualReport { map: r.clone(), requested: max_n, horizon, findings, alpha_lower_bound, partial, exceptional })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::parse_ratmap as p;
    use crate::ratfun::DEFAULT_DEGREE_BUDGET;

    #[test]
    fn eremenko_examples() {
        assert!(commutes(&p("z^2").unwrap(), &p("z^3").unwrap()));
        assert!(!commutes(&p("z^2").unwrap(), &p("z^2-1").unwrap()));
        let got = common_iterate_search(&p("z^2").unwrap(), &p("z^4").unwrap(), 4, DEFAULT_DEGREE_BUDGET).unwrap();
        assert_eq!(got, Some((2, 1)));
        let none = common_iterate_search(&p("z^2").unwrap(), &p("z^2-1").unwrap(), 3, DEFAULT_DEGREE_BUDGET).unwrap();
        assert_eq!(none, None);
    }

    #[test]
    fn zieve_scan() {
        let rep = virtual_decomposability_scan(&p("(z-1)^2/(z+1)^2").unwrap(), 2, &Budget::default()).unwrap();
        assert_eq!(rep.alpha_lower_bound, 2);
        assert!(rep.findings.iter().any(|f| f.status == FindingStatus::Trivial));
        assert!(rep.findings.iter().any(|f| f.status == FindingStatus::New && f.decomposition.factors[1] == p("z^2").unwrap()));
    }

    #[test]
    fn polynomial_scan_all_trivial() {
        let rep = virtual_decomposability_scan(&p("z^2+1").unwrap(), 2, &Budget::default()).unwrap();
        assert_eq!(rep.alpha_lower_bound, 0);
        assert!(rep.findings.iter().all(|f| f.status == FindingStatus::Trivial));
        assert!(rep.exceptional.is_none());
    }
}
