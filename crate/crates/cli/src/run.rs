use rittlab::decgraph::{bare_complex, build_graph, conjugate_maps, cw_complete, export_graph, homology, GraphBudget, GraphFormat};
use rittlab::decompose::{
    all_splits, common_iterate_search, commutes, decompositions_equivalent, is_prime, prime_decompositions,
    rat_decompose_split, virtual_decomposability_scan, Budget, Decomposition, DegreeSplit, Primality, Tier,
};
use rittlab::dynamics::{
    chain_rule_check, classify_critical_orbits, critical_points, detect_special, hyperbolic_symmetry_probe,
    OrbitConfig,
};
use rittlab::{parse_ratmap, Error, RatMap};
use serde_json::{json, Value};

use crate::args::{Command, FormatArg, Global, TierArg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Result of one command: JSON, optional human text, exit code.
pub struct Outcome {
    pub json: Value,
    pub text: Option<String>,
    pub code: i32,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { json, text: None, code: EXIT_OK }
    }

    fn partial_if(json: Value, exhausted: bool) -> Self {
        Outcome { json, text: None, code: if exhausted { EXIT_BUDGET } else { EXIT_OK } }
    }

    pub fn render(&self, pretty: bool) -> String {
        match (&self.text, pretty) {
            (Some(t), true) => t.clone(),
            (_, true) => serde_json::to_string_pretty(&self.json).expect("json"),
            _ => serde_json::to_string(&self.json).expect("json"),
        }
    }
}

pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } => EXIT_USAGE,
            Error::DegreeBudget { .. } | Error::TruncatedGraph => EXIT_BUDGET,
            _ => EXIT_DOMAIN,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.into() }
}

fn domain(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_DOMAIN, message: msg.into() }
}

fn map(text: &str) -> Result<RatMap, Failure> {
    Ok(parse_ratmap(text)?)
}

fn nonconstant(text: &str, min_degree: usize) -> Result<RatMap, Failure> {
    let r = map(text)?;
    if r.degree() < min_degree {
        return Err(domain(format!("{r} has degree {}, at least {min_degree} required", r.degree())));
    }
    Ok(r)
}

fn budget(g: &Global) -> Budget {
    Budget {
        partition_cap: g.partition_cap,
        den_bound: g.den_bound,
        degree_budget: g.degree_budget,
        tier: match g.tier {
            TierArg::Auto => Tier::Auto,
            TierArg::Exact => Tier::Exact,
            TierArg::Numeric => Tier::Numeric,
        },
        ..Budget::default()
    }
}

fn orbit_config(g: &Global) -> OrbitConfig {
    OrbitConfig { max_iter: g.max_iter, tol: g.tol, ..OrbitConfig::default() }
}

fn parse_split(s: &str) -> Result<DegreeSplit, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(usage(format!("--split expects d1,d2, got {s:?}")));
    };
    let (Ok(d1), Ok(d2)) = (a.parse(), b.parse()) else {
        return Err(usage(format!("--split expects two integers, got {s:?}")));
    };
    Ok(DegreeSplit::new(d1, d2)?)
}

fn chain(text: &str) -> Result<Decomposition, Failure> {
    let factors = text.split(',').map(|f| nonconstant(f, 2)).collect::<Result<Vec<_>, _>>()?;
    Ok(Decomposition::new(factors)?)
}

pub fn run(cmd: &Command, g: &Global) -> Result<Outcome, Failure> {
    match cmd {
        Command::Compose { maps } => {
            let ms = maps.iter().map(|m| map(m)).collect::<Result<Vec<_>, _>>()?;
            let mut acc = ms[0].clone();
            for m in &ms[1..] {
                acc = acc.compose_within(m, g.degree_budget)?;
            }
            Ok(Outcome { text: Some(acc.to_expr()), ..Outcome::ok(json!({ "result": acc })) })
        }
        Command::Iterate { map: m, n } => {
            let r = map(m)?;
            let it = r.iterate(*n, g.degree_budget)?;
            Ok(Outcome { text: Some(it.to_expr()), ..Outcome::ok(json!({ "map": r, "n": n, "result": it })) })
        }
        Command::Decompose { map: m, split } => {
            let r = nonconstant(m, 2)?;
            let b = budget(g);
            match split {
                Some(s) => {
                    let s = parse_split(s)?;
                    if s.d1 * s.d2 != r.degree() {
                        return Err(domain(format!("split {},{} does not multiply to degree {}", s.d1, s.d2, r.degree())));
                    }
                    let res = rat_decompose_split(&r, s, &b)?;
                    Ok(Outcome::partial_if(res.to_json(), res.budget_exhausted))
                }
                None => {
                    let all = all_splits(&r, &b)?;
                    if all.is_empty() {
                        return Err(domain(format!("degree {} admits no nontrivial split", r.degree())));
                    }
                    let exhausted = all.iter().any(|s| s.budget_exhausted);
                    let splits: Vec<Value> = all.iter().map(|s| s.to_json()).collect();
                    Ok(Outcome::partial_if(json!({ "product": r, "splits": splits }), exhausted))
                }
            }
        }
        Command::Primes { map: m } => {
            let r = nonconstant(m, 2)?;
            let pc = prime_decompositions(&r, &budget(g))?;
            let lengths: Vec<usize> = pc.chains.iter().map(Decomposition::len).collect();
            let mut v = serde_json::to_value(&pc).expect("json");
            v["lengths"] = json!(lengths);
            Ok(Outcome::partial_if(v, pc.budget_exhausted))
        }
        Command::Equiv { first, second } => {
            let (a, b) = (chain(first)?, chain(second)?);
            let w = decompositions_equivalent(&a, &b);
            let sameproduct = a.product == b.product;
            Ok(Outcome::ok(json!({
                "equivalent": w.is_some(),
                "sameProduct": sameproduct,
                "witness": w.map(|w| w.gammas),
            })))
        }
        Command::PrimeCheck { map: m } => {
            let r = nonconstant(m, 2)?;
            let p = is_prime(&r, &budget(g))?;
            let exhausted = matches!(p, Primality::Unknown { budget_exhausted: true, .. });
            let mut v = serde_json::to_value(&p).expect("json");
            v["map"] = json!(r);
            Ok(Outcome::partial_if(v, exhausted))
        }
        Command::Commute { first, second, max_n } => {
            let (a, b) = (nonconstant(first, 2)?, nonconstant(second, 2)?);
            let common = common_iterate_search(&a, &b, *max_n, g.degree_budget)?;
            Ok(Outcome::ok(json!({
                "commutes": commutes(&a, &b),
                "commonIterate": common.map(|(n, m)| json!({ "n": n, "m": m })),
                "maxN": max_n,
            })))
        }
        Command::Vscan { map: m, max_n } => {
            let r = nonconstant(m, 2)?;
            let rep = virtual_decomposability_scan(&r, *max_n, &budget(g))?;
            Ok(Outcome::partial_if(serde_json::to_value(&rep).expect("json"), rep.partial))
        }
        Command::Critical { map: m, with } => {
            let r = nonconstant(m, 2)?;
            match with {
                None => {
                    let cs = critical_points(&r)?;
                    let pts: Vec<Value> = cs.points.iter().map(|(p, k)| json!({ "point": p, "multiplicity": k })).collect();
                    Ok(Outcome::ok(json!({
                        "map": r,
                        "criticalPoints": pts,
                        "total": cs.total,
                        "riemannHurwitz": cs.riemann_hurwitz_ok(r.degree()),
                    })))
                }
                Some(w) => {
                    let r2 = nonconstant(w, 2)?;
                    let rep = chain_rule_check(&r, &r2)?;
                    Ok(Outcome::ok(serde_json::to_value(&rep).expect("json")))
                }
            }
        }
        Command::Classify { map: m, with } => {
            let r = nonconstant(m, 2)?;
            let cfg = orbit_config(g);
            match with {
                None => Ok(Outcome::ok(classify_critical_orbits(&r, &cfg)?.to_json())),
                Some(w) => {
                    let r2 = nonconstant(w, 2)?;
                    let rep = hyperbolic_symmetry_probe(&r, &r2, &cfg)?;
                    Ok(Outcome::ok(serde_json::to_value(&rep).expect("json")))
                }
            }
        }
        Command::Detect { map: m } => {
            let r = nonconstant(m, 2)?;
            let s = detect_special(&r);
            Ok(Outcome::ok(json!({ "map": r, "kind": s.kind, "conjugacy": s.conjugacy })))
        }
        Command::Conj { first, second } => {
            let (a, b) = (nonconstant(first, 2)?, nonconstant(second, 2)?);
            if a.degree() != b.degree() {
                return Err(domain(format!("degrees differ: {} and {}", a.degree(), b.degree())));
            }
            Ok(Outcome::ok(serde_json::to_value(conjugate_maps(&a, &b)).expect("json")))
        }
        Command::Graph { map: m, format, max_vertices } => {
            let r = nonconstant(m, 2)?;
            let gb = GraphBudget { decompose: budget(g), max_vertices: *max_vertices };
            let graph = build_graph(&r, &gb)?;
            let text = match format {
                FormatArg::Dot => Some(export_graph(&graph, GraphFormat::Dot)),
                FormatArg::Json => None,
            };
            let code = if graph.complete { EXIT_OK } else { EXIT_BUDGET };
            Ok(Outcome { json: graph.to_json(), text, code })
        }
        Command::Homology { map: m, max_vertices } => {
            let r = nonconstant(m, 2)?;
            let gb = GraphBudget { decompose: budget(g), max_vertices: *max_vertices };
            let graph = build_graph(&r, &gb)?;
            let bare = homology(&bare_complex(&graph))?;
            let summary = json!({
                "vertices": graph.vertices.len(),
                "edges": graph.undirected_edges().len(),
                "complete": graph.complete,
            });
            let mut v = json!({ "graph": summary, "bare": bare, "pi1Rank": graph.pi1_rank() });
            if !graph.complete {
                return Ok(Outcome { json: v, text: None, code: EXIT_BUDGET });
            }
            let cw = cw_complete(&graph)?;
            v["cells"] = json!(cw.cells);
            v["complex"] = serde_json::to_value(homology(&cw)?).expect("json");
            Ok(Outcome::ok(v))
        }
        Command::Batch { .. } => Err(usage("batch jobs cannot be nested")),
    }
}
