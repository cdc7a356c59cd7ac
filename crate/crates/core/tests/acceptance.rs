//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;
use rittlab::decgraph::{bare_complex, build_graph, cw_complete, homology, GraphBudget};
use rittlab::decompose::{
    common_iterate_search, commutes, decompositions_equivalent, is_prime, prime_decompositions, rat_decompose_split,
    virtual_decomposability_scan, Budget, Decomposition, DegreeSplit, Primality, Tier,
};
use rittlab::dynamics::{
    chain_rule_check, chebyshev, critical_points, detect_special, hyperbolic_symmetry_probe, OrbitConfig,
    SpecialKind, Verdict,
};
use rittlab::ratfun::DEFAULT_DEGREE_BUDGET;
use rittlab::{parse_ratmap, Mobius, RatMap, GQ};

const ZIEVE: &str = "(z-1)^2/(z+1)^2";
const BERGWEILER: &str = "z^3 @ ((z^2-4)/(z-1)) @ ((z^2+2)/(z+1))";
const BERGWEILER_ALT: &str = "(z*(z-8)^3/(z+1)^3) @ z^3";

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(30);
const LIMIT_3: Duration = Duration::from_secs(120);
const LIMIT_4: Duration = Duration::from_secs(60);
const LIMIT_TOTAL: Duration = Duration::from_secs(15 * 60);
/// Largest tolerated fraction of probe pairs left undecided in criterion 8.
const MAX_UNDECIDED_RATE: f64 = 0.5;
/// Entry height of the brute-force Möbius screen in criterion 11.
const SCREEN_HEIGHT: i64 = 2;

fn p(s: &str) -> RatMap {
    parse_ratmap(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn chain(v: &[RatMap]) -> Decomposition {
    Decomposition::new(v.to_vec()).expect("factors of degree at least 2")
}

struct Check {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Check {
    Check { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Check {
    Check { ok: false, detail: detail.into() }
}

fn within(v: Check, t: Duration, limit: Duration) -> Check {
    if t > limit {
        fail(format!("{} (took {t:.2?}, limit {limit:?})", v.detail))
    } else {
        v
    }
}

fn zieve_identity() -> Check {
    let t = Instant::now();
    let r = p(ZIEVE);
    let lhs = r.compose(&r);
    let rhs = p("4*z/(z+1)^2").compose(&p("z^2"));
    let v = if lhs == rhs { pass(format!("R∘R = {lhs}")) } else { fail(format!("{lhs} ≠ {rhs}")) };
    within(v, t.elapsed(), LIMIT_1)
}

fn zieve_rediscovery() -> Check {
    let t = Instant::now();
    let r = p(ZIEVE);
    let r2 = r.compose(&r);
    let res = match rat_decompose_split(&r2, DegreeSplit::new(2, 2).unwrap(), &Budget::default()) {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    let target = chain(&[p("4*z/(z+1)^2"), p("z^2")]);
    let Some(found) = res.decompositions.iter().find(|d| decompositions_equivalent(d, &target).is_some()) else {
        return fail(format!("no decomposition equivalent to (4z/(z+1)^2, z^2) among {}", res.decompositions.len()));
    };
    let v = if decompositions_equivalent(&chain(&[r.clone(), r]), found).is_none() {
        pass(format!("{} classes; found {} ∘ {}, inequivalent to R∘R", res.decompositions.len(), found.factors[0], found.factors[1]))
    } else {
        fail("rediscovered chain is equivalent to R∘R")
    };
    within(v, t.elapsed(), LIMIT_2)
}

fn bergweiler() -> Check {
    let t = Instant::now();
    let r = p(BERGWEILER);
    if r != p(BERGWEILER_ALT) {
        return fail("the two expressions differ");
    }
    let pc = match prime_decompositions(&r, &Budget::default()) {
        Ok(x) => x,
        Err(e) => return fail(e.to_string()),
    };
    let lengths: Vec<usize> = pc.chains.iter().map(Decomposition::len).collect();
    let v = if lengths.contains(&3) && lengths.contains(&2) && !pc.budget_exhausted {
        pass(format!("identity holds; prime chain lengths {lengths:?}"))
    } else {
        fail(format!("prime chain lengths {lengths:?}, exhausted {}", pc.budget_exhausted))
    };
    within(v, t.elapsed(), LIMIT_3)
}

fn primality() -> Check {
    let t = Instant::now();
    let v = match is_prime(&p("z*(z-8)^3/(z+1)^3"), &Budget::default()) {
        Ok(Primality::Prime) => pass("z(z-8)^3/(z+1)^3 is prime"),
        Ok(other) => fail(format!("{other:?}")),
        Err(e) => fail(e.to_string()),
    };
    within(v, t.elapsed(), LIMIT_4)
}

fn chain_rule() -> Check {
    let mut rng = common::rng(5);
    let mut pairs: Vec<(RatMap, RatMap)> = (0..100)
        .map(|_| {
            let (d1, d2) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
            (common::int_map(&mut rng, d1, 3), common::int_map(&mut rng, d2, 3))
        })
        .collect();
    pairs.push((p(ZIEVE), p(ZIEVE)));
    let mut bad = Vec::new();
    for (a, b) in &pairs {
        match chain_rule_check(a, b) {
            Ok(rep) if rep.holds => {}
            Ok(rep) => bad.push(format!("{a} ∘ {b}: only lhs {:?}, only rhs {:?}", rep.only_lhs, rep.only_rhs)),
            Err(e) => bad.push(format!("{a} ∘ {b}: {e}")),
        }
    }
    if bad.is_empty() {
        pass(format!("{} pairs", pairs.len()))
    } else {
        fail(format!("{} of {} pairs fail; first: {}", bad.len(), pairs.len(), bad[0]))
    }
}

fn riemann_hurwitz() -> Check {
    let mut rng = common::rng(6);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let d = rng.gen_range(2..=6);
        let r = common::int_map(&mut rng, d, 5);
        match critical_points(&r) {
            Ok(cs) if cs.total == 2 * d - 2 => {}
            Ok(cs) => bad.push(format!("{r}: total {}", cs.total)),
            Err(e) => bad.push(format!("{r}: {e}")),
        }
    }
    if bad.is_empty() { pass("200 maps") } else { fail(format!("{} failures; first: {}", bad.len(), bad[0])) }
}

fn muller_zieve() -> Check {
    let mut rng = common::rng(7);
    let mut alphas = Vec::new();
    let mut partial = 0;
    let mut screened = 0;
    while alphas.len() < 20 {
        let (da, db) = if rng.gen_bool(0.5) { (2, 3) } else { (3, 2) };
        let poly = common::int_polymap(&mut rng, da, 3).compose(&common::int_polymap(&mut rng, db, 3));
        if detect_special(&poly).kind != SpecialKind::None {
            screened += 1;
            continue;
        }
        match virtual_decomposability_scan(&poly, 2, &Budget::default()) {
            Ok(rep) => {
                partial += rep.partial as usize;
                alphas.push(rep.alpha_lower_bound);
            }
            Err(e) => return fail(format!("{poly}: {e}")),
        }
    }
    let bound = 6f64.log2();
    let over = alphas.iter().filter(|&&a| a as f64 > bound).count();
    let detail = format!("alpha lower bounds {alphas:?}, log2 6 = {bound:.3}, {screened} special screened out, {partial} partial");
    if over == 0 && partial == 0 { pass(detail) } else { fail(detail) }
}

fn symmetry_probe() -> Check {
    let mut rng = common::rng(8);
    let cfg = OrbitConfig::default();
    let (mut decided, mut disagree, mut mixed) = (0, 0, 0);
    let n = 50;
    for _ in 0..n {
        let (a, b) = (common::int_map(&mut rng, 2, 3), common::int_map(&mut rng, 2, 3));
        let rep = match hyperbolic_symmetry_probe(&a, &b, &cfg) {
            Ok(r) => r,
            Err(e) => return fail(format!("{a}, {b}: {e}")),
        };
        if rep.both_decided {
            decided += 1;
            disagree += !rep.agree as usize;
        } else if rep.forward == Verdict::HeuristicallyHyperbolic || rep.backward == Verdict::HeuristicallyHyperbolic {
            mixed += 1;
        }
    }
    let rate = (n - decided) as f64 / n as f64;
    let detail = format!(
        "{decided}/{n} decided in both orders, {disagree} disagreements, undecided rate {rate:.2} (limit {MAX_UNDECIDED_RATE}), {mixed} one-sided"
    );
    if disagree == 0 && rate < MAX_UNDECIDED_RATE { pass(detail) } else { fail(detail) }
}

fn eremenko() -> Check {
    let found = common_iterate_search(&p("z^2"), &p("z^4"), 4, DEFAULT_DEGREE_BUDGET);
    let c = commutes(&p("z^2"), &p("z^3"));
    match found {
        Ok(Some((2, 1))) if c => pass("(n, m) = (2, 1); z^2 and z^3 commute"),
        other => fail(format!("search {other:?}, commutes {c}")),
    }
}

fn graph_topology() -> Check {
    let g = match build_graph(&p(BERGWEILER), &GraphBudget::default()) {
        Ok(g) => g,
        Err(e) => return fail(e.to_string()),
    };
    let edges = g.undirected_edges();
    let adjacent = |u: usize, v: usize| edges.contains(&(u.min(v), u.max(v)));
    let n = g.vertices.len();
    let triangle = (0..n)
        .flat_map(|a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
        .find(|t| adjacent(t[0], t[1]) && adjacent(t[1], t[2]) && adjacent(t[0], t[2]) && g.chain_cells.contains(&t.to_vec()));
    let Some(tri) = triangle else {
        return fail(format!("no rotation triangle among {n} vertices"));
    };
    let bare = match homology(&bare_complex(&g)) {
        Ok(h) => h,
        Err(e) => return fail(e.to_string()),
    };
    let e_minus_v = edges.len() as i64 - n as i64 + 1;
    let filled = match cw_complete(&g).and_then(|c| homology(&c)) {
        Ok(h) => h,
        Err(e) => return fail(e.to_string()),
    };
    let b1 = |h: &rittlab::decgraph::HomologyResult| h.betti.get(1).copied().unwrap_or(0) as i64;
    let detail = format!(
        "V = {n}, E = {}, triangle {tri:?}, bare betti {:?}, E-V+1 = {e_minus_v}, completed betti {:?}",
        edges.len(),
        bare.betti,
        filled.betti
    );
    let ok = g.complete && n > 3 && b1(&bare) == e_minus_v && b1(&filled) == b1(&bare) - 1 && g.pi1_rank() as i64 == e_minus_v;
    if ok { pass(detail) } else { fail(detail) }
}

/// Brute-force search for `γ` of small height conjugating `r` to a power or ±Chebyshev map.
fn screened_special(r: &RatMap) -> bool {
    let d = r.degree();
    let neg = Mobius::affine(-GQ::one(), GQ::zero());
    let targets = [
        RatMap::power(d as i64),
        RatMap::power(-(d as i64)),
        chebyshev(d),
        chebyshev(d).mobius_apply(None, Some(&neg)),
    ];
    let h = SCREEN_HEIGHT;
    for a in -h..=h {
        for b in -h..=h {
            for c in -h..=h {
                for e in -h..=h {
                    let Ok(g) = Mobius::new(GQ::from_int(a), GQ::from_int(b), GQ::from_int(c), GQ::from_int(e)) else {
                        continue;
                    };
                    let conj = r.conjugate_by(&g);
                    if targets.contains(&conj) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn special_forms() -> Check {
    let mut rng = common::rng(11);
    let mut misses = Vec::new();
    for k in 0..10 {
        let n = 2 + k % 3;
        let g = common::mobius(&mut rng, 3);
        let r = RatMap::power(n as i64).conjugate_by(&g);
        let s = detect_special(&r);
        let witnessed = s.conjugacy.as_ref().is_none_or(|w| r.conjugate_by(w) == RatMap::power(n as i64));
        if s.kind != (SpecialKind::Power { n, inverted: false }) || !witnessed {
            misses.push(format!("{r}: {}", s.kind));
        }
    }
    let mut cheb = 0;
    for d in [2usize, 3] {
        for _ in 0..3 {
            let g = common::mobius(&mut rng, 2);
            let r = chebyshev(d).conjugate_by(&g);
            match detect_special(&r).kind {
                SpecialKind::Chebyshev { d: got, .. } if got == d => cheb += 1,
                other => misses.push(format!("T{d} conjugate {r}: {other}")),
            }
        }
    }
    let (mut tested, mut false_pos) = (0, Vec::new());
    while tested < 50 {
        let d = rng.gen_range(2..=3);
        let r = common::int_map(&mut rng, d, 3);
        if screened_special(&r) {
            continue;
        }
        tested += 1;
        let k = detect_special(&r).kind;
        if k != SpecialKind::None {
            false_pos.push(format!("{r}: {k}"));
        }
    }
    let detail = format!(
        "{} power misses, {cheb}/6 Chebyshev conjugates, {} false positives on {tested} screened maps",
        misses.len(),
        false_pos.len()
    );
    if misses.is_empty() && false_pos.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}; {:?} {:?}", misses.first(), false_pos.first()))
    }
}

fn oracle_equivalence() -> Check {
    let mut rng = common::rng(12);
    let split = DegreeSplit::new(2, 2).unwrap();
    let (mut classes, mut unverified) = (0, 0);
    for _ in 0..30 {
        let a = common::int_map(&mut rng, 2, 3);
        let b = common::int_map(&mut rng, 2, 3);
        let r = a.compose(&b);
        let run = |tier| rat_decompose_split(&r, split, &Budget { tier, ..Budget::default() });
        let (ex, nu) = match (run(Tier::Exact), run(Tier::Numeric)) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(e), _) | (_, Err(e)) => return fail(format!("{r}: {e}")),
        };
        if ex.budget_exhausted || nu.budget_exhausted {
            return fail(format!("{r}: budget exhausted"));
        }
        let covered = |xs: &[Decomposition], ys: &[Decomposition]| {
            xs.iter().all(|x| ys.iter().any(|y| decompositions_equivalent(x, y).is_some()))
        };
        if ex.decompositions.len() != nu.decompositions.len()
            || !covered(&ex.decompositions, &nu.decompositions)
            || !covered(&nu.decompositions, &ex.decompositions)
        {
            return fail(format!("{r}: exact {} classes, numeric {}", ex.decompositions.len(), nu.decompositions.len()));
        }
        if !ex.decompositions.iter().any(|d| decompositions_equivalent(d, &chain(&[a.clone(), b.clone()])).is_some()) {
            return fail(format!("{r}: constructed chain ({a}, {b}) not recovered"));
        }
        classes += ex.decompositions.len();
        unverified += nu.unverified;
    }
    pass(format!("30 maps, {classes} classes in both tiers, {unverified} numeric candidates outside Q(i)"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 12] = [
        ("Zieve identity", zieve_identity),
        ("Zieve rediscovery", zieve_rediscovery),
        ("Bergweiler identity and chain lengths", bergweiler),
        ("primality of z(z-8)^3/(z+1)^3", primality),
        ("chain rule for critical points", chain_rule),
        ("Riemann-Hurwitz count", riemann_hurwitz),
        ("Muller-Zieve bound on polynomials", muller_zieve),
        ("hyperbolicity symmetry probe", symmetry_probe),
        ("Eremenko common iterate", eremenko),
        ("decomposition graph topology", graph_topology),
        ("special-form detectors", special_forms),
        ("exact and numeric tiers agree", oracle_equivalence),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let v = f();
        failed += !v.ok as usize;
        println!(
            "criterion {:>2} {:<40} {} [{:.2?}] {}",
            i + 1,
            name,
            if v.ok { "PASS" } else { "FAIL" },
            t.elapsed(),
            v.detail
        );
    }
    let total = start.elapsed();
    println!("acceptance: {} of 12 passed in {total:.2?} (limit {LIMIT_TOTAL:?})", 12 - failed);
    if failed > 0 || total > LIMIT_TOTAL {
        std::process::exit(1);
    }
}
