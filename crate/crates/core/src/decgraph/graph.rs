//! Breadth-first closure of a map under splits and rotations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use log::warn;
use serde_json::{json, Value};

use crate::decompose::{all_splits, prime_decompositions, Budget};
use crate::error::Result;
use crate::ratfun::RatMap;

use super::conj::{centered, conjugate_maps, Conjugacy, Fingerprint};

#[derive(Clone, Debug)]
pub struct MapClass {
    pub representative: RatMap,
    pub key: Fingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// The split `(R1, R2)` at `from`; `to` holds `R2∘R1`.
    pub split: (RatMap, RatMap),
}

#[derive(Clone, Debug)]
pub struct DecGraph {
    pub vertices: Vec<MapClass>,
    pub edges: Vec<Edge>,
    pub basepoint: usize,
    pub complete: bool,
    /// Numeric split candidates with no Gaussian-rational reconstruction,
    /// typically decompositions defined over a larger field.
    pub unreconstructed: usize,
    /// Rotation vertices of each prime chain of length at least 3, one entry
    /// per distinct vertex set, sorted.
    pub chain_cells: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct GraphBudget {
    pub decompose: Budget,
    pub max_vertices: usize,
}

impl Default for GraphBudget {
    fn default() -> Self {
        GraphBudget { decompose: Budget::default(), max_vertices: 64 }
    }
}

struct Builder {
    vertices: Vec<MapClass>,
    budget: usize,
}

impl Builder {
    /// Index of the class of `r`, inserting it if new; `None` past the vertex budget.
    fn locate(&mut self, r: &RatMap) -> Option<(usize, bool)> {
        let r = &if self.vertices.is_empty() { r.clone() } else { centered(r).0 };
        let key = Fingerprint::of(r);
        for (i, v) in self.vertices.iter().enumerate() {
            if !v.key.matches(&key) {
                continue;
            }
            match conjugate_maps(&v.representative, r) {
                Conjugacy::Verified(_) => return Some((i, false)),
                Conjugacy::NotConjugate => {}
                other => warn!("fingerprint collision without certified conjugacy: {} vs {r} ({other:?})", v.representative),
            }
        }
        if self.vertices.len() >= self.budget {
            return None;
        }
        self.vertices.push(MapClass { representative: r.clone(), key });
        Some((self.vertices.len() - 1, true))
    }
}

fn cyclic_rotation(chain: &[RatMap], k: usize) -> RatMap {
    let rotated: Vec<RatMap> = chain[k..].iter().chain(&chain[..k]).cloned().collect();
    crate::decompose::compose_chain(&rotated)
}

pub fn build_graph(r: &RatMap, budget: &GraphBudget) -> Result<DecGraph> {
    let mut b = Builder { vertices: Vec::new(), budget: budget.max_vertices.max(1) };
    b.locate(r);
    let mut edges: Vec<Edge> = Vec::new();
    let mut complete = true;
    let mut unreconstructed = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let rep = b.vertices[u].representative.clone();
        for res in all_splits(&rep, &budget.decompose)? {
            complete &= !res.budget_exhausted;
            unreconstructed += res.unverified;
            for d in res.decompositions {
                let (r1, r2) = (d.factors[0].clone(), d.factors[1].clone());
                let Some((v, fresh)) = b.locate(&r2.compose(&r1)) else {
                    complete = false;
                    continue;
                };
                if fresh {
                    queue.push_back(v);
                }
                if !edges.iter().any(|e| e.from == u && e.to == v) {
                    edges.push(Edge { from: u, to: v, split: (r1, r2) });
                }
            }
        }
    }
    // Higher cells come from prime chains with pairwise distinct rotation vertices.
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    if complete {
        for u in 0..b.vertices.len() {
            let rep = b.vertices[u].representative.clone();
            let pc = prime_decompositions(&rep, &budget.decompose)?;
            complete &= !pc.budget_exhausted;
            for c in pc.chains.iter().filter(|c| c.len() >= 3) {
                let mut verts = Vec::new();
                for k in 0..c.len() {
                    match b.locate(&cyclic_rotation(&c.factors, k)) {
                        Some((v, false)) => verts.push(v),
                        _ => {
                            warn!("rotation of a prime chain of {rep} lies outside the explored component");
                            complete = false;
                        }
                    }
                }
                let distinct: BTreeSet<usize> = verts.iter().copied().collect();
                if distinct.len() == c.len() {
                    cells.insert(distinct.into_iter().collect());
                }
            }
        }
    }
    if unreconstructed > 0 {
        warn!("{unreconstructed} split candidates of the component have no Gaussian-rational form");
    }
    let mut g = canonicalize(b.vertices, edges, complete, cells.into_iter().collect());
    g.unreconstructed = unreconstructed;
    Ok(g)
}

/// Reorders vertices: basepoint first, then by fingerprint key and expression.
fn canonicalize(vertices: Vec<MapClass>, edges: Vec<Edge>, complete: bool, cells: Vec<Vec<usize>>) -> DecGraph {
    let mut order: Vec<usize> = (1..vertices.len()).collect();
    order.sort_by_cached_key(|&i| (vertices[i].key.key(), vertices[i].representative.to_expr()));
    order.insert(0, 0);
    let mut pos = vec![0; vertices.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let vertices: Vec<MapClass> = order.iter().map(|&i| vertices[i].clone()).collect();
    let mut edges: Vec<Edge> = edges.into_iter().map(|e| Edge { from: pos[e.from], to: pos[e.to], ..e }).collect();
    edges.sort_by_cached_key(|e| (e.from, e.to, e.split.0.to_expr(), e.split.1.to_expr()));
    let mut chain_cells: Vec<Vec<usize>> = cells
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.iter().map(|&i| pos[i]).collect();
            v.sort();
            v
        })
        .collect();
    chain_cells.sort();
    DecGraph { vertices, edges, basepoint: 0, complete, unreconstructed: 0, chain_cells }
}

impl DecGraph {
    /// Undirected simple edges `(u, v)` with `u ≤ v`, self-loops included.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self.edges.iter().map(|e| (e.from.min(e.to), e.from.max(e.to))).collect();
        set.into_iter().collect()
    }

    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (u, v) in self.undirected_edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        (0..n).filter(|&i| find(&mut parent, i) == i).count()
    }

    /// Rank of the free fundamental group of the underlying undirected graph, `E − V + c`.
    pub fn pi1_rank(&self) -> usize {
        self.undirected_edges().len() + self.components() - self.vertices.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices.iter().enumerate().map(|(i, v)| json!({
                "id": i,
                "repr": v.representative.to_expr(),
                "degree": v.representative.degree(),
                "fingerprint": v.key.key(),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "from": e.from,
                "to": e.to,
                "split": [e.split.0.to_expr(), e.split.1.to_expr()],
            })).collect::<Vec<_>>(),
            "basepoint": self.basepoint,
            "complete": self.complete,
            "unreconstructed": self.unreconstructed,
        })
    }

    pub fn to_dot(&self) -> String {
        let esc = |s: String| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = String::from("digraph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", esc(v.representative.to_expr()));
        }
        for e in &self.edges {
            let label = format!("({}, {})", e.split.0.to_expr(), e.split.1.to_expr());
            let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, esc(label));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

pub fn export_graph(g: &DecGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Json => serde_json::to_string(&g.to_json()).expect("graph json"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::parse_ratmap as p;

    #[test]
    fn prime_map_is_a_point() {
        let g = build_graph(&p("z^3+z").unwrap(), &GraphBudget::default()).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
        assert!(g.complete);
        assert_eq!(export_graph(&g, GraphFormat::Dot).matches("label=").count(), 1);
    }

    #[test]
    fn zieve_graph_has_a_second_vertex() {
        let r = p("(z-1)^2/(z+1)^2").unwrap();
        let g = build_graph(&r.compose(&r), &GraphBudget::default()).unwrap();
        // R∘R rotates to itself; the split (4z/(z+1)², z²) rotates to a different class.
        assert!(g.edges.iter().any(|e| e.from == 0 && e.to == 0));
        assert!(g.vertices.len() >= 2, "{}", g.to_dot());
        assert!(g.complete);
    }
}
