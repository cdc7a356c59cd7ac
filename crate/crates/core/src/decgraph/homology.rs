//! CW completion of a decomposition graph and integral homology.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

use super::graph::DecGraph;

/// Cells by dimension with integer boundary matrices; `boundaries[k]` is
/// `∂_{k+1}`, with rows indexed by `k`-cells and columns by `(k+1)`-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CWComplex {
    pub cells: Vec<usize>,
    pub boundaries: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyResult {
    pub betti: Vec<usize>,
    /// Invariant factors greater than one, per dimension.
    pub torsion: Vec<Vec<String>>,
}

/// Simplicial boundary of sorted simplices of one dimension into the faces listed in `faces`.
fn simplex_boundary(simplices: &[Vec<usize>], faces: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; simplices.len()]; faces.len()];
    for (j, s) in simplices.iter().enumerate() {
        for k in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| *v).collect();
            let row = faces.iter().position(|f| *f == face).expect("face present");
            m[row][j] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

fn subsets(s: &[usize], size: usize, out: &mut Vec<Vec<usize>>) {
    fn go(s: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..s.len() {
            cur.push(s[i]);
            go(s, size, i + 1, cur, out);
            cur.pop();
        }
    }
    go(s, size, 0, &mut Vec::new(), out);
}

/// Vertices, undirected edges (self-loops included) and one simplex per chain cell with all its faces.
pub fn cw_complete(g: &DecGraph) -> Result<CWComplex> {
    if !g.complete {
        return Err(Error::TruncatedGraph);
    }
    let top = g.chain_cells.iter().map(|c| c.len()).max().unwrap_or(2).max(2);
    // by_dim[k]: sorted k-simplices; loops are kept apart since they are not simplices.
    let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
    by_dim[0] = (0..g.vertices.len()).map(|v| vec![v]).collect();
    let mut loops = 0;
    for (u, v) in g.undirected_edges() {
        if u == v {
            loops += 1;
        } else {
            by_dim[1].push(vec![u, v]);
        }
    }
    for c in &g.chain_cells {
        for size in 2..=c.len() {
            let mut faces = Vec::new();
            subsets(c, size, &mut faces);
            by_dim[size - 1].extend(faces);
        }
    }
    for cells in by_dim.iter_mut() {
        cells.sort();
        cells.dedup();
    }
    let keep = |k: usize, cells: &Vec<Vec<usize>>| !cells.is_empty() || (k == 1 && loops > 0);
    while by_dim.len() > 1 && !keep(by_dim.len() - 1, by_dim.last().unwrap()) {
        by_dim.pop();
    }
    let mut cells: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    // Loops are 1-cells with zero boundary, appended after the simplicial edges.
    let mut boundaries = Vec::new();
    for k in 1..by_dim.len() {
        let mut m = simplex_boundary(&by_dim[k], &by_dim[k - 1]);
        if k == 1 {
            for row in m.iter_mut() {
                row.resize(by_dim[1].len() + loops, 0);
            }
        }
        if k == 2 {
            m.extend(std::iter::repeat_n(vec![0; by_dim[2].len()], loops));
        }
        boundaries.push(m);
    }
    if cells.len() > 1 {
        cells[1] += loops;
    }
    Ok(CWComplex { cells, boundaries })
}

/// Graph without higher cells.
pub fn bare_complex(g: &DecGraph) -> CWComplex {
    let bare = DecGraph { chain_cells: Vec::new(), complete: true, ..g.clone() };
    cw_complete(&bare).expect("complete by construction")
}

fn check_boundaries(c: &CWComplex) -> Result<()> {
    for k in 1..c.boundaries.len() {
        let (a, b) = (&c.boundaries[k - 1], &c.boundaries[k]);
        for (i, row) in a.iter().enumerate() {
            for j in 0..c.cells[k + 1] {
                let s: i64 = row.iter().enumerate().map(|(l, x)| x * b[l][j]).sum();
                if s != 0 {
                    return Err(Error::MalformedBoundary { dim: k, row: i, col: j });
                }
            }
        }
    }
    Ok(())
}

/// Nonzero diagonal entries of the Smith normal form.
pub fn smith_invariants(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero entry in the remaining block.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // The pivot must divide the rest of the block.
        if let Some((i, _)) = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero())
        {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn homology(c: &CWComplex) -> Result<HomologyResult> {
    check_boundaries(c)?;
    let n = c.cells.len();
    let inv: Vec<Vec<BigInt>> = c.boundaries.iter().map(|m| smith_invariants(m)).collect();
    let rank = |k: usize| -> usize {
        // rank of ∂_k, zero outside 1..n
        if k == 0 || k >= n { 0 } else { inv[k - 1].len() }
    };
    let betti = (0..n).map(|k| c.cells[k] - rank(k) - rank(k + 1)).collect();
    let torsion = (0..n)
        .map(|k| {
            if k + 1 < n {
                inv[k].iter().filter(|x| !x.is_one()).map(BigInt::to_string).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    Ok(HomologyResult { betti, torsion })
}
