//! Small dense exact linear algebra over ℚ(i).

use crate::ratfun::GQ;

pub type Matrix = Vec<Vec<GQ>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let t = &f * &m[r][j];
                m[i][j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

/// A basis of the right kernel `{x : m·x = 0}`.
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<GQ>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![GQ::zero(); cols];
            v[f] = GQ::one();
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<GQ> {
        v.iter().map(|&x| GQ::from_int(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[1, 0, 1])];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for r in &m {
            let dot = r.iter().zip(&k[0]).fold(GQ::zero(), |acc, (a, b)| acc + a * b);
            assert!(dot.is_zero());
        }
        let mut a = m.clone();
        assert_eq!(rref(&mut a), vec![0, 1]);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let m = vec![row(&[1, 1]), vec![GQ::i(), GQ::one()]];
        assert!(kernel(&m, 2).is_empty());
    }
}
