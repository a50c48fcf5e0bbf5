//! Exact linear algebra over ℚ and ℤ.
//!
//! Matrices are plain row-major `Vec<Vec<_>>`; the sizes involved here are
//! tiny (rank ≤ 8 ambient spaces, desk-scale nerves), so no effort goes into
//! blocking or sparse storage.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type QMatrix = Vec<Vec<Q>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(m: &mut QMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
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
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Some solution of `a · x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn transpose<T: Clone>(m: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn zmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>], inner: usize, cols: usize) -> ZMatrix {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn zmul_vec(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(BigInt::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn zidentity(n: usize) -> ZMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// Smith normal form `u · a · v = d` with `u`, `v` unimodular and `d`
/// diagonal, `d[i] | d[i+1]`, all diagonal entries non-negative.
#[derive(Debug, Clone)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    pub u: ZMatrix,
    pub v: ZMatrix,
    /// Nonzero invariant factors, in order. `diag.len()` is the rank.
    pub diag: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

pub fn smith(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Smith {
    let mut d: ZMatrix = a.to_vec();
    let mut u = zidentity(rows);
    let mut v = zidentity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let f = d[i][t].div_floor(&d[t][t]);
                add_row(&mut d, i, t, &-&f);
                add_row(&mut u, i, t, &-&f);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let f = d[t][j].div_floor(&d[t][t]);
                add_col(&mut d, j, t, &-&f);
                add_col(&mut v, j, t, &-&f);
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[i][j].is_multiple_of(&d[t][t]));
            match offender {
                Some((i, _)) => {
                    add_row(&mut d, t, i, &BigInt::one());
                    add_row(&mut u, t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        t += 1;
    }
    let diag = (0..t).map(|i| d[i][i].clone()).collect();
    Smith {
        rows,
        cols,
        u,
        v,
        diag,
    }
}

fn swap_cols(m: &mut ZMatrix, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// row[dst] += f · row[src]
fn add_row(m: &mut ZMatrix, dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (x, y) in m[dst].iter_mut().zip(&src_row) {
        *x += f * y;
    }
}

/// col[dst] += f · col[src]
fn add_col(m: &mut ZMatrix, dst: usize, src: usize, f: &BigInt) {
    if f.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = &row[src] * f;
        row[dst] += s;
    }
}

/// Integer solution of `a · x = b` if one exists.
pub fn solve_integer(a: &[Vec<BigInt>], rows: usize, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = smith(a, rows, cols);
    let ub = zmul_vec(&s.u, b);
    let mut y = vec![BigInt::zero(); cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = ubi.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(zmul_vec(&s.v, &y))
}

/// A ℤ-basis of the integer kernel of `a`, as column vectors.
pub fn integer_kernel(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
    let s = smith(a, rows, cols);
    (s.rank()..cols)
        .map(|j| s.v.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Clears denominators of a rational matrix column-uniformly: returns the
/// integer matrix `a · l` and the common denominator `l`.
pub fn clear_denominators(a: &[Vec<Q>]) -> (ZMatrix, BigInt) {
    let l = a
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let m = a
        .iter()
        .map(|row| row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect())
        .collect();
    (m, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};
    use proptest::prelude::*;

    fn z(rows: &[&[i64]]) -> ZMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), qf(1, 3)]];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&[vec![q(0), q(0)]]), 0);
    }

    #[test]
    fn solve_finds_solution_or_reports_inconsistency() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert_eq!(solve(&a, &[q(3), q(1)]).unwrap(), vec![q(2), q(1)]);
        let b = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&b, &[q(1), q(3)]).is_none());
    }

    #[test]
    fn smith_of_known_matrix() {
        // diag(2, 6) after reduction
        let a = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith(&a, 3, 3);
        let d: Vec<i64> = s.diag.iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn integer_solve_respects_lattice() {
        let a = z(&[&[2, 0], &[0, 3]]);
        assert!(solve_integer(&a, 2, 2, &[BigInt::from(4), BigInt::from(3)]).is_some());
        assert!(solve_integer(&a, 2, 2, &[BigInt::from(1), BigInt::from(3)]).is_none());
    }

    proptest! {
        #[test]
        fn smith_reconstructs(entries in proptest::collection::vec(-6i64..=6, 12)) {
            let a: ZMatrix = entries.chunks(4).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let s = smith(&a, 3, 4);
            let uav = zmul(&zmul(&s.u, &a, 3, 4), &s.v, 4, 4);
            for i in 0..3 {
                for j in 0..4 {
                    let expect = if i == j && i < s.rank() { s.diag[i].clone() } else { BigInt::zero() };
                    prop_assert_eq!(&uav[i][j], &expect);
                }
            }
            for w in s.diag.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            for x in &s.diag {
                prop_assert!(x.is_positive());
            }
        }

        #[test]
        fn kernel_is_annihilated(entries in proptest::collection::vec(-4i64..=4, 8)) {
            let a: ZMatrix = entries.chunks(4).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            for col in integer_kernel(&a, 2, 4) {
                prop_assert!(zmul_vec(&a, &col).iter().all(Zero::is_zero));
            }
        }
    }
}
