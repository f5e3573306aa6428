//! Rank and invariant factors of sparse integer matrices.
//!
//! Unit pivots are eliminated sparsely first (column operations clearing the
//! pivot row, after which the pivot row and column drop out). Whatever is left
//! is diagonalized densely with minimal-entry pivoting. Arithmetic is checked
//! `i64`; on overflow the whole computation is redone over `BigInt`.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};
use std::cmp::Reverse;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive};

/// A sparse matrix given column by column as `(row, value)` entries.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

/// Rank and the non-unit invariant factors (all `> 1`) of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithSummary {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

trait Coef: Clone + Debug + Integer + Signed + CheckedMul + CheckedSub {
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coef for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Computes rank and torsion of `m`.
pub fn smith_summary(m: &SparseMatrix) -> SmithSummary {
    match reduce::<i64>(m) {
        Some(s) => s,
        None => reduce::<BigInt>(m).expect("BigInt arithmetic cannot overflow"),
    }
}

fn reduce<T: Coef>(m: &SparseMatrix) -> Option<SmithSummary> {
    let ncols = m.cols.len();
    let mut cols: Vec<BTreeMap<usize, T>> = m
        .cols
        .iter()
        .map(|c| c.iter().filter(|e| e.1 != 0).map(|&(r, v)| (r, T::from_i64(v))).collect())
        .collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &r in c.keys() {
            row_cols[r].insert(j);
        }
    }
    let mut alive_col = vec![true; ncols];
    let mut rank = 0usize;
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..ncols).map(|j| Reverse((cols[j].len(), j))).collect();

    while let Some(Reverse((nnz, j))) = heap.pop() {
        if !alive_col[j] || nnz != cols[j].len() || nnz == 0 {
            continue;
        }
        // unit entry in the shortest row
        let Some(r) = cols[j]
            .iter()
            .filter(|(_, v)| v.abs().is_one())
            .map(|(&r, _)| r)
            .min_by_key(|&r| (row_cols[r].len(), r))
        else {
            continue;
        };
        let u = cols[j][&r].clone();
        let pivot_col = cols[j].clone();
        let others: Vec<usize> = row_cols[r].iter().copied().filter(|&k| k != j).collect();
        for k in others {
            // col_k -= (a_rk * u) col_j, since u = ±1 is its own inverse
            let f = cols[k][&r].checked_mul(&u)?;
            for (&i, v) in &pivot_col {
                let delta = f.checked_mul(v)?;
                let entry = cols[k].entry(i).or_insert_with(T::zero);
                *entry = entry.checked_sub(&delta)?;
                if entry.is_zero() {
                    cols[k].remove(&i);
                    row_cols[i].remove(&k);
                } else {
                    row_cols[i].insert(k);
                }
            }
            heap.push(Reverse((cols[k].len(), k)));
        }
        for &i in pivot_col.keys() {
            row_cols[i].remove(&j);
        }
        // row r now meets column j only; both leave the matrix
        alive_col[j] = false;
        cols[j].clear();
        for k in row_cols[r].clone() {
            cols[k].remove(&r);
            row_cols[r].remove(&k);
        }
        rank += 1;
    }

    // dense remainder
    let rest_cols: Vec<usize> = (0..ncols).filter(|&j| alive_col[j] && !cols[j].is_empty()).collect();
    let mut rest_rows: Vec<usize> = rest_cols.iter().flat_map(|&j| cols[j].keys().copied()).collect();
    rest_rows.sort_unstable();
    rest_rows.dedup();
    let row_pos: BTreeMap<usize, usize> = rest_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![T::zero(); rest_cols.len()]; rest_rows.len()];
    for (c, &j) in rest_cols.iter().enumerate() {
        for (r, v) in &cols[j] {
            dense[row_pos[r]][c] = v.clone();
        }
    }
    let diag = diagonalize(&mut dense)?;
    rank += diag.len();
    let torsion = invariant_factors(diag.iter().map(|d| d.to_big()).collect());
    Some(SmithSummary { rank, torsion })
}

// Diagonalizes in place; returns the nonzero diagonal entries (absolute values).
fn diagonalize<T: Coef>(a: &mut [Vec<T>]) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x = x.checked_sub(&q.checked_mul(y)?)?;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let d = q.checked_mul(&row[t])?;
                    row[j] = row[j].checked_sub(&d)?;
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // move the smallest remainder in row/column t onto the diagonal
            let mut bi = t;
            let mut bj = t;
            for i in t + 1..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    Some(diag)
}

/// Normalizes diagonal entries to the invariant-factor chain and drops units.
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d
}

/// Small torsion coefficients as machine integers, for reporting.
pub(crate) fn torsion_to_u64(t: &[BigInt]) -> Vec<u64> {
    t.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> SparseMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        SparseMatrix {
            rows: nrows,
            cols: (0..ncols)
                .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i, rows[i][j])).collect())
                .collect(),
        }
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_examples() {
        let s = smith_summary(&from_dense(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion, big(&[6]));
        let s = smith_summary(&from_dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.rank, 3);
        assert_eq!(s.torsion, big(&[2, 6, 12]));
    }

    #[test]
    fn unit_and_zero() {
        let s = smith_summary(&from_dense(&[&[1, 1], &[1, 1]]));
        assert_eq!(s, SmithSummary { rank: 1, torsion: vec![] });
        let s = smith_summary(&SparseMatrix { rows: 3, cols: vec![vec![], vec![]] });
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let huge = i64::MAX / 2 + 1;
        let s = smith_summary(&from_dense(&[&[huge, 3], &[3, huge]]));
        assert_eq!(s.rank, 2);
        assert_eq!(s.torsion.len(), 1);
    }

    #[test]
    fn matches_brute_force_on_random_small_matrices() {
        // determinant check for 2x2: |det| = product of invariant factors
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 9) as i64 - 4
        };
        for _ in 0..200 {
            let m = [[next(), next()], [next(), next()]];
            let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs();
            let s = smith_summary(&from_dense(&[&m[0], &m[1]]));
            if det != 0 {
                assert_eq!(s.rank, 2);
                let prod: BigInt = s.torsion.iter().product();
                assert_eq!(prod, BigInt::from(det));
            } else {
                assert!(s.rank < 2);
            }
        }
    }
}
