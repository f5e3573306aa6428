//! Dense dictionary simplex over exact rationals.
//!
//! Solves `max c·x` subject to `A x <= b`, `x >= 0`, with `b >= 0` so the
//! origin is feasible. Bland's rule guarantees termination.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub(crate) enum LpOutcome {
    Optimal { value: BigRational, x: Vec<BigRational> },
    Unbounded,
}

pub(crate) fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let n = c.len();
    let rows = a.len();
    debug_assert!(b.iter().all(|v| !v.is_negative()));
    // x_basic[r] = rhs[r] - Σ_j tab[r][j] * x_nonbasic[j]
    let mut tab: Vec<Vec<BigRational>> = a.to_vec();
    let mut rhs: Vec<BigRational> = b.to_vec();
    let mut obj: Vec<BigRational> = c.to_vec();
    let mut obj_val = BigRational::zero();
    let mut nonbasic: Vec<usize> = (0..n).collect();
    let mut basic: Vec<usize> = (n..n + rows).collect();

    loop {
        let entering = (0..n)
            .filter(|&j| obj[j].is_positive())
            .min_by_key(|&j| nonbasic[j]);
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if !tab[r][j].is_positive() {
                continue;
            }
            let ratio = &rhs[r] / &tab[r][j];
            let better = match &leave {
                None => true,
                Some((lr, lratio)) => {
                    ratio < *lratio || (ratio == *lratio && basic[r] < basic[*lr])
                }
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((r, _)) = leave else { return LpOutcome::Unbounded };

        let p = tab[r][j].clone();
        let row_r: Vec<BigRational> = tab[r].iter().map(|v| v / &p).collect();
        let rhs_r = &rhs[r] / &p;
        for i in 0..rows {
            if i == r || tab[i][j].is_zero() {
                continue;
            }
            let f = tab[i][j].clone();
            for k in 0..n {
                if k != j {
                    let d = &f * &row_r[k];
                    tab[i][k] -= d;
                }
            }
            tab[i][j] = -(&f / &p);
            rhs[i] -= &f * &rhs_r;
        }
        let f = obj[j].clone();
        if !f.is_zero() {
            for k in 0..n {
                if k != j {
                    obj[k] -= &f * &row_r[k];
                }
            }
            obj[j] = -(&f / &p);
            obj_val += &f * &rhs_r;
        }
        let mut new_row = row_r;
        new_row[j] = BigRational::from_integer(1.into()) / &p;
        tab[r] = new_row;
        rhs[r] = rhs_r;
        std::mem::swap(&mut basic[r], &mut nonbasic[j]);
    }

    let mut x = vec![BigRational::zero(); n];
    for (r, &v) in basic.iter().enumerate() {
        if v < n {
            x[v] = rhs[r].clone();
        }
    }
    LpOutcome::Optimal { value: obj_val, x }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_lp() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let a = vec![vec![q(1), q(2)], vec![q(3), q(1)]];
        let b = vec![q(4), q(6)];
        let c = vec![q(1), q(1)];
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, BigRational::new(14.into(), 5.into()));
                assert_eq!(x, vec![BigRational::new(8.into(), 5.into()), BigRational::new(6.into(), 5.into())]);
            }
            LpOutcome::Unbounded => panic!("bounded"),
        }
    }

    #[test]
    fn unbounded_lp() {
        let a = vec![vec![q(1), q(-1)]];
        assert!(matches!(maximize(&a, &[q(1)], &[q(0), q(1)]), LpOutcome::Unbounded));
    }
}
