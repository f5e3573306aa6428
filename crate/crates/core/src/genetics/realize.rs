use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::code::{genetic_code, GeneticCode};
use super::length::LengthVector;
use super::lp::{maximize, LpOutcome};
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest ground set accepted by [`realize`] (`2^(m-1)` constraints).
pub const MAX_REALIZE_SIDES: usize = 10;

/// Finds a generic length vector with genetic code `code`, or `None` when the
/// code is not realizable.
///
/// Maximizes a common slack `t` over `0 < α_1 <= ... <= α_m`, `Σα <= 1`, with
/// `|Σα - 2Σ_S α| >= t` of the sign prescribed by the code for every `S ∋ m`.
/// The code is realizable iff the optimum is positive.
pub fn realize(code: &GeneticCode) -> Result<Option<LengthVector>> {
    let m = code.m();
    if m > MAX_REALIZE_SIDES {
        return Err(Error::GroundSetTooLarge { size: m, max: MAX_REALIZE_SIDES });
    }
    if code.is_empty() {
        return Ok(None);
    }
    let one = BigRational::one();
    let zero = BigRational::zero();
    let n = m + 1; // α_1..α_m, then t
    let t = m;
    let mut a: Vec<Vec<BigRational>> = Vec::new();
    let mut b: Vec<BigRational> = Vec::new();

    // t - α_1 <= 0
    let mut row = vec![zero.clone(); n];
    row[t] = one.clone();
    row[0] = -one.clone();
    a.push(row);
    b.push(zero.clone());
    // α_i - α_{i+1} <= 0
    for i in 0..m - 1 {
        let mut row = vec![zero.clone(); n];
        row[i] = one.clone();
        row[i + 1] = -one.clone();
        a.push(row);
        b.push(zero.clone());
    }
    let top = Subset::singleton(m);
    for s in Subset::all(m - 1).map(|s| s.union(top)) {
        // short: t + 2Σ_S - Σ <= 0 ; long: t + Σ - 2Σ_S <= 0
        let sign = if code.is_short(s) { one.clone() } else { -one.clone() };
        let mut row = vec![zero.clone(); n];
        for (i, entry) in row.iter_mut().enumerate().take(m) {
            *entry = if s.contains(i + 1) { sign.clone() } else { -sign.clone() };
        }
        row[t] = one.clone();
        a.push(row);
        b.push(zero.clone());
    }
    let mut row = vec![one.clone(); n];
    row[t] = zero.clone();
    a.push(row);
    b.push(one.clone());

    let mut c = vec![zero.clone(); n];
    c[t] = one.clone();
    let (value, x) = match maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, x } => (value, x),
        LpOutcome::Unbounded => return Err(Error::Audit("realizability LP unbounded".into())),
    };
    if !value.is_positive() {
        return Ok(None);
    }
    let alpha = LengthVector::new(x[..m].to_vec())?.normalized();
    let back = genetic_code(&alpha)?;
    if &back != code {
        return Err(Error::Audit(format!(
            "realized vector {alpha} has code {back}, expected {code}"
        )));
    }
    Ok(Some(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_code_realizes() {
        let v = realize(&GeneticCode::trivial(5)).unwrap().unwrap();
        assert_eq!(genetic_code(&v).unwrap(), GeneticCode::trivial(5));
    }

    #[test]
    fn code_25_realizes() {
        let g = GeneticCode::parse("<25>", None).unwrap();
        let v = realize(&g).unwrap().unwrap();
        assert_eq!(genetic_code(&v).unwrap(), g);
    }

    #[test]
    fn code_2469_is_not_realizable() {
        let g = GeneticCode::parse("<[2,4,6,9]>", Some(9)).unwrap();
        assert!(realize(&g).unwrap().is_none());
    }

    #[test]
    fn too_large() {
        let g = GeneticCode::trivial(11);
        assert!(matches!(realize(&g), Err(Error::GroundSetTooLarge { .. })));
    }
}
