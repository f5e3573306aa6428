use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest ground set for which genericity is decided by full enumeration.
pub const MAX_LENGTH_SIDES: usize = 16;

/// Exact rational side lengths `α_1 <= ... <= α_m`, certified generic.
#[derive(Clone, PartialEq, Eq)]
pub struct LengthVector {
    lengths: Vec<BigRational>,
    // Common-denominator integer weights, used for all subset sums.
    weights: Vec<BigInt>,
    total: BigInt,
}

impl LengthVector {
    /// Validates positivity, ordering and genericity.
    pub fn new(lengths: Vec<BigRational>) -> Result<Self> {
        let m = lengths.len();
        if m == 0 {
            return Err(Error::InvalidLengths("empty length vector".into()));
        }
        if m > MAX_LENGTH_SIDES {
            return Err(Error::GroundSetTooLarge { size: m, max: MAX_LENGTH_SIDES });
        }
        if let Some(i) = lengths.iter().position(|a| !a.is_positive()) {
            return Err(Error::InvalidLengths(format!("length {} is not positive", i + 1)));
        }
        if let Some(i) = lengths.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidLengths(format!(
                "lengths must be non-decreasing (position {} > position {})",
                i + 1,
                i + 2
            )));
        }
        let denom = lengths.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let weights: Vec<BigInt> =
            lengths.iter().map(|a| a.numer() * (&denom / a.denom())).collect();
        let total: BigInt = weights.iter().sum();
        let v = LengthVector { lengths, weights, total };
        if let Some(tie) = v.half_sum_subset() {
            return Err(Error::NonGeneric(tie));
        }
        Ok(v)
    }

    /// Sorts the input first; the moduli space does not depend on the order.
    pub fn sorted(mut lengths: Vec<BigRational>) -> Result<Self> {
        lengths.sort();
        Self::new(lengths)
    }

    pub fn from_integers(lengths: &[i64]) -> Result<Self> {
        Self::new(lengths.iter().map(|&a| BigRational::from_integer(a.into())).collect())
    }

    /// Parses exact rational strings such as `"3"`, `"7/2"` or `"1.25"`.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let v = items.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }

    pub fn m(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[BigRational] {
        &self.lengths
    }

    /// Length `α_i`, 1-indexed.
    pub fn get(&self, i: usize) -> &BigRational {
        &self.lengths[i - 1]
    }

    fn weight_sum(&self, s: Subset) -> BigInt {
        s.iter().map(|i| &self.weights[i - 1]).sum()
    }

    /// A subset whose sum is exactly half the total, if any.
    fn half_sum_subset(&self) -> Option<Subset> {
        let m = self.m();
        // Subsets containing m suffice: a tie for S is a tie for its complement.
        let top = Subset::singleton(m);
        Subset::all(m - 1)
            .map(|s| s.union(top))
            .find(|&s| self.weight_sum(s) * 2 == self.total)
    }

    /// `2 * Σ_{i∈S} α_i < Σ α`, decided exactly.
    pub fn is_short(&self, s: Subset) -> Result<bool> {
        let twice = self.weight_sum(s) * 2;
        if twice == self.total {
            return Err(Error::NonGeneric(s));
        }
        Ok(twice < self.total)
    }

    /// The quotient vector `α(π)`: one entry per block, the block's total length.
    pub fn quotient(&self, blocks: &[Subset]) -> Result<LengthVector> {
        let mut v: Vec<BigRational> = blocks
            .iter()
            .map(|b| b.iter().map(|i| self.lengths[i - 1].clone()).sum())
            .collect();
        v.sort();
        LengthVector::new(v)
    }

    /// Every entry as an exact string (`"3"`, `"7/2"`).
    pub fn to_strings(&self) -> Vec<String> {
        self.lengths.iter().map(|a| a.to_string()).collect()
    }

    /// Same vector scaled to coprime integers.
    pub fn normalized(&self) -> LengthVector {
        let g = self.weights.iter().fold(BigInt::zero(), |acc, w| acc.gcd(w));
        let lengths = self
            .weights
            .iter()
            .map(|w| BigRational::from_integer(w / &g))
            .collect::<Vec<_>>();
        LengthVector::new(lengths).expect("scaling preserves validity")
    }
}

/// Parses `"3"`, `"-1/2"`, `"1.25"` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(n, d));
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

impl fmt::Debug for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for LengthVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LengthVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        LengthVector::parse(&v).map_err(serde::de::Error::custom)
    }
}

/// Generic-vector disconnection test: the second and third largest entries
/// together form a long pair. The quotient space is then two components.
pub fn is_disconnected_quotient(alpha: &LengthVector) -> Result<bool> {
    let k = alpha.m();
    if k < 3 {
        return Err(Error::InvalidLengths(format!("need at least 3 entries, got {k}")));
    }
    let pair = Subset::from_elements([k - 2, k - 1]);
    Ok(!alpha.is_short(pair)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(v: &[i64]) -> LengthVector {
        LengthVector::from_integers(v).unwrap()
    }

    #[test]
    fn shortness_examples() {
        assert!(lv(&[1, 1, 1, 1, 3]).is_short(Subset::singleton(5)).unwrap());
        assert!(lv(&[1, 2, 3, 3, 4]).is_short(Subset::EMPTY).unwrap());
        // 3 + 4 = 7 > 13/2
        assert!(!lv(&[1, 2, 3, 3, 4]).is_short(Subset::from_elements([3, 5])).unwrap());
    }

    #[test]
    fn rejects_non_generic_and_bad_input() {
        assert!(matches!(LengthVector::from_integers(&[1, 1, 2]), Err(Error::NonGeneric(_))));
        assert!(matches!(LengthVector::from_integers(&[1, 1, 1, 1]), Err(Error::NonGeneric(_))));
        assert!(matches!(LengthVector::from_integers(&[2, 1, 2]), Err(Error::InvalidLengths(_))));
        assert!(matches!(LengthVector::from_integers(&[0, 1, 2]), Err(Error::InvalidLengths(_))));
    }

    #[test]
    fn parses_rationals() {
        let v = LengthVector::parse(&["1/2", "0.75", "2"]).unwrap();
        assert_eq!(v.to_strings(), vec!["1/2", "3/4", "2"]);
        assert_eq!(v.normalized().to_strings(), vec!["2", "3", "8"]);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn disconnection_examples() {
        assert!(is_disconnected_quotient(&lv(&[2, 3, 4])).unwrap());
        assert!(is_disconnected_quotient(&lv(&[1, 1, 4, 4, 5])).unwrap());
        assert!(!is_disconnected_quotient(&lv(&[1, 1, 1, 1, 3])).unwrap());
    }
}
