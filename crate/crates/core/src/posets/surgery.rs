use std::fmt;

use super::poset::FinitePoset;
use crate::error::{Error, Result};

/// Element of `CS_x(L)`: a surviving element of `L` or a new interval `[x, y]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CsElement<L> {
    Old(L),
    Interval { x: L, y: L },
}

impl<L: fmt::Display> fmt::Display for CsElement<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsElement::Old(l) => write!(f, "{l}"),
            CsElement::Interval { x, y } => write!(f, "[{x};{y}]"),
        }
    }
}

/// Result of [`comb_surgery`] with the bookkeeping needed to audit it.
#[derive(Clone)]
pub struct CombSurgery<L> {
    pub poset: FinitePoset<CsElement<L>>,
    /// For each element of `poset`: `Ok(i)` for old element `i` of `L`,
    /// `Err(y)` for the interval `[x, y]`.
    pub origin: Vec<std::result::Result<usize, usize>>,
    /// Interval elements whose rank differs from `k - rk(x) + rk(y) + 1`.
    pub rank_violations: Vec<usize>,
}

/// Combinatorial surgery `CS_x(L)` on a meet semilattice.
///
/// Removes the closed up-set of `x` and adds one element `[x, y]` per `y < x`.
/// Old elements keep their order, `[x,y] <= [x,y']` iff `y <= y'`, and an old
/// `z` lies below `[x, y]` iff `z ∨ x` exists and `z ∧ x <= y`.
pub fn comb_surgery<L: Clone + fmt::Display>(l: &FinitePoset<L>, x: usize) -> Result<CombSurgery<L>> {
    l.ensure_meet_semilattice()?;
    if Some(x) == l.bottom() {
        return Err(Error::NotApplicable("surgery along the bottom element".into()));
    }
    let mut labels = Vec::new();
    let mut origin = Vec::new();
    for y in 0..l.len() {
        if !l.leq(x, y) {
            labels.push(CsElement::Old(l.label(y).clone()));
            origin.push(Ok(y));
        }
    }
    for y in 0..l.len() {
        if l.lt(y, x) {
            labels.push(CsElement::Interval { x: l.label(x).clone(), y: l.label(y).clone() });
            origin.push(Err(y));
        }
    }
    let below_interval = |z: usize, y: usize| {
        l.join(z, x).is_some() && l.meet(z, x).is_some_and(|w| l.leq(w, y))
    };
    let poset = FinitePoset::from_leq(labels, |a, b| match (origin[a], origin[b]) {
        (Ok(p), Ok(q)) => l.leq(p, q),
        (Err(p), Err(q)) => l.leq(p, q),
        (Ok(z), Err(y)) => below_interval(z, y),
        (Err(_), Ok(_)) => false,
    })?;
    poset.ensure_meet_semilattice()?;
    let k = l.max_rank();
    let rank_violations = (0..poset.len())
        .filter(|&i| match origin[i] {
            Err(y) => poset.rank(i) + l.rank(x) != k + l.rank(y) + 1,
            Ok(_) => false,
        })
        .collect();
    Ok(CombSurgery { poset, origin, rank_violations })
}
