use std::fmt;

use serde::Serialize;

use super::poset::FinitePoset;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest ground set for [`partition_lattice`] (Bell(9) = 21147).
pub const MAX_PARTITION_LATTICE: usize = 9;
/// Largest ground set for [`minimal_building_set`].
pub const MAX_BUILDING_SET: usize = 12;

/// An unordered set partition of `[n]`, blocks sorted by their least element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Subset>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let mut blocks: Vec<Subset> = blocks.into_iter().collect();
        let mut seen = Subset::EMPTY;
        for &b in &blocks {
            if b.is_empty() || !b.is_disjoint(seen) {
                return Err(Error::Parse(format!("blocks are not disjoint and nonempty: {blocks:?}")));
            }
            seen = seen.union(b);
        }
        if seen != Subset::full(n) {
            return Err(Error::Parse(format!("blocks {blocks:?} do not cover [{n}]")));
        }
        blocks.sort_by_key(|b| b.smallest());
        Ok(SetPartition { n, blocks })
    }

    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        SetPartition { n, blocks: (1..=n).map(Subset::singleton).collect() }
    }

    /// `block` plus singletons.
    pub fn with_block(n: usize, block: Subset) -> Result<Self> {
        let rest = Subset::full(n).difference(block);
        Self::new(n, std::iter::once(block).chain(rest.iter().map(Subset::singleton)))
    }

    /// Parses `"1|2|345|6"` or `"(1,2,345,6)"`; every element of `[n]` must appear.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let sep = if t.contains('|') { '|' } else { ',' };
        let blocks = t
            .split(sep)
            .map(|b| parse_block(b.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks with at least two elements.
    pub fn nontrivial_blocks(&self) -> Vec<Subset> {
        self.blocks.iter().copied().filter(|b| b.len() >= 2).collect()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        self.blocks.iter().all(|b| other.blocks.iter().any(|c| b.is_subset_of(*c)))
    }

    /// Block containing `i`.
    pub fn block_of(&self, i: usize) -> Subset {
        *self.blocks.iter().find(|b| b.contains(i)).expect("partition covers its ground set")
    }
}

/// Parses a block written as digits (`"345"`) or a bracketed list (`"[2,10]"`).
pub(crate) fn parse_block(b: &str) -> Result<Subset> {
    let bad = || Error::Parse(format!("bad block {b:?}"));
    let items: Vec<usize> = if let Some(inner) = b.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        inner
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    } else {
        b.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
    };
    if items.is_empty() || items.iter().any(|&i| i == 0 || i > 31) {
        return Err(bad());
    }
    Ok(Subset::from_elements(items))
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.compact()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All set partitions of `[n]` via restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0usize; n];
    loop {
        let k = rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut blocks = vec![Subset::EMPTY; k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].insert(i + 1);
        }
        out.push(SetPartition { n, blocks });
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let bound = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// The partition lattice `Π_n`, coarser partitions higher.
pub fn partition_lattice(n: usize) -> Result<FinitePoset<SetPartition>> {
    if n > MAX_PARTITION_LATTICE {
        return Err(Error::TooLarge(format!(
            "partition lattice of [{n}] (limit {MAX_PARTITION_LATTICE})"
        )));
    }
    if n == 0 {
        return Err(Error::Parse("partition lattice needs n >= 1".into()));
    }
    let parts = set_partitions(n);
    let p2 = parts.clone();
    FinitePoset::from_leq(parts, |a, b| p2[a].refines(&p2[b]))
}

/// Partitions with exactly one block of size at least two.
pub fn minimal_building_set(n: usize) -> Result<Vec<SetPartition>> {
    if n > MAX_BUILDING_SET {
        return Err(Error::TooLarge(format!("building set of [{n}] (limit {MAX_BUILDING_SET})")));
    }
    let mut out: Vec<SetPartition> = Subset::all(n)
        .filter(|s| s.len() >= 2)
        .map(|s| SetPartition::with_block(n, s).expect("valid block"))
        .collect();
    out.sort_by_key(|p| {
        let b = p.nontrivial_blocks()[0];
        (b.len(), b.to_vec())
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BELL: [usize; 8] = [1, 1, 2, 5, 15, 52, 203, 877];

    #[test]
    fn bell_numbers() {
        for (n, &bell) in BELL.iter().enumerate().skip(1) {
            assert_eq!(set_partitions(n).len(), bell);
        }
    }

    #[test]
    fn small_lattices() {
        let p3 = partition_lattice(3).unwrap();
        let mut ranks = p3.ranks().to_vec();
        ranks.sort_unstable();
        assert_eq!(ranks, vec![0, 1, 1, 1, 2]);
        assert!(p3.is_meet_semilattice());
        assert_eq!(partition_lattice(1).unwrap().len(), 1);
        assert_eq!(partition_lattice(4).unwrap().len(), 15);
        assert!(matches!(partition_lattice(10), Err(Error::TooLarge(_))));
    }

    #[test]
    fn rank_is_n_minus_blocks() {
        let p = partition_lattice(5).unwrap();
        for (i, part) in p.labels().iter().enumerate() {
            assert_eq!(p.rank(i), 5 - part.num_blocks());
        }
        assert!(p.is_graded());
    }

    #[test]
    fn building_sets() {
        assert_eq!(minimal_building_set(4).unwrap().len(), 11);
        assert_eq!(minimal_building_set(2).unwrap().len(), 1);
        assert_eq!(minimal_building_set(5).unwrap().len(), 26);
    }

    #[test]
    fn parse_and_display() {
        let p = SetPartition::parse("(1,2,345,6)", 6).unwrap();
        assert_eq!(p.to_string(), "(1,2,345,6)");
        assert_eq!(SetPartition::parse("345|1|2|6", 6).unwrap(), p);
        assert!(SetPartition::parse("(1,2,34)", 5).is_err());
        assert!(SetPartition::parse("(1,12)", 2).is_err());
    }
}
