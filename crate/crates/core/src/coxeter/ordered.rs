use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::posets::{parse_block, SetPartition};
use crate::subset::Subset;

/// A sequence of disjoint nonempty blocks, e.g. `2|34|1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedPartition {
    blocks: Vec<Subset>,
}

impl OrderedPartition {
    pub fn new(blocks: Vec<Subset>) -> Result<Self> {
        let mut seen = Subset::EMPTY;
        for &b in &blocks {
            if b.is_empty() || !b.is_disjoint(seen) {
                return Err(Error::Parse(format!("blocks are not disjoint and nonempty: {blocks:?}")));
            }
            seen = seen.union(b);
        }
        Ok(OrderedPartition { blocks })
    }

    /// Parses `"2|34|1"` (blocks as digit strings or bracketed lists).
    pub fn parse(text: &str) -> Result<Self> {
        let blocks = text.trim().split('|').map(|b| parse_block(b.trim())).collect::<Result<_>>()?;
        Self::new(blocks)
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Union of all blocks.
    pub fn ground(&self) -> Subset {
        self.blocks.iter().fold(Subset::EMPTY, |a, &b| a.union(b))
    }

    /// Merge of blocks `i` and `i + 1`.
    pub fn merge(&self, i: usize) -> OrderedPartition {
        let mut blocks = self.blocks.clone();
        let right = blocks.remove(i + 1);
        blocks[i] = blocks[i].union(right);
        OrderedPartition { blocks }
    }

    /// All merges of two adjacent blocks: the facets in the Coxeter complex.
    pub fn merges(&self) -> Vec<OrderedPartition> {
        (0..self.len().saturating_sub(1)).map(|i| self.merge(i)).collect()
    }

    pub fn reversed(&self) -> OrderedPartition {
        OrderedPartition { blocks: self.blocks.iter().rev().copied().collect() }
    }

    /// Blocks intersected with `p`, empty intersections dropped.
    pub fn restrict(&self, p: Subset) -> OrderedPartition {
        OrderedPartition {
            blocks: self.blocks.iter().map(|b| b.intersection(p)).filter(|b| !b.is_empty()).collect(),
        }
    }

    /// `s` lies inside a single block.
    pub fn has_together(&self, s: Subset) -> bool {
        self.blocks.iter().any(|b| s.is_subset_of(*b))
    }

    /// Every block is a union of blocks of `pi`.
    pub fn is_coarsening_of(&self, pi: &SetPartition) -> bool {
        pi.blocks().iter().all(|&c| self.has_together(c))
    }

    /// `self` is a face of `other`: `other` refines `self` block by block, in order.
    pub fn is_face_of(&self, other: &OrderedPartition) -> bool {
        let mut it = other.blocks.iter();
        for &b in &self.blocks {
            let mut acc = Subset::EMPTY;
            while acc != b {
                match it.next() {
                    Some(&c) if c.is_subset_of(b) => acc = acc.union(c),
                    _ => return false,
                }
            }
        }
        it.next().is_none()
    }
}

/// All ordered partitions of `e` with at least `min_blocks` blocks, sorted by
/// block count and then block contents.
pub fn ordered_partitions(e: Subset, min_blocks: usize) -> Vec<OrderedPartition> {
    fn rec(rest: Subset, prefix: &mut Vec<Subset>, out: &mut Vec<OrderedPartition>) {
        if rest.is_empty() {
            out.push(OrderedPartition { blocks: prefix.clone() });
            return;
        }
        // nonempty subsets of rest, by sub-mask enumeration
        let r = rest.bits();
        let mut sub = r;
        while sub != 0 {
            let b = Subset::from_bits(sub);
            prefix.push(b);
            rec(rest.difference(b), prefix, out);
            prefix.pop();
            sub = (sub - 1) & r;
        }
    }
    let mut out = Vec::new();
    if !e.is_empty() {
        rec(e, &mut Vec::new(), &mut out);
    }
    out.retain(|p| p.len() >= min_blocks);
    out.sort_by_key(|p| (p.len(), p.blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()));
    out
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.compact()).collect();
        write!(f, "{}", parts.join("|"))
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for OrderedPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> OrderedPartition {
        OrderedPartition::parse(s).unwrap()
    }

    #[test]
    fn counts_are_fubini_numbers() {
        // ordered Bell numbers 1, 3, 13, 75, 541
        let counts: Vec<usize> =
            (1..=5).map(|n| ordered_partitions(Subset::full(n), 1).len()).collect();
        assert_eq!(counts, vec![1, 3, 13, 75, 541]);
    }

    #[test]
    fn merges_and_reversal() {
        let p = op("2|34|1");
        assert_eq!(p.to_string(), "2|34|1");
        let m: Vec<String> = p.merges().iter().map(|x| x.to_string()).collect();
        assert_eq!(m, vec!["234|1", "2|134"]);
        assert_eq!(p.reversed().to_string(), "1|34|2");
        assert_eq!(p.restrict(Subset::from_elements([1, 3])).to_string(), "3|1");
    }

    #[test]
    fn face_relation() {
        assert!(op("234|1").is_face_of(&op("2|34|1")));
        assert!(op("2|34|1").is_face_of(&op("2|3|4|1")));
        assert!(!op("1|234").is_face_of(&op("2|34|1")));
        assert!(!op("24|3|1").is_face_of(&op("2|34|1")));
    }

    #[test]
    fn coarsening_test() {
        let pi = SetPartition::parse("(1,2,34)", 4).unwrap();
        assert!(op("12|34").is_coarsening_of(&pi));
        assert!(!op("13|24").is_coarsening_of(&pi));
    }
}
