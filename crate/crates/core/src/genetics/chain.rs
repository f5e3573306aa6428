use serde::Serialize;

use super::code::GeneticCode;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// A saturated chain `⟨m⟩ = C_1 ⋖ C_2 ⋖ ... ⋖ C_r = G`.
///
/// `added[i]` is the set `J` with `S_m(C_{i+2}) = S_m(C_{i+1}) ∪ {J}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturatedChain {
    pub codes: Vec<GeneticCode>,
    pub added: Vec<Subset>,
}

impl SaturatedChain {
    pub fn target(&self) -> &GeneticCode {
        self.codes.last().expect("chains are never empty")
    }

    /// Surgery indices `|J_i| - 2` along the chain.
    pub fn signature(&self) -> Vec<usize> {
        self.added.iter().map(|j| j.len() - 2).collect()
    }
}

// Descent order key: genes compared by their elements listed from largest to
// smallest; the largest key is removed first.
fn descent_key(g: Subset) -> Vec<usize> {
    g.descending()
}

/// Builds a saturated chain from `⟨m⟩` up to `code`.
///
/// Walks downwards: at each step the gene that is largest when its elements
/// are read from the top down is removed from `S_m` and the remainder is
/// re-maximized; the walk stops at `⟨m⟩` and is then reversed.
pub fn saturated_chain(code: &GeneticCode) -> Result<SaturatedChain> {
    code.ensure_valid()?;
    let m = code.m();
    if code.is_empty() {
        return Err(Error::InvalidCode(format!("{code} has an empty moduli space")));
    }
    let bottom = GeneticCode::trivial(m);
    let mut codes = vec![code.clone()];
    let mut added = Vec::new();
    let mut cur = code.clone();
    while cur != bottom {
        let gene = *cur
            .genes()
            .iter()
            .max_by_key(|g| descent_key(**g))
            .expect("non-trivial codes have genes");
        let rest: Vec<Subset> =
            cur.short_sets_with_m().into_iter().filter(|&s| s != gene).collect();
        let next = GeneticCode::from_sets_containing_m(m, &rest)?;
        debug_assert_eq!(next.covered_by(&cur), Some(gene));
        added.push(gene);
        codes.push(next.clone());
        cur = next;
    }
    codes.reverse();
    added.reverse();
    Ok(SaturatedChain { codes, added })
}

/// `(|J_i| - 2)` along [`saturated_chain`].
pub fn surgery_signature(code: &GeneticCode) -> Result<Vec<usize>> {
    Ok(saturated_chain(code)?.signature())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_chain() {
        let c = saturated_chain(&GeneticCode::trivial(5)).unwrap();
        assert_eq!(c.codes, vec![GeneticCode::trivial(5)]);
        assert!(c.added.is_empty());
    }

    #[test]
    fn chain_to_125() {
        let g = GeneticCode::parse("<125>", None).unwrap();
        let c = saturated_chain(&g).unwrap();
        let names: Vec<String> = c.codes.iter().map(|c| c.notation()).collect();
        assert_eq!(names, ["<5>", "<15>", "<25>", "<125>"]);
        let added: Vec<String> = c.added.iter().map(|j| j.compact()).collect();
        assert_eq!(added, ["15", "25", "125"]);
        assert_eq!(c.signature(), vec![0, 0, 1]);
    }

    #[test]
    fn thirteen_code_chain() {
        let g = GeneticCode::parse("<256>", None).unwrap();
        let c = saturated_chain(&g).unwrap();
        let names: Vec<String> = c.codes.iter().map(|c| c.notation()).collect();
        let expected = [
            "<6>", "<16>", "<26>", "<126>", "<126,36>", "<136>", "<236>", "<236,46>",
            "<146,236>", "<246>", "<246,56>", "<156,246>", "<256>",
        ];
        assert_eq!(names, expected);
        for w in c.codes.windows(2) {
            assert!(w[0].covered_by(&w[1]).is_some());
        }
        assert_eq!(c.signature().len(), 12);
    }

    #[test]
    fn rejects_invalid_and_empty() {
        let bad = GeneticCode::from_lists(5, &[&[5], &[1, 5]]).unwrap();
        assert!(matches!(saturated_chain(&bad), Err(Error::InvalidCode(_))));
        let empty = GeneticCode::new(5, []).unwrap();
        assert!(saturated_chain(&empty).is_err());
    }
}
