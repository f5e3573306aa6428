use std::fmt;

use serde::Serialize;

use super::partition::{partition_lattice, set_partitions, SetPartition};
use super::poset::FinitePoset;
use crate::error::{Error, Result};
use crate::genetics::GeneticCode;
use crate::subset::Subset;

/// Largest ground set accepted by [`intersection_poset`].
pub const MAX_INTERSECTION_SIDES: usize = 8;

/// Which of the two components a stratum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Sheet {
    Plain,
    Bar,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IntersectionElement {
    pub partition: SetPartition,
    pub sheet: Sheet,
}

impl IntersectionElement {
    pub fn plain(partition: SetPartition) -> Self {
        IntersectionElement { partition, sheet: Sheet::Plain }
    }

    pub fn is_bar(&self) -> bool {
        self.sheet == Sheet::Bar
    }
}

impl fmt::Display for IntersectionElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sheet {
            Sheet::Plain => write!(f, "{}", self.partition),
            Sheet::Bar => write!(f, "bar{}", self.partition),
        }
    }
}

/// Every block of `pi` is short for `code`.
pub fn all_blocks_short(code: &GeneticCode, pi: &SetPartition) -> bool {
    pi.blocks().iter().all(|&b| code.is_short(b))
}

/// Disconnection of the quotient space for a partition with short blocks.
///
/// Same criterion as [`crate::genetics::is_disconnected_quotient`] phrased on
/// the code: some three blocks are pairwise long as unions. With sorted block
/// lengths this holds iff the second and third largest blocks form a long pair.
pub fn partition_is_disconnected(code: &GeneticCode, pi: &SetPartition) -> bool {
    let b = pi.blocks();
    let long = |x: Subset, y: Subset| !code.is_short(x.union(y));
    (0..b.len()).any(|i| {
        (i + 1..b.len()).any(|j| {
            long(b[i], b[j]) && (j + 1..b.len()).any(|k| long(b[i], b[k]) && long(b[j], b[k]))
        })
    })
}

/// The intersection poset of the arrangement attached to `code`.
///
/// With `projective` set this is the poset of partitions of `[m]` with all
/// blocks short under reverse refinement. Otherwise every disconnected
/// partition gets a second `BAR` copy: bar copies are ordered among
/// themselves like their plain twins, and a connected refinement lies below
/// both copies.
pub fn intersection_poset(code: &GeneticCode, projective: bool) -> Result<FinitePoset<IntersectionElement>> {
    code.ensure_valid()?;
    let m = code.m();
    if m > MAX_INTERSECTION_SIDES {
        return Err(Error::GroundSetTooLarge { size: m, max: MAX_INTERSECTION_SIDES });
    }
    let parts: Vec<SetPartition> =
        set_partitions(m).into_iter().filter(|p| all_blocks_short(code, p)).collect();
    let mut elems: Vec<IntersectionElement> = parts.iter().cloned().map(IntersectionElement::plain).collect();
    if !projective {
        elems.extend(
            parts
                .iter()
                .filter(|p| partition_is_disconnected(code, p))
                .map(|p| IntersectionElement { partition: p.clone(), sheet: Sheet::Bar }),
        );
    }
    let disc: Vec<bool> = elems.iter().map(|e| partition_is_disconnected(code, &e.partition)).collect();
    let e2 = elems.clone();
    FinitePoset::from_leq(elems, |a, b| {
        let (x, y) = (&e2[a], &e2[b]);
        if !x.partition.refines(&y.partition) {
            return false;
        }
        match (x.sheet, y.sheet) {
            (Sheet::Plain, Sheet::Plain) | (Sheet::Bar, Sheet::Bar) => true,
            (Sheet::Plain, Sheet::Bar) => !disc[a],
            (Sheet::Bar, Sheet::Plain) => false,
        }
    })
}

/// `∏ Π_{|B|}` over the blocks of `pi`: the expected shape of the set of
/// refinements of `pi`.
pub fn local_model(pi: &SetPartition) -> Result<FinitePoset<String>> {
    let mut acc = FinitePoset::from_leq(vec![String::new()], |_, _| true)?;
    for b in pi.nontrivial_blocks() {
        let factor = partition_lattice(b.len())?;
        acc = acc.product(&factor).map_labels(|(a, p)| format!("{a}{p}"));
    }
    Ok(acc)
}
