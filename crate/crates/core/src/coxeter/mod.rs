//! Regular cell complexes and the type-A Coxeter complex.

mod complex;
mod ordered;

use std::collections::HashMap;

pub use complex::{is_cell_isomorphism, Cell, CellJson, CellLabel, ComplexJson, RegularCellComplex};
pub use ordered::{ordered_partitions, OrderedPartition};

use crate::error::{Error, Result};
use crate::posets::SetPartition;
use crate::subset::Subset;

/// Largest ground set for [`coxeter_complex`].
pub const MAX_COXETER_POINTS: usize = 7;

/// The Coxeter complex `CA_{n-1}` on `[n]`, `3 <= n <= 7`.
pub fn coxeter_complex(n: usize) -> Result<RegularCellComplex> {
    if n < 3 {
        return Err(Error::NotApplicable(format!("Coxeter complex needs at least 3 points, got {n}")));
    }
    coxeter_complex_on(Subset::full(n))
}

/// The Coxeter complex on an arbitrary ground set of 2 to 7 points.
///
/// Cells are ordered set partitions with at least two blocks, of dimension
/// `#blocks - 2`; facets are merges of two adjacent blocks. The involution
/// reverses the block order.
pub fn coxeter_complex_on(e: Subset) -> Result<RegularCellComplex> {
    if e.len() > MAX_COXETER_POINTS {
        return Err(Error::TooLarge(format!(
            "Coxeter complex on {} points (limit {MAX_COXETER_POINTS})",
            e.len()
        )));
    }
    if e.len() < 2 {
        return Err(Error::NotApplicable("Coxeter complex needs at least 2 points".into()));
    }
    let parts = ordered_partitions(e, 2);
    let index: HashMap<&OrderedPartition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut k = RegularCellComplex::with_ground(e);
    for p in &parts {
        let facets = if p.len() > 2 { p.merges().iter().map(|f| index[f]).collect() } else { vec![] };
        k.push(p.len() - 2, CellLabel::Ordered(p.clone()), facets);
    }
    let tau = parts.iter().map(|p| index[&p.reversed()]).collect();
    k.set_involution(tau);
    Ok(k)
}

/// The sub-sphere `S_X` for the partition `pi` of the ground set.
#[derive(Debug, Clone)]
pub struct SphereSubcomplex {
    pub partition: SetPartition,
    /// Cell ids in the ambient complex, sorted.
    pub cells: Vec<usize>,
    /// For Coxeter-labelled spheres: each cell as an ordered partition of the
    /// block indices `1..=k`, realizing the isomorphism with `CA_{k-1}`.
    pub quotient_labels: Option<Vec<OrderedPartition>>,
}

impl SphereSubcomplex {
    /// Dimension of the sphere, `#blocks - 2`.
    pub fn dim(&self) -> usize {
        self.partition.num_blocks() - 2
    }
}

/// Cells whose label keeps every block of `pi` together.
///
/// When all selected cells carry plain Coxeter labels the isomorphism with the
/// Coxeter complex on the blocks of `pi` is built and verified.
pub fn sphere_subcomplex(k: &RegularCellComplex, pi: &SetPartition) -> Result<SphereSubcomplex> {
    let ground = k.ground().ok_or_else(|| Error::NotApplicable("complex has no ground set".into()))?;
    if Subset::full(pi.n()) != ground {
        return Err(Error::NotApplicable(format!("{pi} is not a partition of the ground set {ground}")));
    }
    if pi.num_blocks() < 2 {
        return Err(Error::NotApplicable("sphere needs at least two blocks".into()));
    }
    let blocks = pi.nontrivial_blocks();
    let cells: Vec<usize> = (0..k.len())
        .filter(|&i| blocks.iter().all(|&b| k.cell(i).label.has_together(b)))
        .collect();
    let plain: Option<Vec<&OrderedPartition>> = cells
        .iter()
        .map(|&i| match &k.cell(i).label {
            CellLabel::Ordered(p) => Some(p),
            _ => None,
        })
        .collect();
    let quotient_labels = match plain {
        Some(ps) => {
            let q: Vec<OrderedPartition> = ps.iter().map(|p| quotient_partition(p, pi)).collect();
            let (sub, _) = k.induced(&cells)?;
            let model = coxeter_complex_on(Subset::full(pi.num_blocks()))?;
            let index: HashMap<&OrderedPartition, usize> = model
                .cells()
                .iter()
                .enumerate()
                .filter_map(|(i, c)| match &c.label {
                    CellLabel::Ordered(p) => Some((p, i)),
                    _ => None,
                })
                .collect();
            let map: Option<Vec<usize>> = q.iter().map(|p| index.get(p).copied()).collect();
            if !map.is_some_and(|m| is_cell_isomorphism(&sub, &model, &m)) {
                return Err(Error::Audit(format!("sphere for {pi} is not a Coxeter complex")));
            }
            Some(q)
        }
        None => None,
    };
    Ok(SphereSubcomplex { partition: pi.clone(), cells, quotient_labels })
}

// Replace each block of a coarsening of `pi` by the indices of the pi-blocks it contains.
fn quotient_partition(p: &OrderedPartition, pi: &SetPartition) -> OrderedPartition {
    let blocks = p
        .blocks()
        .iter()
        .map(|&b| {
            Subset::from_elements(
                pi.blocks().iter().enumerate().filter(|(_, c)| c.is_subset_of(b)).map(|(j, _)| j + 1),
            )
        })
        .collect();
    OrderedPartition::new(blocks).expect("coarsening blocks stay disjoint")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn ca3_counts() {
        let k = coxeter_complex(4).unwrap();
        assert_eq!(k.f_vector(), vec![14, 36, 24]);
        k.audit().unwrap();
        let p = k.projective_quotient().unwrap();
        assert_eq!(p.f_vector(), vec![7, 18, 12]);
        p.audit().unwrap();
        assert_eq!(coxeter_complex(3).unwrap().f_vector(), vec![6, 6]);
    }

    #[test]
    fn top_cells_and_euler() {
        for n in 3..=6 {
            let k = coxeter_complex(n).unwrap();
            assert_eq!(*k.f_vector().last().unwrap(), factorial(n));
            let expected = 1 + if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(k.euler_characteristic(), expected);
            k.audit().unwrap();
        }
        assert!(matches!(coxeter_complex(8), Err(Error::TooLarge(_))));
    }

    #[test]
    fn spheres() {
        let k = coxeter_complex(4).unwrap();
        let s = sphere_subcomplex(&k, &SetPartition::parse("(123,4)", 4).unwrap()).unwrap();
        let names: Vec<String> = s.cells.iter().map(|&i| k.cell(i).label.to_string()).collect();
        assert_eq!(names, vec!["123|4", "4|123"]);
        let all = sphere_subcomplex(&k, &SetPartition::discrete(4)).unwrap();
        assert_eq!(all.cells.len(), k.len());
        let s34 = sphere_subcomplex(&k, &SetPartition::parse("(1,2,34)", 4).unwrap()).unwrap();
        let (sub, _) = k.induced(&s34.cells).unwrap();
        assert_eq!(sub.f_vector(), vec![6, 6]);
        let k5 = coxeter_complex(5).unwrap();
        let s34 = sphere_subcomplex(&k5, &SetPartition::parse("(1,2,34,5)", 5).unwrap()).unwrap();
        let (sub, _) = k5.induced(&s34.cells).unwrap();
        assert_eq!(sub.f_vector(), vec![14, 36, 24]);
    }

    #[test]
    fn links() {
        let k = coxeter_complex(4).unwrap();
        let v = k.cells().iter().position(|c| c.label.to_string() == "123|4").unwrap();
        let l = k.link(v);
        assert_eq!(l.f_vector(), vec![6, 6]);
        l.audit().unwrap();
        let top = k.cells().iter().position(|c| c.dim == 2).unwrap();
        assert!(k.link(top).is_empty());

        let k5 = coxeter_complex(5).unwrap();
        let e = k5.cells().iter().position(|c| c.label.to_string() == "1|2|34|5").unwrap();
        let l = k5.link(e);
        assert_eq!(l.f_vector(), vec![2]);
    }

    #[test]
    fn cylinder() {
        let mut p = RegularCellComplex::new();
        p.push(0, CellLabel::ConePoint, vec![]);
        let hex = coxeter_complex(3).unwrap();
        let cyl = p.cone().product(&hex);
        assert_eq!(cyl.f_vector(), vec![12, 18, 6]);
        cyl.audit().unwrap();
    }
}
