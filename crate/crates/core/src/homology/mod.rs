//! Order complexes, exact integral homology and the Betti-rank rule.

mod report;
mod simplicial;
mod snf;

pub use report::{homology, identify_small, HomologyReport, Identification};
pub use simplicial::{barycentric, order_complex, SimplicialComplex, MAX_SIMPLICES};
pub use snf::{smith_summary, SmithSummary, SparseMatrix};

use crate::coxeter::RegularCellComplex;
use crate::error::{Error, Result};
use crate::genetics::GeneticCode;

/// Predicted ranks `H_0 .. H_{m-3}` of the polygon space of `code`:
/// `rank H_k = a_k + a_{m-3-k}` where `a_k` counts short sets containing `m`
/// with `k + 1` elements.
pub fn betti_oracle(code: &GeneticCode) -> Result<Vec<usize>> {
    code.ensure_valid()?;
    let m = code.m();
    if m < 3 {
        return Err(Error::InvalidCode(format!("need m >= 3, got {m}")));
    }
    let top = m - 3;
    let mut a = vec![0usize; top + 1];
    for s in code.short_sets_with_m() {
        if s.len() - 1 <= top {
            a[s.len() - 1] += 1;
        }
    }
    Ok((0..=top).map(|k| a[k] + a[top - k]).collect())
}

/// Homology of a regular cell complex through its barycentric subdivision.
pub fn cell_homology(k: &RegularCellComplex) -> Result<HomologyReport> {
    homology(&barycentric(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::coxeter_complex;

    fn code(s: &str) -> GeneticCode {
        GeneticCode::parse(s, None).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(betti_oracle(&code("<15>")).unwrap(), vec![1, 2, 1]);
        assert_eq!(betti_oracle(&code("<125>")).unwrap(), vec![2, 4, 2]);
        assert_eq!(betti_oracle(&code("<45>")).unwrap(), vec![1, 8, 1]);
        assert_eq!(betti_oracle(&GeneticCode::trivial(6)).unwrap(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn sphere_and_projective_plane() {
        let k = coxeter_complex(4).unwrap();
        let h = cell_homology(&k).unwrap();
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert!(h.is_torsion_free());
        assert_eq!(h.orientable, Some(true));
        assert_eq!(identify_small(&h, 2).unwrap().name, "S²");

        let p = cell_homology(&k.projective_quotient().unwrap()).unwrap();
        assert_eq!(p.betti, vec![1, 0, 0]);
        assert_eq!(p.torsion[1], vec![2]);
        assert_eq!(p.orientable, Some(false));
        assert_eq!(identify_small(&p, 2).unwrap().name, "ℝP²");
    }

    #[test]
    fn empty_complex() {
        let h = homology(&SimplicialComplex::empty()).unwrap();
        assert!(h.betti.is_empty());
        assert_eq!(h.components, 0);
    }

    #[test]
    fn hexagon_is_a_circle() {
        let h = cell_homology(&coxeter_complex(3).unwrap()).unwrap();
        assert_eq!(h.betti, vec![1, 1]);
        assert_eq!(identify_small(&h, 1).unwrap().name, "S¹");
    }

    #[test]
    fn subdivision_invariance() {
        let s = barycentric(&coxeter_complex(4).unwrap().projective_quotient().unwrap()).unwrap();
        let t = s.subdivide().unwrap();
        assert_eq!(homology(&s).unwrap(), homology(&t).unwrap());
    }

    #[test]
    fn two_points_and_higher_dims() {
        let s = SimplicialComplex::from_faces(2, &[]).unwrap();
        let h = homology(&s).unwrap();
        assert_eq!(h.components, 2);
        assert_eq!(identify_small(&h, 0).unwrap().name, "2 points");
        let k5 = cell_homology(&coxeter_complex(5).unwrap()).unwrap();
        assert!(matches!(identify_small(&k5, 3), Err(Error::Unrecognized(_))));
    }
}
