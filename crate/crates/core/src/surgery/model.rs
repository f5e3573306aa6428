//! Homotopy model of surgery in any dimension, as an order complex.
//!
//! The sphere `S` is removed from the face poset of the Coxeter complex and
//! the Coxeter complex on `P = J^c` is added below the cells that met `S`:
//! a new cell `y` lies below an old cell `x` iff `y` is a face of the
//! restriction of `x` to `P`. The order complex of the result is homotopy
//! equivalent to the surgered space.

use super::exact::locate_sphere;
use super::step::SurgeryStep;
use crate::coxeter::{ordered_partitions, CellLabel, OrderedPartition, RegularCellComplex};
use crate::error::{Error, Result};
use crate::homology::{order_complex, SimplicialComplex};

/// Order complex modelling surgery along every step in `steps`, applied to
/// the Coxeter complex `k`. Later spheres must avoid the closed stars of
/// earlier ones.
pub fn surgery_model(k: &RegularCellComplex, steps: &[SurgeryStep]) -> Result<SimplicialComplex> {
    let n = k.len();
    let mut removed = vec![false; n];
    let mut stars: Vec<Vec<bool>> = Vec::new();
    let mut adjacent: Vec<Vec<bool>> = Vec::new();
    for (i, step) in steps.iter().enumerate() {
        let sphere = locate_sphere(k, step);
        for (j, star) in stars.iter().enumerate() {
            if let Some(&c) = sphere.iter().find(|&&c| star[c]) {
                return Err(Error::ChainInterference {
                    step: i + 1,
                    detail: format!(
                        "sphere for J = {} meets the closed star of step {} at {}",
                        step.j,
                        j + 1,
                        k.cell(c).label
                    ),
                });
            }
        }
        let mut in_s = vec![false; n];
        for &c in &sphere {
            in_s[c] = true;
            removed[c] = true;
        }
        let adj: Vec<bool> = (0..n).map(|c| !in_s[c] && k.closure(&[c]).iter().any(|&f| in_s[f])).collect();
        let touched: Vec<usize> = (0..n).filter(|&c| in_s[c] || adj[c]).collect();
        let mut star = vec![false; n];
        for c in k.closure(&touched) {
            star[c] = true;
        }
        stars.push(star);
        adjacent.push(adj);
    }
    let kept: Vec<usize> = (0..n).filter(|&c| !removed[c]).collect();
    if kept.is_empty() {
        return Err(Error::NotFull);
    }
    let mut new_id = vec![usize::MAX; n];
    for (i, &c) in kept.iter().enumerate() {
        new_id[c] = i;
    }
    let links: Vec<Vec<OrderedPartition>> = steps.iter().map(|s| ordered_partitions(s.block(), 2)).collect();
    let mut offsets = Vec::new();
    let mut total = kept.len();
    for l in &links {
        offsets.push(total);
        total += l.len();
    }

    let restrict = |c: usize, step: &SurgeryStep| -> Result<OrderedPartition> {
        match &k.cell(c).label {
            CellLabel::Ordered(p) => Ok(p.restrict(step.block())),
            other => Err(Error::ProjectionNotSimplicial(format!("cell {other} carries no ordered partition"))),
        }
    };
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); total];
    for &x in &kept {
        let closure = k.closure(&[x]);
        let mut faces: Vec<usize> = closure.iter().filter(|&&f| f != x && !removed[f]).map(|&f| new_id[f]).collect();
        for (i, step) in steps.iter().enumerate() {
            if !adjacent[i][x] {
                continue;
            }
            let phi = restrict(x, step)?;
            for &f in &closure {
                if f != x && adjacent[i][f] && !restrict(f, step)?.is_face_of(&phi) {
                    return Err(Error::ProjectionNotSimplicial(format!(
                        "restriction to {} reverses {} <= {}",
                        step.block(),
                        k.cell(f).label,
                        k.cell(x).label
                    )));
                }
            }
            faces.extend(
                links[i].iter().enumerate().filter(|(_, y)| y.is_face_of(&phi)).map(|(j, _)| offsets[i] + j),
            );
        }
        below[new_id[x]] = faces;
    }
    for (i, l) in links.iter().enumerate() {
        for (j, y) in l.iter().enumerate() {
            below[offsets[i] + j] =
                l.iter().enumerate().filter(|&(a, z)| a != j && z.is_face_of(y)).map(|(a, _)| offsets[i] + a).collect();
        }
    }
    order_complex(&below)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::coxeter_complex;
    use crate::genetics::{saturated_chain, GeneticCode};
    use crate::homology::{betti_oracle, homology};

    fn model_betti(code: &str) -> Result<(Vec<usize>, Vec<usize>)> {
        let g = GeneticCode::parse(code, None).unwrap();
        let m = g.m();
        let chain = saturated_chain(&g).unwrap();
        let steps: Vec<SurgeryStep> = chain.added.iter().map(|&j| SurgeryStep::new(m, j).unwrap()).collect();
        let k = coxeter_complex(m - 1).unwrap();
        let h = homology(&surgery_model(&k, &steps)?).unwrap();
        Ok((h.betti_padded(m - 2), betti_oracle(&g).unwrap()))
    }

    #[test]
    fn single_steps_match_the_oracle() {
        for code in ["<14>", "<15>", "<16>"] {
            let (got, want) = model_betti(code).unwrap();
            assert_eq!(got, want, "{code}");
        }
    }

    #[test]
    fn interference_is_reported() {
        assert!(matches!(model_betti("<26>"), Err(Error::ChainInterference { .. })));
    }

    #[test]
    fn whole_complex_is_not_full() {
        let k = coxeter_complex(3).unwrap();
        let s = SurgeryStep::new(4, crate::Subset::from_elements([1, 2, 4])).unwrap();
        assert_eq!(surgery_model(&k, std::slice::from_ref(&s)).unwrap_err(), Error::NotFull);
    }
}
