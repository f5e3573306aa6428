use serde::Serialize;

use crate::coxeter::{RegularCellComplex, SphereSubcomplex};
use crate::error::{Error, Result};
use crate::posets::SetPartition;
use crate::subset::Subset;

/// One surgery along a saturated chain: the added short set `J`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryStep {
    pub j: Subset,
    /// `|J| - 2`.
    pub index: usize,
    /// Partition of `[m-1]` with the single non-singleton block `J^c`.
    pub sphere_partition: SetPartition,
}

impl SurgeryStep {
    /// Step for the added set `j ⊆ [m]`, which must contain `m`.
    pub fn new(m: usize, j: Subset) -> Result<Self> {
        if !j.contains(m) || !j.is_subset_of(Subset::full(m)) {
            return Err(Error::InvalidCode(format!("added set {j} must be a subset of [{m}] containing {m}")));
        }
        if j.len() < 2 {
            return Err(Error::InvalidCode(format!("added set {j} has fewer than two elements")));
        }
        let p = j.complement(m);
        if p.is_empty() {
            return Err(Error::InvalidCode(format!("added set {j} has empty complement")));
        }
        let sphere_partition = SetPartition::with_block(m - 1, p)?;
        Ok(SurgeryStep { j, index: j.len() - 2, sphere_partition })
    }

    /// `m`, the largest element of `J`.
    pub fn m(&self) -> usize {
        self.sphere_partition.n() + 1
    }

    /// `P = J^c`, the block kept together on the sphere.
    pub fn block(&self) -> Subset {
        self.j.complement(self.m())
    }

    /// `J \ {m}`: the rest of the ambient ground set.
    pub fn merged(&self) -> Subset {
        self.j.without(self.m())
    }

    /// Dimension of the sphere `S_{J^c}` inside `CA_{m-2}`.
    pub fn sphere_dim(&self) -> isize {
        self.sphere_partition.num_blocks() as isize - 2
    }
}

/// Cells not in `sphere` whose closure meets it.
pub fn adjacency(k: &RegularCellComplex, sphere: &SphereSubcomplex) -> Vec<usize> {
    let mut in_s = vec![false; k.len()];
    for &c in &sphere.cells {
        in_s[c] = true;
    }
    let out: Vec<usize> = (0..k.len())
        .filter(|&c| !in_s[c] && k.closure(&[c]).iter().any(|&f| in_s[f]))
        .collect();
    if cfg!(debug_assertions) {
        // interval criterion on Coxeter labels: the run of blocks from the
        // first to the last one meeting the sphere block is not everything
        for (c, cell) in k.cells().iter().enumerate() {
            let crate::coxeter::CellLabel::Ordered(p) = &cell.label else { continue };
            let quick = !in_s[c]
                && sphere.partition.nontrivial_blocks().iter().all(|&b| {
                    let hits: Vec<usize> =
                        (0..p.len()).filter(|&i| !p.blocks()[i].is_disjoint(b)).collect();
                    hits.len() > 1 && hits.last().unwrap() - hits[0] + 1 < p.len()
                });
            if sphere.partition.nontrivial_blocks().len() == 1 {
                debug_assert_eq!(quick, out.binary_search(&c).is_ok(), "interval criterion at {}", cell.label);
            }
        }
    }
    out
}

/// Checks that `cells` form an embedded sphere of dimension 0 or 1:
/// a closed subcomplex that is two points or a single simple cycle.
pub fn check_embedded_sphere(k: &RegularCellComplex, cells: &[usize], dim: usize) -> std::result::Result<(), String> {
    if k.closure(cells) != cells {
        return Err("cells do not form a subcomplex".into());
    }
    let verts: Vec<usize> = cells.iter().copied().filter(|&c| k.cell(c).dim == 0).collect();
    let edges: Vec<usize> = cells.iter().copied().filter(|&c| k.cell(c).dim == 1).collect();
    if cells.iter().any(|&c| k.cell(c).dim > dim) {
        return Err(format!("sphere of dimension {dim} contains higher cells"));
    }
    match dim {
        0 if verts.len() == 2 => Ok(()),
        0 => Err(format!("expected 2 points, found {}", verts.len())),
        1 => {
            if verts.len() != edges.len() || verts.len() < 2 {
                return Err(format!("{} vertices and {} edges do not form a cycle", verts.len(), edges.len()));
            }
            let mut degree = std::collections::HashMap::new();
            for &e in &edges {
                for &v in &k.cell(e).facets {
                    *degree.entry(v).or_insert(0) += 1;
                }
            }
            if verts.iter().any(|v| degree.get(v) != Some(&2)) {
                return Err("some vertex does not have degree 2".into());
            }
            // connected: walk from the first vertex
            let mut seen = vec![verts[0]];
            let mut frontier = vec![verts[0]];
            while let Some(v) = frontier.pop() {
                for &e in &edges {
                    let f = &k.cell(e).facets;
                    if f.contains(&v) {
                        for &w in f {
                            if !seen.contains(&w) {
                                seen.push(w);
                                frontier.push(w);
                            }
                        }
                    }
                }
            }
            if seen.len() == verts.len() {
                Ok(())
            } else {
                Err("cycle is not connected".into())
            }
        }
        _ => Err(format!("spheres of dimension {dim} are not handled")),
    }
}
