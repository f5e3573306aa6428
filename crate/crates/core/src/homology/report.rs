use serde::{Deserialize, Serialize};

use super::simplicial::SimplicialComplex;
use super::snf::{smith_summary, torsion_to_u64, SparseMatrix};
use crate::error::{Error, Result};

/// Integral homology of a simplicial complex.
///
/// `orientable` is `None` when the complex fails the pseudo-manifold audit
/// (some codimension-one simplex does not have exactly two cofaces).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
    pub components: usize,
    pub orientable: Option<bool>,
    /// Per-component reports, present only when there are several components.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<HomologyReport>,
}

impl HomologyReport {
    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(|t| t.is_empty())
    }

    /// Betti numbers padded with zeros to `len` entries (for comparisons).
    pub fn betti_padded(&self, len: usize) -> Vec<usize> {
        let mut b = self.betti.clone();
        b.resize(len.max(b.len()), 0);
        b
    }
}

fn boundary(s: &SimplicialComplex, d: usize) -> SparseMatrix {
    let rows = s.simplices(d - 1).len();
    let cols = s
        .simplices(d)
        .iter()
        .map(|simplex| {
            let mut col: Vec<(usize, i64)> = (0..=d)
                .map(|i| {
                    let mut f = simplex.clone();
                    f.remove(i);
                    let r = s.index_of(&f).expect("complex is closed");
                    (r, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    SparseMatrix { rows, cols }
}

fn connected_components(s: &SimplicialComplex) -> Vec<usize> {
    let n = s.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for e in s.simplices(1) {
        let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

fn is_pseudomanifold(s: &SimplicialComplex) -> bool {
    let Some(d) = s.dim() else { return false };
    if d == 0 {
        return false;
    }
    let mut cofaces = vec![0u32; s.simplices(d - 1).len()];
    for simplex in s.simplices(d) {
        for i in 0..=d {
            let mut f = simplex.clone();
            f.remove(i);
            cofaces[s.index_of(&f).expect("closed")] += 1;
        }
    }
    // pure: every lower simplex lies in some top simplex
    let pure = (0..d).all(|k| {
        let mut covered = vec![false; s.simplices(k).len()];
        for simplex in s.simplices(k + 1) {
            for i in 0..=k + 1 {
                let mut f = simplex.clone();
                f.remove(i);
                covered[s.index_of(&f).expect("closed")] = true;
            }
        }
        covered.iter().all(|&c| c)
    });
    pure && cofaces.iter().all(|&c| c == 2)
}

fn homology_connected_parts(s: &SimplicialComplex) -> Result<HomologyReport> {
    let Some(dim) = s.dim() else {
        return Ok(HomologyReport { betti: vec![], torsion: vec![], components: 0, orientable: None, parts: vec![] });
    };
    let smith: Vec<_> = (1..=dim).map(|d| smith_summary(&boundary(s, d))).collect();
    let rank = |d: usize| if d == 0 || d > dim { 0 } else { smith[d - 1].rank };
    let betti: Vec<usize> = (0..=dim).map(|d| s.simplices(d).len() - rank(d) - rank(d + 1)).collect();
    let torsion: Vec<Vec<u64>> =
        (0..=dim).map(|d| if d < dim { torsion_to_u64(&smith[d].torsion) } else { vec![] }).collect();
    let roots = connected_components(s);
    let mut distinct = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let components = distinct.len();
    if betti[0] != components {
        return Err(Error::Audit(format!("H_0 rank {} but {components} components", betti[0])));
    }
    let orientable = is_pseudomanifold(s).then(|| betti[dim] == components);
    Ok(HomologyReport { betti, torsion, components, orientable, parts: vec![] })
}

/// Integral homology via exact Smith normal form of the boundary matrices.
pub fn homology(s: &SimplicialComplex) -> Result<HomologyReport> {
    let mut report = homology_connected_parts(s)?;
    if report.components > 1 {
        let roots = connected_components(s);
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        for r in distinct {
            let keep: Vec<usize> = (0..s.num_vertices()).filter(|&v| roots[v] == r).collect();
            let mut new_id = vec![usize::MAX; s.num_vertices()];
            for (k, &v) in keep.iter().enumerate() {
                new_id[v] = k;
            }
            let faces: Vec<Vec<usize>> = (0..=s.dim().unwrap_or(0))
                .flat_map(|d| s.simplices(d).iter())
                .filter(|simplex| new_id[simplex[0]] != usize::MAX)
                .map(|simplex| simplex.iter().map(|&v| new_id[v]).collect())
                .collect();
            let part = SimplicialComplex::from_faces(keep.len(), &faces)?;
            report.parts.push(homology_connected_parts(&part)?);
        }
    }
    Ok(report)
}

/// Name of a small space recognized from its homology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Identification {
    /// Compact name such as `"T²"`, `"N_5"` or `"T² ⊔ T²"`.
    pub name: String,
    /// Longer description such as `"connected sum of 5 copies of ℝP²"`.
    pub description: String,
}

fn name_surface(part: &HomologyReport) -> Option<(String, String)> {
    let chi = part.euler_characteristic();
    let b = part.betti_padded(3);
    let t1 = part.torsion.get(1).cloned().unwrap_or_default();
    match part.orientable? {
        true => {
            let g = (2 - chi) / 2;
            if b[0] != 1 || b[2] != 1 || chi > 2 || (2 - chi) % 2 != 0 || b[1] as i64 != 2 * g || !t1.is_empty() {
                return None;
            }
            Some(match g {
                0 => ("S²".into(), "sphere".into()),
                1 => ("T²".into(), "torus".into()),
                _ => (format!("T_{g}"), format!("orientable surface of genus {g}")),
            })
        }
        false => {
            let k = 2 - chi;
            if b[0] != 1 || b[2] != 0 || k < 1 || b[1] as i64 != k - 1 || t1 != [2] {
                return None;
            }
            Some(match k {
                1 => ("ℝP²".into(), "real projective plane".into()),
                2 => ("N_2".into(), "Klein bottle".into()),
                _ => (format!("N_{k}"), format!("connected sum of {k} copies of ℝP²")),
            })
        }
    }
}

/// Recognizes points, circles and closed surfaces from homology.
pub fn identify_small(h: &HomologyReport, dim: usize) -> Result<Identification> {
    let unrecognized = || Error::Unrecognized(serde_json::to_string(h).unwrap_or_default());
    let parts: Vec<&HomologyReport> = if h.parts.is_empty() { vec![h] } else { h.parts.iter().collect() };
    let plural = |n: usize, one: &str, many: &str| if n == 1 { one.to_string() } else { format!("{n} {many}") };
    match dim {
        0 => {
            if h.betti.len() > 1 && h.betti[1..].iter().any(|&b| b > 0) {
                return Err(unrecognized());
            }
            let n = h.components;
            Ok(Identification { name: plural(n, "point", "points"), description: plural(n, "a point", "points") })
        }
        1 => {
            if parts.iter().any(|p| p.betti_padded(2)[..2] != [1, 1] || !p.is_torsion_free()) {
                return Err(unrecognized());
            }
            let n = h.components;
            Ok(Identification { name: plural(n, "S¹", "circles"), description: plural(n, "circle", "circles") })
        }
        2 => {
            let named: Vec<(String, String)> =
                parts.iter().map(|p| name_surface(p)).collect::<Option<_>>().ok_or_else(unrecognized)?;
            let name = named.iter().map(|n| n.0.as_str()).collect::<Vec<_>>().join(" ⊔ ");
            let description = if named.len() > 1 && named.iter().all(|n| n.1 == named[0].1) {
                format!("disjoint union of {} copies of the {}", named.len(), named[0].1)
            } else {
                named.iter().map(|n| n.1.as_str()).collect::<Vec<_>>().join(" ⊔ ")
            };
            Ok(Identification { name, description })
        }
        _ => Err(unrecognized()),
    }
}
