use crate::coxeter::RegularCellComplex;
use crate::error::{Error, Result};

/// Largest simplex count accepted by the homology engine.
pub const MAX_SIMPLICES: usize = 2_000_000;

/// A simplicial complex with every simplex stored, grouped by dimension.
///
/// Simplices are sorted vertex-id lists; each dimension is sorted so faces
/// can be found by binary search. Vertex ids double as the global vertex order
/// used for orientations.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    num_vertices: usize,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of the given faces on vertices `0..num_vertices`.
    pub fn from_faces(num_vertices: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut total = 0usize;
        for f in faces {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if let Some(&v) = f.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::Parse(format!("vertex {v} out of range")));
            }
            let k = f.len();
            // all nonempty subsets
            for mask in 1u64..(1u64 << k) {
                let s: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let d = s.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize(d + 1, Vec::new());
                }
                by_dim[d].push(s);
                total += 1;
                if total > 4 * MAX_SIMPLICES {
                    return Err(Error::TooLarge(format!("more than {MAX_SIMPLICES} simplices")));
                }
            }
        }
        for v in 0..num_vertices {
            if by_dim.is_empty() {
                by_dim.push(Vec::new());
            }
            by_dim[0].push(vec![v]);
        }
        Self::from_all(num_vertices, by_dim)
    }

    fn from_all(num_vertices: usize, mut by_dim: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        for level in &mut by_dim {
            level.sort_unstable();
            level.dedup();
        }
        while by_dim.last().is_some_and(|l| l.is_empty()) {
            by_dim.pop();
        }
        let out = SimplicialComplex { num_vertices, simplices: by_dim };
        if out.len() > MAX_SIMPLICES {
            return Err(Error::TooLarge(format!("{} simplices (limit {MAX_SIMPLICES})", out.len())));
        }
        Ok(out)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.simplices.iter().map(|l| l.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    /// Position of a sorted simplex within its dimension.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.simplices.get(s.len().checked_sub(1)?)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(|l| l.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Every face of every stored simplex is stored.
    pub fn audit_closure(&self) -> Result<()> {
        for (d, level) in self.simplices.iter().enumerate().skip(1) {
            for s in level {
                for i in 0..=d {
                    let mut f = s.clone();
                    f.remove(i);
                    if self.index_of(&f).is_none() {
                        return Err(Error::Audit(format!("face {f:?} of {s:?} missing")));
                    }
                }
            }
        }
        if self.simplices.first().is_some_and(|l| l.iter().any(|v| v[0] >= self.num_vertices)) {
            return Err(Error::Audit("vertex out of range".into()));
        }
        Ok(())
    }

    /// Order complex of the face poset of this complex.
    pub fn subdivide(&self) -> Result<SimplicialComplex> {
        let all: Vec<&Vec<usize>> = self.simplices.iter().flatten().collect();
        let proper_faces: Vec<Vec<usize>> = all
            .iter()
            .map(|s| {
                let k = s.len();
                (1u64..(1u64 << k) - 1)
                    .map(|mask| {
                        let f: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                        let d = f.len() - 1;
                        let offset: usize = self.simplices[..d].iter().map(|l| l.len()).sum();
                        offset + self.index_of(&f).expect("closed complex")
                    })
                    .collect()
            })
            .collect();
        order_complex(&proper_faces)
    }
}

/// Chains of a finite poset given as the list of strictly smaller elements of
/// each element. Vertex `i` of the result is element `i`.
pub fn order_complex(proper_faces: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let n = proper_faces.len();
    // chain counts first, to fail fast on oversized inputs
    let mut count = vec![0u64; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| proper_faces[i].len());
    for &c in &order {
        count[c] = 1 + proper_faces[c].iter().map(|&f| count[f]).sum::<u64>();
    }
    let total: u64 = count.iter().sum();
    if total > MAX_SIMPLICES as u64 {
        return Err(Error::TooLarge(format!("{total} simplices (limit {MAX_SIMPLICES})")));
    }
    let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk(c: usize, faces: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        stack.push(c);
        let mut s = stack.clone();
        s.sort_unstable();
        let d = s.len() - 1;
        if out.len() <= d {
            out.resize(d + 1, Vec::new());
        }
        out[d].push(s);
        for &f in &faces[c] {
            walk(f, faces, stack, out);
        }
        stack.pop();
    }
    // a chain is enumerated once, from its top element downwards through
    // proper faces of the current bottom
    for c in 0..n {
        walk(c, proper_faces, &mut stack, &mut by_dim);
    }
    SimplicialComplex::from_all(n, by_dim)
}

/// Barycentric subdivision of a regular cell complex: vertices are cells,
/// simplices are chains of the face poset.
pub fn barycentric(k: &RegularCellComplex) -> Result<SimplicialComplex> {
    let proper: Vec<Vec<usize>> = (0..k.len())
        .map(|i| k.closure(&[i]).into_iter().filter(|&j| j != i).collect())
        .collect();
    order_complex(&proper)
}
