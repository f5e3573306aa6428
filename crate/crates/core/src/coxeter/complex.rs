use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ordered::OrderedPartition;
use crate::error::{Error, Result};
use crate::subset::Subset;

/// What a cell remembers about where it came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellLabel {
    /// A cell of a Coxeter complex.
    Ordered(OrderedPartition),
    /// A cell that lost some corners to truncation.
    Truncated(Box<CellLabel>),
    /// A new boundary cell created when truncating the given cell.
    Cut(Box<CellLabel>),
    /// A cell of the attached or collapsed interface. `link` is the matching
    /// cell of the link, `None` for caps.
    Interface { merged: Subset, link: Option<OrderedPartition> },
    ConePoint,
    Cone(Box<CellLabel>),
    Product(Box<CellLabel>, Box<CellLabel>),
    /// An orbit `{c, τc}` of the involution.
    Quotient(Box<CellLabel>, Box<CellLabel>),
    /// Opaque label read back from JSON.
    Text(String),
}

impl CellLabel {
    /// The ordered partition of the nearest Coxeter ancestor, looking through
    /// truncations and cuts.
    pub fn ancestor(&self) -> Option<&OrderedPartition> {
        match self {
            CellLabel::Ordered(p) => Some(p),
            CellLabel::Truncated(l) | CellLabel::Cut(l) => l.ancestor(),
            _ => None,
        }
    }

    /// Whether `s` lies in one block of this cell's stratum.
    ///
    /// Truncated and cut cells answer for their parent. Interface cells know
    /// the merged block and the link cell on the rest of the ground set;
    /// a set meeting both sides is never together there.
    pub fn has_together(&self, s: Subset) -> bool {
        match self {
            CellLabel::Ordered(p) => p.has_together(s),
            CellLabel::Truncated(l) | CellLabel::Cut(l) => l.has_together(s),
            CellLabel::Interface { merged, link } => {
                if s.is_subset_of(*merged) {
                    return true;
                }
                match link {
                    Some(l) if s.is_subset_of(l.ground()) => l.has_together(s),
                    _ => false,
                }
            }
            _ => false,
        }
    }

    /// Parses the canonical string of an ordered partition, otherwise keeps
    /// the text verbatim.
    pub fn parse(text: &str) -> CellLabel {
        match OrderedPartition::parse(text) {
            Ok(p) if p.len() >= 2 => CellLabel::Ordered(p),
            _ => CellLabel::Text(text.to_string()),
        }
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Ordered(p) => write!(f, "{p}"),
            CellLabel::Truncated(l) => write!(f, "trunc({l})"),
            CellLabel::Cut(l) => write!(f, "cut({l})"),
            CellLabel::Interface { merged, link: Some(l) } => write!(f, "iface[{}]({l})", merged.compact()),
            CellLabel::Interface { merged, link: None } => write!(f, "cap[{}]", merged.compact()),
            CellLabel::ConePoint => write!(f, "apex"),
            CellLabel::Cone(l) => write!(f, "cone({l})"),
            CellLabel::Product(a, b) => write!(f, "({a})x({b})"),
            CellLabel::Quotient(a, b) => write!(f, "{{{a}~{b}}}"),
            CellLabel::Text(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub label: CellLabel,
    pub facets: Vec<usize>,
}

/// A regular CW complex stored as its face poset: every cell lists its
/// codimension-one faces.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RegularCellComplex {
    cells: Vec<Cell>,
    ground: Option<Subset>,
    involution: Option<Vec<usize>>,
}

impl RegularCellComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_ground(ground: Subset) -> Self {
        RegularCellComplex { ground: Some(ground), ..Self::default() }
    }

    /// Appends a cell; facets must already exist and have dimension `dim - 1`.
    pub fn push(&mut self, dim: usize, label: CellLabel, facets: Vec<usize>) -> usize {
        debug_assert!(facets.iter().all(|&f| f < self.cells.len() && self.cells[f].dim + 1 == dim));
        self.cells.push(Cell { dim, label, facets });
        self.cells.len() - 1
    }

    pub fn set_involution(&mut self, tau: Vec<usize>) {
        self.involution = Some(tau);
    }

    pub fn involution(&self) -> Option<&[usize]> {
        self.involution.as_deref()
    }

    pub fn ground(&self) -> Option<Subset> {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    /// Largest cell dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            f[c.dim] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Histogram of facet counts among cells of dimension `dim`
    /// (for 2-cells: triangles, squares, ...).
    pub fn shape_histogram(&self, dim: usize) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in self.cells.iter().filter(|c| c.dim == dim) {
            *h.entry(c.facets.len()).or_insert(0) += 1;
        }
        h
    }

    /// `cofacets[i]`: cells having `i` as a facet.
    pub fn cofacets(&self) -> Vec<Vec<usize>> {
        let mut up = vec![Vec::new(); self.len()];
        for (i, c) in self.cells.iter().enumerate() {
            for &f in &c.facets {
                up[f].push(i);
            }
        }
        up
    }

    /// All faces of the given cells, including themselves, sorted.
    pub fn closure(&self, ids: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = ids.to_vec();
        while let Some(c) = stack.pop() {
            if !seen[c] {
                seen[c] = true;
                stack.extend(&self.cells[c].facets);
            }
        }
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    /// Cells whose closure contains `id` (including `id`), sorted.
    pub fn star(&self, id: usize) -> Vec<usize> {
        let up = self.cofacets();
        let mut seen = vec![false; self.len()];
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            if !seen[c] {
                seen[c] = true;
                stack.extend(&up[c]);
            }
        }
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    /// Regular-CW audit: facet dimensions, boundary of every edge is two
    /// vertices, and every codimension-two face of a cell lies in exactly two
    /// of its facets. Also checks the involution when present.
    pub fn audit(&self) -> Result<()> {
        for (i, c) in self.cells.iter().enumerate() {
            if c.facets.iter().any(|&f| f >= self.len() || self.cells[f].dim + 1 != c.dim) {
                return Err(Error::Audit(format!("cell {i} ({}) has a facet of wrong dimension", c.label)));
            }
            let mut fs = c.facets.clone();
            fs.sort_unstable();
            fs.dedup();
            if fs.len() != c.facets.len() {
                return Err(Error::Audit(format!("cell {i} ({}) repeats a facet", c.label)));
            }
            match c.dim {
                0 => {}
                1 if c.facets.len() != 2 => {
                    return Err(Error::Audit(format!("edge {i} ({}) has {} endpoints", c.label, c.facets.len())));
                }
                1 => {}
                _ => {
                    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
                    for &f in &c.facets {
                        for &g in &self.cells[f].facets {
                            *count.entry(g).or_insert(0) += 1;
                        }
                    }
                    if let Some((g, k)) = count.iter().find(|(_, &k)| k != 2) {
                        return Err(Error::Audit(format!(
                            "diamond fails in cell {i} ({}): face {g} lies in {k} facets",
                            c.label
                        )));
                    }
                }
            }
        }
        if let Some(tau) = &self.involution {
            self.audit_involution(tau)?;
        }
        Ok(())
    }

    fn audit_involution(&self, tau: &[usize]) -> Result<()> {
        if tau.len() != self.len() {
            return Err(Error::Audit("involution has wrong length".into()));
        }
        for (i, c) in self.cells.iter().enumerate() {
            let t = tau[i];
            if t >= self.len() || tau[t] != i {
                return Err(Error::Audit(format!("involution is not an involution at {i}")));
            }
            if t == i {
                return Err(Error::FixedCell(i));
            }
            let mut a: Vec<usize> = c.facets.iter().map(|&f| tau[f]).collect();
            let mut b = self.cells[t].facets.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b || self.cells[t].dim != c.dim {
                return Err(Error::Audit(format!("involution does not preserve faces of cell {i}")));
            }
        }
        Ok(())
    }

    /// Materializes a downward-closed set of cells. Returns the complex and
    /// the old id of every new cell.
    pub fn induced(&self, ids: &[usize]) -> Result<(RegularCellComplex, Vec<usize>)> {
        let mut ids = ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut new_id = vec![usize::MAX; self.len()];
        for (k, &i) in ids.iter().enumerate() {
            new_id[i] = k;
        }
        let mut out = RegularCellComplex { ground: self.ground, ..Self::default() };
        for &i in &ids {
            let c = &self.cells[i];
            let facets = c
                .facets
                .iter()
                .map(|&f| match new_id[f] {
                    usize::MAX => Err(Error::Audit(format!("subcomplex is not closed at cell {i}"))),
                    k => Ok(k),
                })
                .collect::<Result<Vec<_>>>()?;
            out.cells.push(Cell { dim: c.dim, label: c.label.clone(), facets });
        }
        if let Some(tau) = &self.involution {
            if ids.iter().all(|&i| new_id[tau[i]] != usize::MAX) {
                out.involution = Some(ids.iter().map(|&i| new_id[tau[i]]).collect());
            }
        }
        Ok((out, ids))
    }

    /// Quotient by the free involution: one cell per orbit.
    pub fn projective_quotient(&self) -> Result<RegularCellComplex> {
        let tau = self
            .involution
            .as_ref()
            .ok_or_else(|| Error::NotApplicable("complex carries no involution".into()))?;
        if let Some(i) = (0..self.len()).find(|&i| tau[i] == i) {
            return Err(Error::FixedCell(i));
        }
        self.audit_involution(tau)?;
        let reps: Vec<usize> = (0..self.len()).filter(|&i| i < tau[i]).collect();
        let mut orbit = vec![0; self.len()];
        for (k, &r) in reps.iter().enumerate() {
            orbit[r] = k;
            orbit[tau[r]] = k;
        }
        let mut out = RegularCellComplex { ground: self.ground, ..Self::default() };
        for &r in &reps {
            let c = &self.cells[r];
            let mut facets: Vec<usize> = c.facets.iter().map(|&f| orbit[f]).collect();
            facets.sort_unstable();
            if facets.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Audit(format!("cell {r} meets its own image; quotient not regular")));
            }
            let label = CellLabel::Quotient(Box::new(c.label.clone()), Box::new(self.cells[tau[r]].label.clone()));
            out.cells.push(Cell { dim: c.dim, label, facets });
        }
        Ok(out)
    }

    /// The link of `sigma`: cells strictly above it, dimensions shifted down
    /// by `dim(sigma) + 1`.
    pub fn link(&self, sigma: usize) -> RegularCellComplex {
        let star = self.star(sigma);
        let above: Vec<usize> = star.into_iter().filter(|&i| i != sigma).collect();
        let mut new_id = vec![usize::MAX; self.len()];
        for (k, &i) in above.iter().enumerate() {
            new_id[i] = k;
        }
        let shift = self.cells[sigma].dim + 1;
        let mut out = RegularCellComplex::new();
        for &i in &above {
            let c = &self.cells[i];
            let facets = c.facets.iter().filter(|&&f| new_id[f] != usize::MAX).map(|&f| new_id[f]).collect();
            out.cells.push(Cell { dim: c.dim - shift, label: c.label.clone(), facets });
        }
        out
    }

    /// Cartesian product; cell `(a, b)` has id `a * other.len() + b`.
    pub fn product(&self, other: &RegularCellComplex) -> RegularCellComplex {
        let k = other.len();
        let mut out = RegularCellComplex::new();
        for (ai, a) in self.cells.iter().enumerate() {
            for (j, b) in other.cells.iter().enumerate() {
                let mut facets: Vec<usize> = a.facets.iter().map(|&f| f * k + j).collect();
                facets.extend(b.facets.iter().map(|&g| ai * k + g));
                out.cells.push(Cell {
                    dim: a.dim + b.dim,
                    label: CellLabel::Product(Box::new(a.label.clone()), Box::new(b.label.clone())),
                    facets,
                });
            }
        }
        out
    }

    /// Cone with a new apex: ids `0..n` are the base, `n` the apex and
    /// `n + 1 + i` the cone over cell `i`.
    pub fn cone(&self) -> RegularCellComplex {
        let n = self.len();
        let mut out = RegularCellComplex { cells: self.cells.clone(), ..Self::default() };
        out.cells.push(Cell { dim: 0, label: CellLabel::ConePoint, facets: vec![] });
        for (i, c) in self.cells.iter().enumerate() {
            let mut facets = vec![i];
            if c.dim == 0 {
                facets.push(n);
            }
            facets.extend(c.facets.iter().map(|&f| n + 1 + f));
            out.cells.push(Cell { dim: c.dim + 1, label: CellLabel::Cone(Box::new(c.label.clone())), facets });
        }
        out
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            dim: self.dim().map_or(-1, |d| d as i64),
            cells: self
                .cells
                .iter()
                .enumerate()
                .map(|(id, c)| CellJson { id, dim: c.dim, label: c.label.to_string(), facets: c.facets.clone() })
                .collect(),
        }
    }
}

/// Checks that `map` (cell of `a` -> cell of `b`) is an isomorphism of face posets.
pub fn is_cell_isomorphism(a: &RegularCellComplex, b: &RegularCellComplex, map: &[usize]) -> bool {
    if a.len() != b.len() || map.len() != a.len() {
        return false;
    }
    let mut hit = vec![false; b.len()];
    for (i, &j) in map.iter().enumerate() {
        if j >= b.len() || hit[j] || a.cells[i].dim != b.cells[j].dim {
            return false;
        }
        hit[j] = true;
        let mut x: Vec<usize> = a.cells[i].facets.iter().map(|&f| map[f]).collect();
        let mut y = b.cells[j].facets.clone();
        x.sort_unstable();
        y.sort_unstable();
        if x != y {
            return false;
        }
    }
    true
}

/// JSON interchange `{"dim", "cells": [{"id", "dim", "label", "facets"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub dim: i64,
    pub cells: Vec<CellJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub id: usize,
    pub dim: usize,
    pub label: String,
    pub facets: Vec<usize>,
}

impl ComplexJson {
    /// Rebuilds the complex; ids must be `0..n` in order.
    pub fn to_complex(&self) -> Result<RegularCellComplex> {
        let mut out = RegularCellComplex::new();
        for (k, c) in self.cells.iter().enumerate() {
            if c.id != k {
                return Err(Error::Parse(format!("cell ids must be 0..n in order (found {} at {k})", c.id)));
            }
            out.cells.push(Cell { dim: c.dim, label: CellLabel::parse(&c.label), facets: c.facets.clone() });
        }
        for (k, c) in out.cells.iter().enumerate() {
            if let Some(&f) = c.facets.iter().find(|&&f| f >= out.len() || out.cells[f].dim + 1 != c.dim) {
                return Err(Error::Parse(format!("cell {k} has invalid facet {f}")));
            }
        }
        let dim = out.dim().map_or(-1, |d| d as i64);
        if dim != self.dim {
            return Err(Error::Parse(format!("declared dim {} but cells reach {dim}", self.dim)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> RegularCellComplex {
        let mut k = RegularCellComplex::new();
        let a = k.push(0, CellLabel::Text("a".into()), vec![]);
        let b = k.push(0, CellLabel::Text("b".into()), vec![]);
        k.push(1, CellLabel::Text("ab".into()), vec![a, b]);
        k
    }

    #[test]
    fn cone_of_point_is_interval() {
        let mut p = RegularCellComplex::new();
        p.push(0, CellLabel::Text("p".into()), vec![]);
        let c = p.cone();
        assert_eq!(c.f_vector(), vec![2, 1]);
        c.audit().unwrap();
    }

    #[test]
    fn square_from_product() {
        let sq = interval().product(&interval());
        assert_eq!(sq.f_vector(), vec![4, 4, 1]);
        assert_eq!(sq.euler_characteristic(), 1);
        sq.audit().unwrap();
    }

    #[test]
    fn cones_are_contractible_by_euler() {
        let sq = interval().product(&interval());
        assert_eq!(sq.cone().euler_characteristic(), 1);
        sq.cone().audit().unwrap();
    }

    #[test]
    fn audit_catches_bad_edges() {
        let mut k = RegularCellComplex::new();
        let a = k.push(0, CellLabel::Text("a".into()), vec![]);
        k.push(1, CellLabel::Text("loop".into()), vec![a]);
        assert!(k.audit().is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = interval().product(&interval());
        let j = k.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: ComplexJson = serde_json::from_str(&text).unwrap();
        let k2 = back.to_complex().unwrap();
        assert_eq!(k2.f_vector(), k.f_vector());
        assert_eq!(k2.to_json(), j);
    }

    #[test]
    fn interface_predicate() {
        let l = CellLabel::Interface {
            merged: Subset::from_elements([4]),
            link: Some(OrderedPartition::parse("1|23").unwrap()),
        };
        assert!(l.has_together(Subset::from_elements([2, 3])));
        assert!(!l.has_together(Subset::from_elements([1, 2])));
        assert!(!l.has_together(Subset::from_elements([3, 4])));
        let cap = CellLabel::Interface { merged: Subset::from_elements([1, 2]), link: None };
        assert!(cap.has_together(Subset::from_elements([1, 2])));
        let t = CellLabel::Truncated(Box::new(CellLabel::Ordered(OrderedPartition::parse("1|234").unwrap())));
        assert!(t.has_together(Subset::from_elements([2, 4])));
        assert_eq!(t.ancestor().unwrap().to_string(), "1|234");
    }
}
