use std::fmt;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite poset with its Hasse diagram, order relation and rank function.
///
/// Ranks are longest-chain lengths from a minimal element; the poset is
/// graded when every cover raises the rank by exactly one.
#[derive(Clone)]
pub struct FinitePoset<L> {
    labels: Vec<L>,
    // below[b] = { a : a <= b }, above[a] = { b : a <= b }
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    rank: Vec<usize>,
    graded: bool,
}

impl<L> FinitePoset<L> {
    /// Builds a poset from labels and a relation, checking that the relation
    /// is a partial order.
    pub fn from_leq(labels: Vec<L>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (b, row) in below.iter_mut().enumerate() {
            for a in 0..n {
                if a == b || leq(a, b) {
                    row.insert(a);
                }
            }
        }
        Self::from_below(labels, below)
    }

    fn from_below(labels: Vec<L>, below: Vec<FixedBitSet>) -> Result<Self> {
        let n = labels.len();
        for b in 0..n {
            for a in below[b].ones() {
                if a != b && below[a].contains(b) {
                    return Err(Error::Audit(format!("relation not antisymmetric at {a}, {b}")));
                }
                if !below[a].is_subset(&below[b]) {
                    return Err(Error::Audit(format!("relation not transitive through {a}")));
                }
            }
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (b, row) in below.iter().enumerate() {
            for a in row.ones() {
                above[a].insert(b);
            }
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for b in 0..n {
            for a in below[b].ones() {
                if a == b {
                    continue;
                }
                // a ⋖ b iff nothing sits strictly between
                let between = above[a].intersection(&below[b]).count();
                if between == 2 {
                    up[a].push(b);
                    down[b].push(a);
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| below[i].count_ones(..));
        let mut rank = vec![0; n];
        for &b in &order {
            rank[b] = down[b].iter().map(|&a| rank[a] + 1).max().unwrap_or(0);
        }
        let graded = (0..n).all(|b| down[b].iter().all(|&a| rank[a] + 1 == rank[b]));
        Ok(FinitePoset { labels, below, above, up, down, rank, graded })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Elements covering `a`.
    pub fn up_covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    /// Elements covered by `a`.
    pub fn down_covers(&self, a: usize) -> &[usize] {
        &self.down[a]
    }

    /// All cover pairs `(a, b)` with `a ⋖ b`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|a| self.up[a].iter().map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn max_rank(&self) -> usize {
        self.rank.iter().copied().max().unwrap_or(0)
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// `{ a : a <= x }` in index order.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        self.below[x].ones().collect()
    }

    /// `{ b : x <= b }` in index order.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        self.above[x].ones().collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    /// The unique minimum, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    fn extremum(&self, common: &FixedBitSet, toward: &[FixedBitSet]) -> Option<usize> {
        let k = common.count_ones(..);
        common.ones().find(|&c| toward[c].count_ones(..) >= k && common.is_subset(&toward[c]))
    }

    /// Greatest lower bound of `a` and `b`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let common = self.below[a].intersection(&self.below[b]).collect::<FixedBitSet>();
        self.extremum(&common, &self.below)
    }

    /// Least upper bound of `a` and `b`, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let common = self.above[a].intersection(&self.above[b]).collect::<FixedBitSet>();
        self.extremum(&common, &self.above)
    }

    /// First pair without a meet, if any.
    pub fn meet_failure(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.meet(a, b).is_none())
    }

    pub fn is_meet_semilattice(&self) -> bool {
        self.meet_failure().is_none()
    }

    /// Errors with `NOT_MEET_SEMILATTICE` naming the first offending pair.
    pub fn ensure_meet_semilattice(&self) -> Result<()>
    where
        L: fmt::Display,
    {
        match self.meet_failure() {
            None => Ok(()),
            Some((a, b)) => Err(Error::NotMeetSemilattice(format!(
                "{} and {} have no meet",
                self.labels[a], self.labels[b]
            ))),
        }
    }

    /// Induced subposet on `elems` (in the given order).
    pub fn restrict(&self, elems: &[usize]) -> FinitePoset<L>
    where
        L: Clone,
    {
        let labels = elems.iter().map(|&i| self.labels[i].clone()).collect();
        FinitePoset::from_leq(labels, |a, b| self.leq(elems[a], elems[b]))
            .expect("induced subposets are posets")
    }

    /// Relabels every element.
    pub fn map_labels<M>(&self, f: impl Fn(&L) -> M) -> FinitePoset<M> {
        FinitePoset {
            labels: self.labels.iter().map(f).collect(),
            below: self.below.clone(),
            above: self.above.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
            rank: self.rank.clone(),
            graded: self.graded,
        }
    }

    /// Cartesian product with the componentwise order.
    pub fn product<M>(&self, other: &FinitePoset<M>) -> FinitePoset<(L, M)>
    where
        L: Clone,
        M: Clone,
    {
        let k = other.len();
        let labels = (0..self.len())
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| (self.labels[i].clone(), other.labels[j].clone()))
            .collect();
        FinitePoset::from_leq(labels, |a, b| {
            self.leq(a / k, b / k) && other.leq(a % k, b % k)
        })
        .expect("products of posets are posets")
    }
}

impl<L: fmt::Display> FinitePoset<L> {
    /// Graphviz rendering of the Hasse diagram, bottom to top. Elements for
    /// which `dashed` holds are drawn with a dashed outline.
    pub fn to_dot(&self, name: &str, dashed: impl Fn(&L) -> bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{name}\" {{");
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let style = if dashed(l) { ", style=dashed" } else { "" };
            let _ = writeln!(s, "  n{i} [label=\"{l}\"{style}];");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.iter().map(|l| l.to_string()).collect(),
            covers: self.covers(),
            ranks: self.rank.clone(),
        }
    }
}

impl<L: fmt::Display> fmt::Debug for FinitePoset<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("elements", &self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>())
            .field("covers", &self.covers())
            .finish()
    }
}

/// JSON form `{elements, covers, ranks}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
    pub ranks: Vec<usize>,
}

impl PosetJson {
    /// Rebuilds a string-labelled poset from its cover relation.
    pub fn to_poset(&self) -> Result<FinitePoset<String>> {
        let n = self.elements.len();
        if let Some(&(a, b)) = self.covers.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::Parse(format!("cover ({a},{b}) out of range")));
        }
        // transitive closure by DFS along covers
        let mut up = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            up[a].push(b);
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            let mut stack = vec![a];
            let mut seen = FixedBitSet::with_capacity(n);
            while let Some(x) = stack.pop() {
                if seen.put(x) {
                    continue;
                }
                below[x].insert(a);
                stack.extend(&up[x]);
            }
        }
        FinitePoset::from_below(self.elements.clone(), below)
            .map_err(|e| Error::Parse(format!("covers do not define a poset: {e}")))
    }
}
