use std::fmt;

use serde::{Deserialize, Serialize};

use super::length::{LengthVector, MAX_LENGTH_SIDES};
use crate::error::{Error, Result};
use crate::subset::Subset;

/// `I ≤ J`: `|I| <= |J|` and the s-th largest element of `I` is at most the
/// s-th largest element of `J` for every `s`.
///
/// Matching the largest elements greedily is equivalent to asking for some
/// `|I|`-subset of `J` that bounds `I` elementwise.
pub fn dominates(i: Subset, j: Subset) -> bool {
    if i.len() > j.len() {
        return false;
    }
    let a = i.descending();
    let b = j.descending();
    a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// Antichain of `≤`-maximal short subsets containing `m`.
///
/// Construction only checks shape (genes contain `m`, lie in `[m]`); the
/// antichain, singleton and complement conditions are reported by
/// [`GeneticCode::validate`] and enforced by [`GeneticCode::ensure_valid`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneticCode {
    m: usize,
    genes: Vec<Subset>,
}

/// Outcome of [`GeneticCode::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub valid: bool,
    /// Pairs `(a, b)` of genes with `a ≤ b`.
    pub comparable: Vec<(Subset, Subset)>,
    /// Elements `i` whose singleton is long in the generated system.
    pub long_singletons: Vec<usize>,
    /// Sets that are short together with their complement.
    pub complement_violations: Vec<Subset>,
}

impl GeneticCode {
    pub fn new(m: usize, genes: impl IntoIterator<Item = Subset>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidCode("m must be positive".into()));
        }
        if m > MAX_LENGTH_SIDES {
            return Err(Error::GroundSetTooLarge { size: m, max: MAX_LENGTH_SIDES });
        }
        let mut genes: Vec<Subset> = genes.into_iter().collect();
        for g in &genes {
            if !g.contains(m) {
                return Err(Error::InvalidCode(format!("gene {g} does not contain {m}")));
            }
            if !g.is_subset_of(Subset::full(m)) {
                return Err(Error::InvalidCode(format!("gene {g} is not a subset of [{m}]")));
            }
        }
        genes.sort_by_key(|g| g.to_vec());
        genes.dedup();
        Ok(GeneticCode { m, genes })
    }

    /// Like [`GeneticCode::new`] but also requires [`GeneticCode::validate`] to pass.
    pub fn new_valid(m: usize, genes: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let g = Self::new(m, genes)?;
        g.ensure_valid()?;
        Ok(g)
    }

    /// Convenience for tests and examples: genes as element lists.
    pub fn from_lists(m: usize, genes: &[&[usize]]) -> Result<Self> {
        Self::new(m, genes.iter().map(|g| Subset::from_elements(g.iter().copied())))
    }

    /// The code `⟨m⟩`.
    pub fn trivial(m: usize) -> Self {
        GeneticCode { m, genes: vec![Subset::singleton(m)] }
    }

    /// The maximal elements of a collection of sets containing `m`.
    pub fn from_sets_containing_m(m: usize, sets: &[Subset]) -> Result<Self> {
        let maxima: Vec<Subset> = sets
            .iter()
            .copied()
            .filter(|&a| !sets.iter().any(|&b| b != a && dominates(a, b)))
            .collect();
        Self::new(m, maxima)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Genes sorted lexicographically by their increasing element lists.
    pub fn genes(&self) -> &[Subset] {
        &self.genes
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    /// Short under the membership rule: a set containing `m` is short iff some
    /// gene dominates it; any other set is short iff its complement is long.
    pub fn is_short(&self, s: Subset) -> bool {
        if s.contains(self.m) {
            self.genes.iter().any(|&g| dominates(s, g))
        } else {
            !self.is_short(s.complement(self.m))
        }
    }

    pub fn short_system(&self) -> ShortSetSystem {
        let table = Subset::all(self.m).map(|s| self.is_short(s)).collect();
        ShortSetSystem { m: self.m, table }
    }

    /// `S_m`: the short sets containing `m`, in increasing bit order.
    pub fn short_sets_with_m(&self) -> Vec<Subset> {
        let top = Subset::singleton(self.m);
        Subset::all(self.m - 1)
            .map(|s| s.union(top))
            .filter(|&s| self.is_short(s))
            .collect()
    }

    pub fn validate(&self) -> CodeReport {
        let mut comparable = Vec::new();
        for (x, &a) in self.genes.iter().enumerate() {
            for &b in &self.genes[x + 1..] {
                if dominates(a, b) {
                    comparable.push((a, b));
                } else if dominates(b, a) {
                    comparable.push((b, a));
                }
            }
        }
        let long_singletons: Vec<usize> =
            (1..=self.m).filter(|&i| !self.is_short(Subset::singleton(i))).collect();
        let sys = self.short_system();
        let complement_violations = sys.complement_violations();
        let valid =
            comparable.is_empty() && long_singletons.is_empty() && complement_violations.is_empty();
        CodeReport { valid, comparable, long_singletons, complement_violations }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.valid {
            return Ok(());
        }
        let mut why = Vec::new();
        if let Some((a, b)) = r.comparable.first() {
            why.push(format!("genes {a} ≤ {b} are comparable"));
        }
        if !r.long_singletons.is_empty() {
            why.push(format!("singletons {:?} are long", r.long_singletons));
        }
        if let Some(s) = r.complement_violations.first() {
            why.push(format!("{s} and its complement are both short"));
        }
        Err(Error::InvalidCode(format!("{self}: {}", why.join("; "))))
    }

    /// Genetic order `⪯`: every gene of `self` is dominated by a gene of `other`.
    pub fn leq(&self, other: &GeneticCode) -> bool {
        self.m == other.m
            && self.genes.iter().all(|&a| other.genes.iter().any(|&b| dominates(a, b)))
    }

    /// The set `J` with `S_m(other) = S_m(self) ∪ {J}`, when `other` covers `self`.
    pub fn covered_by(&self, other: &GeneticCode) -> Option<Subset> {
        if self.m != other.m {
            return None;
        }
        let mine = self.short_sets_with_m();
        let theirs = other.short_sets_with_m();
        if theirs.len() != mine.len() + 1 || !mine.iter().all(|s| theirs.contains(s)) {
            return None;
        }
        theirs.into_iter().find(|s| !mine.contains(s))
    }

    /// Codes covered by `self`: drop one gene (a maximal short set) and re-maximize.
    pub fn down_covers(&self) -> Vec<GeneticCode> {
        let sets = self.short_sets_with_m();
        let mut out = Vec::new();
        for &gene in &self.genes {
            let rest: Vec<Subset> = sets.iter().copied().filter(|&s| s != gene).collect();
            let h = Self::from_sets_containing_m(self.m, &rest).expect("subcodes stay well formed");
            debug_assert_eq!(h.covered_by(self), Some(gene));
            out.push(h);
        }
        out
    }

    /// Valid codes covering `self`: add one set `J ∋ m` whose lower covers are
    /// all already short.
    pub fn up_covers(&self) -> Vec<GeneticCode> {
        let sets = self.short_sets_with_m();
        let top = Subset::singleton(self.m);
        let mut out = Vec::new();
        for j in Subset::all(self.m - 1).map(|s| s.union(top)) {
            if sets.contains(&j) {
                continue;
            }
            let below_ok = sets
                .iter()
                .filter(|&&s| dominates(s, j))
                .count()
                == Subset::all(self.m - 1)
                    .map(|s| s.union(top))
                    .filter(|&s| s != j && dominates(s, j))
                    .count();
            if !below_ok {
                continue;
            }
            let mut with = sets.clone();
            with.push(j);
            let h = Self::from_sets_containing_m(self.m, &with).expect("well formed");
            if h.validate().valid {
                out.push(h);
            }
        }
        out
    }

    /// Every valid genetic code on `m` sides, sorted. Found by walking up
    /// covers from the trivial code; `3 <= m <= 7`.
    pub fn all(m: usize) -> Result<Vec<GeneticCode>> {
        if !(3..=7).contains(&m) {
            return Err(Error::TooLarge(format!("code enumeration needs 3 <= m <= 7, got {m}")));
        }
        let mut seen = std::collections::BTreeSet::from([GeneticCode::trivial(m)]);
        let mut frontier = vec![GeneticCode::trivial(m)];
        while let Some(g) = frontier.pop() {
            for h in g.up_covers() {
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Compact notation, e.g. `<126,36>`; genes with elements above 9 use
    /// bracketed lists (`<[2,4,6,10]>`).
    pub fn notation(&self) -> String {
        let parts: Vec<String> = self.genes.iter().map(|g| g.compact()).collect();
        format!("<{}>", parts.join(","))
    }

    /// Parses compact notation. `m` defaults to the largest element mentioned.
    pub fn parse(text: &str, m: Option<usize>) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .or_else(|| t.strip_prefix('⟨').and_then(|r| r.strip_suffix('⟩')))
            .unwrap_or(&t);
        let bad = |why: &str| Error::Parse(format!("bad genetic code {text:?}: {why}"));
        let mut genes = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('[') {
                let end = r.find(']').ok_or_else(|| bad("unclosed '['"))?;
                let mut g = Subset::EMPTY;
                for item in r[..end].split(',').filter(|s| !s.is_empty()) {
                    let i: usize = item.parse().map_err(|_| bad("non-numeric element"))?;
                    if i == 0 || i > 32 {
                        return Err(bad("element out of range"));
                    }
                    g.insert(i);
                }
                genes.push(g);
                rest = &r[end + 1..];
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                let mut g = Subset::EMPTY;
                for c in rest[..end].chars() {
                    let d = c.to_digit(10).ok_or_else(|| bad("expected digits"))? as usize;
                    if d == 0 {
                        return Err(bad("element 0"));
                    }
                    g.insert(d);
                }
                genes.push(g);
                rest = &rest[end..];
            }
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        let inferred = genes.iter().filter_map(|g| g.largest()).max();
        let m = match (m, inferred) {
            (Some(m), _) => m,
            (None, Some(i)) => i,
            (None, None) => return Err(bad("empty code needs an explicit m")),
        };
        Self::new(m, genes)
    }
}

/// Maximal short sets of `α` that contain `m`.
pub fn genetic_code(alpha: &LengthVector) -> Result<GeneticCode> {
    let m = alpha.m();
    let top = Subset::singleton(m);
    let mut sets = Vec::new();
    for s in Subset::all(m - 1).map(|s| s.union(top)) {
        if alpha.is_short(s)? {
            sets.push(s);
        }
    }
    GeneticCode::from_sets_containing_m(m, &sets)
}

impl fmt::Debug for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

impl fmt::Display for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.notation())
    }
}

#[derive(Serialize, Deserialize)]
struct CodeJson {
    m: usize,
    genes: Vec<Subset>,
}

impl Serialize for GeneticCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CodeJson { m: self.m, genes: self.genes.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GeneticCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = CodeJson::deserialize(d)?;
        GeneticCode::new(c.m, c.genes).map_err(serde::de::Error::custom)
    }
}

/// Membership table for the short subsets of `[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortSetSystem {
    m: usize,
    table: Vec<bool>,
}

impl ShortSetSystem {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_short(&self, s: Subset) -> bool {
        self.table[s.bits() as usize]
    }

    /// `S_m`: short sets containing `m`.
    pub fn with_m(&self) -> Vec<Subset> {
        self.all_short().into_iter().filter(|s| s.contains(self.m)).collect()
    }

    /// Every short set.
    pub fn all_short(&self) -> Vec<Subset> {
        Subset::all(self.m).filter(|&s| self.is_short(s)).collect()
    }

    /// Short sets whose complement is short too.
    pub fn complement_violations(&self) -> Vec<Subset> {
        Subset::all(self.m)
            .filter(|&s| self.is_short(s) && self.is_short(s.complement(self.m)))
            .collect()
    }

    /// Closed under taking subsets.
    pub fn is_simplicial(&self) -> bool {
        Subset::all(self.m).filter(|&s| self.is_short(s)).all(|s| {
            s.iter().all(|i| self.is_short(s.without(i)))
        })
    }

    /// `S_m` is a down-set for `≤`.
    pub fn is_dominance_closed(&self) -> bool {
        let with_m = self.with_m();
        let top = Subset::singleton(self.m);
        Subset::all(self.m - 1).map(|s| s.union(top)).all(|s| {
            !with_m.iter().any(|&t| dominates(s, t)) || self.is_short(s)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let counts: Vec<(usize, usize)> = (3..=6)
            .map(|m| {
                let all = GeneticCode::all(m).unwrap();
                let real = all.iter().filter(|g| crate::genetics::realize(g).unwrap().is_some()).count();
                (all.len(), real)
            })
            .collect();
        // chambers up to symmetry are 2, 3, 7, 21; one of them has an
        // overlong side and an empty space, hence no code
        assert_eq!(counts.iter().map(|c| c.1).collect::<Vec<_>>(), vec![1, 2, 6, 20]);
        assert!(counts.iter().all(|c| c.0 >= c.1));
        assert!(GeneticCode::all(8).is_err());
    }

    fn s(v: &[usize]) -> Subset {
        Subset::from_elements(v.iter().copied())
    }

    // Existential form of the order, straight from the definition: some
    // |I|-subset of J bounds I elementwise when both are listed increasingly.
    fn dominates_brute(i: Subset, j: Subset) -> bool {
        let a = i.to_vec();
        Subset::all(32.min(j.largest().unwrap_or(0)))
            .filter(|t| t.is_subset_of(j) && t.len() == a.len())
            .any(|t| a.iter().zip(t.to_vec()).all(|(x, y)| *x <= y))
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(s(&[1, 2, 6]), s(&[1, 3, 6])));
        assert!(dominates(s(&[2, 5]), s(&[2, 5])));
        assert!(!dominates(s(&[3, 6]), s(&[1, 2, 6])));
    }

    #[test]
    fn greedy_dominance_matches_brute_force() {
        for i in Subset::all(7) {
            for j in Subset::all(7) {
                assert_eq!(dominates(i, j), dominates_brute(i, j), "{i} vs {j}");
            }
        }
    }

    #[test]
    fn genetic_code_examples() {
        let g = |v: &[i64]| genetic_code(&LengthVector::from_integers(v).unwrap()).unwrap();
        assert_eq!(g(&[1, 1, 1, 1, 3]).notation(), "<5>");
        assert_eq!(g(&[1, 1, 1, 1, 1]).notation(), "<45>");
        assert_eq!(g(&[1, 2, 3, 3, 4]).notation(), "<25>");
        assert_eq!(g(&[1, 1, 1, 1, 1, 1, 5]).notation(), "<7>");
    }

    #[test]
    fn short_system_examples() {
        let g = GeneticCode::trivial(5);
        for t in Subset::all(4) {
            assert_eq!(g.is_short(t), t != Subset::full(4), "{t}");
        }
        assert!(!g.is_short(s(&[1, 5])));
        let h = GeneticCode::from_lists(6, &[&[1, 2, 6], &[3, 6]]).unwrap();
        for &gene in h.genes() {
            assert!(!h.is_short(gene.complement(6)));
        }
    }

    #[test]
    fn order_and_covers() {
        let a = GeneticCode::from_lists(6, &[&[1, 2, 6], &[3, 6]]).unwrap();
        let b = GeneticCode::from_lists(6, &[&[1, 3, 6]]).unwrap();
        assert!(a.leq(&b));
        assert!(a.leq(&a));
        let c = GeneticCode::from_lists(5, &[&[2, 5]]).unwrap();
        let d = GeneticCode::from_lists(5, &[&[1, 5]]).unwrap();
        assert!(!c.leq(&d));

        let t = GeneticCode::trivial(5);
        assert_eq!(t.covered_by(&d), Some(s(&[1, 5])));
        assert_eq!(t.covered_by(&t), None);
        assert_eq!(t.covered_by(&c), None);
    }

    #[test]
    fn down_cover_examples() {
        let g = GeneticCode::from_lists(6, &[&[2, 5, 6]]).unwrap();
        let want = GeneticCode::from_lists(6, &[&[2, 4, 6], &[1, 5, 6]]).unwrap();
        assert!(g.down_covers().contains(&want));
        let t = GeneticCode::trivial(6);
        assert_eq!(t.down_covers(), vec![GeneticCode::new(6, []).unwrap()]);
        let g = GeneticCode::from_lists(6, &[&[1, 2, 6]]).unwrap();
        assert_eq!(g.down_covers(), vec![GeneticCode::from_lists(6, &[&[2, 6]]).unwrap()]);
    }

    #[test]
    fn up_covers_invert_down_covers() {
        let g = GeneticCode::from_lists(6, &[&[2, 6]]).unwrap();
        for h in g.up_covers() {
            assert!(h.down_covers().contains(&g), "{h}");
        }
        assert!(g.up_covers().contains(&GeneticCode::from_lists(6, &[&[1, 2, 6]]).unwrap()));
    }

    #[test]
    fn validation_examples() {
        assert!(GeneticCode::from_lists(5, &[&[4, 5]]).unwrap().validate().valid);
        let r = GeneticCode::from_lists(5, &[&[5], &[1, 5]]).unwrap().validate();
        assert!(!r.valid && !r.comparable.is_empty());
        let r = GeneticCode::from_lists(5, &[&[2, 3, 4, 5]]).unwrap().validate();
        assert!(!r.valid && r.long_singletons.contains(&1));
    }

    #[test]
    fn notation_round_trip() {
        let g = GeneticCode::parse("<126,36>", None).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(g.notation(), "<126,36>");
        let h = GeneticCode::parse("<[2,4,6,9]>", Some(9)).unwrap();
        assert_eq!(h.genes(), &[s(&[2, 4, 6, 9])]);
        let big = GeneticCode::parse("<[2,4,6,10]>", None).unwrap();
        assert_eq!(big.m(), 10);
        assert_eq!(GeneticCode::parse(&big.notation(), None).unwrap(), big);
        assert!(GeneticCode::parse("<>", None).is_err());
        assert!(GeneticCode::parse("<25>", Some(6)).is_err());
    }

    #[test]
    fn json_shape() {
        let g = GeneticCode::from_lists(5, &[&[2, 5]]).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"m":5,"genes":[[2,5]]}"#);
        let back: GeneticCode = serde_json::from_str(r#"{"m":5,"genes":[[2,5]]}"#).unwrap();
        assert_eq!(back, g);
    }
}
