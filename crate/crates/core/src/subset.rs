use std::fmt;

use serde::{Deserialize, Serialize};

/// A subset of `[m] = {1, ..., m}` stored as a bitset (bit `i-1` for element `i`).
///
/// Supports `m <= 32`; callers cap ground sets well below that.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// `{1, ..., m}`.
    pub fn full(m: usize) -> Self {
        if m >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << m) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=32).contains(&i));
        Subset(1 << (i - 1))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=32).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << (i - 1);
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | (1 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << (i - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement within `[m]`.
    pub fn complement(self, m: usize) -> Subset {
        Subset(!self.0 & Subset::full(m).0)
    }

    pub fn largest(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros() as usize)
        }
    }

    pub fn smallest(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Elements in decreasing order.
    pub fn descending(self) -> Vec<usize> {
        let mut v = self.to_vec();
        v.reverse();
        v
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(items: I) -> Self {
        let mut s = Subset::EMPTY;
        for i in items {
            s.insert(i);
        }
        s
    }

    /// All subsets of `[m]`, in increasing bit order.
    pub fn all(m: usize) -> impl Iterator<Item = Subset> {
        (0..(1u64 << m)).map(|b| Subset(b as u32))
    }

    /// Compact notation: `"25"` for `{2,5}` when every element is a single
    /// digit, `"[2,10]"` otherwise; `"{}"` for the empty set.
    pub fn compact(self) -> String {
        if self.is_empty() {
            return "{}".to_string();
        }
        if self.largest().unwrap_or(0) <= 9 {
            self.iter().map(|i| char::from(b'0' + i as u8)).collect()
        } else {
            let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if v.iter().any(|&i| i == 0 || i > 32) {
            return Err(serde::de::Error::custom("subset elements must lie in 1..=32"));
        }
        Ok(Subset::from_elements(v))
    }
}
