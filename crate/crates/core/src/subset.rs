use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A subset of the Coxeter generators, stored as a bitmask (bit `i` is `s_i`).
///
/// The derived `Ord` compares masks; [`GeneratorSubset::canonical_cmp`] is the
/// order used for `E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorSubset(pub u16);

impl GeneratorSubset {
    pub const EMPTY: Self = Self(0);

    pub fn full(rank: usize) -> Self {
        Self(((1u32 << rank) - 1) as u16)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Self(indices.into_iter().fold(0u16, |m, i| m | (1 << i)))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..16).filter(move |&i| m >> i & 1 == 1)
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = GeneratorSubset> {
        let m = self.0;
        let mut next = Some(m);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 { None } else { Some((cur - 1) & m) };
            Some(GeneratorSubset(cur))
        })
    }

    /// Every subset of an `rank`-element generating set, by mask value.
    pub fn all(rank: usize) -> impl Iterator<Item = GeneratorSubset> {
        (0..1u32 << rank).map(|m| GeneratorSubset(m as u16))
    }

    /// Total order used for the index set E: by size, then lexicographically
    /// on the ascending list of generator indices.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl fmt::Display for GeneratorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "s{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_power_set() {
        let s = GeneratorSubset(0b1011);
        let mut all: Vec<u16> = s.subsets().map(|x| x.0).collect();
        all.sort_unstable();
        assert_eq!(all, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(GeneratorSubset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn canonical_order_is_by_size_then_lex() {
        let a = GeneratorSubset::from_indices([0, 2]);
        let b = GeneratorSubset::from_indices([1, 2]);
        let c = GeneratorSubset::from_indices([3]);
        assert_eq!(c.canonical_cmp(&a), Ordering::Less);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        let mut v = vec![b, a, c, GeneratorSubset::EMPTY];
        v.sort_by(GeneratorSubset::canonical_cmp);
        assert_eq!(v, vec![GeneratorSubset::EMPTY, c, a, b]);
    }

    #[test]
    fn display_lists_generators() {
        assert_eq!(GeneratorSubset::from_indices([0, 3]).to_string(), "{s0,s3}");
        assert_eq!(GeneratorSubset::EMPTY.to_string(), "{}");
    }
}
