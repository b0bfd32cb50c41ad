//! Element sets over a ground set `{1..n}` with `n <= 64`, stored as a bitmask.
//!
//! Element `e` lives in bit `e - 1`.

use std::fmt;

use serde::{Serialize, Serializer};

/// Largest ground set a bitmask can hold.
pub const MAX_ELEMENTS: usize = 64;

#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        assert!(
            n <= MAX_ELEMENTS,
            "ground set of size {n} exceeds {MAX_ELEMENTS}"
        );
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    /// `{lo..hi}`, empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if lo > hi || hi == 0 {
            return Self::EMPTY;
        }
        let lo = lo.max(1);
        Self::full(hi).difference(Self::full(lo - 1))
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!((1..=MAX_ELEMENTS).contains(&e));
        ElementSet(1u64 << (e - 1))
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements.into_iter().fold(Self::EMPTY, |acc, e| acc.with(e))
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_ELEMENTS).contains(&e) && self.0 & (1u64 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Self {
        self.union(Self::singleton(e))
    }

    pub fn without(self, e: usize) -> Self {
        self.difference(Self::singleton(e))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Largest element, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, starting from the empty set (carry-rippler order).
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_elements(iter)
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let current = self.next?;
        let following = current.wrapping_sub(self.mask) & self.mask;
        self.next = (following != 0).then_some(following);
        Some(ElementSet(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_and_full() {
        assert_eq!(ElementSet::range(2, 4).to_vec(), vec![2, 3, 4]);
        assert!(ElementSet::range(3, 2).is_empty());
        assert!(ElementSet::range(1, 0).is_empty());
        assert_eq!(ElementSet::full(64).len(), 64);
        assert_eq!(ElementSet::full(0), ElementSet::EMPTY);
    }

    #[test]
    fn subsets_cover_power_set() {
        let s = ElementSet::from_elements([1, 3, 6]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(s)));
        assert_eq!(ElementSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn first_last_display() {
        let s = ElementSet::from_elements([5, 2, 9]);
        assert_eq!(s.first(), Some(2));
        assert_eq!(s.last(), Some(9));
        assert_eq!(s.to_string(), "{2,5,9}");
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,5,9]");
    }
}
