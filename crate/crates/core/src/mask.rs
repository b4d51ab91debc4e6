//! Fixed-width membership words over a canonical element order.

use std::fmt;

/// Subset of a carrier of at most 64 elements; bit `i` is the element at
/// canonical position `i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mask(pub u64);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    /// All positions below `n`.
    pub fn full(n: usize) -> Mask {
        debug_assert!(n <= 64);
        if n >= 64 {
            Mask(u64::MAX)
        } else {
            Mask((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Mask {
        Mask(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Mask {
        it.into_iter().fold(Mask::EMPTY, |m, i| m.with(i))
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Mask {
        Mask(self.0 | 1u64 << i)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn union(self, other: Mask) -> Mask {
        Mask(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Mask) -> Mask {
        Mask(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Mask) -> Mask {
        Mask(self.0 & !other.0)
    }

    /// Complement relative to a carrier of size `n`.
    #[inline]
    pub fn complement(self, n: usize) -> Mask {
        Mask(!self.0 & Mask::full(n).0)
    }

    #[inline]
    pub fn is_subset(self, other: Mask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn meets(self, other: Mask) -> bool {
        self.0 & other.0 != 0
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending canonical order.
    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }

    /// True when no bit at or above `n` is set.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(Mask::full(n))
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct MaskIter(u64);

impl Iterator for MaskIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MaskIter {}

/// Every subset of an `n`-element carrier in increasing word order,
/// optionally skipping the empty set.
pub fn subsets(n: usize, include_empty: bool) -> impl Iterator<Item = Mask> {
    assert!(n < 64, "subset enumeration needs n < 64");
    let start = if include_empty { 0 } else { 1 };
    (start..1u64 << n).map(Mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iterates_in_ascending_order() {
        let m = Mask::from_indices([5, 0, 3]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 3, 5]);
        assert_eq!(m.len(), 3);
        assert_eq!(m.first(), Some(0));
    }

    #[test]
    fn complement_stays_inside_carrier() {
        let m = Mask::from_indices([1]);
        assert_eq!(m.complement(3), Mask::from_indices([0, 2]));
        assert_eq!(Mask::full(64).complement(64), Mask::EMPTY);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(3, false).count(), 7);
        assert_eq!(subsets(3, true).count(), 8);
    }
}
