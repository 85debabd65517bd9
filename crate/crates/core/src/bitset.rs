//! Fixed-width sets over small dense index ranges.
//!
//! Every ground set handled by this crate is desk scale, so a single `u64`
//! word holds a subset. The same type is used for matroid elements, tree
//! vertices and tree edges; the aliases in this module document which one a
//! signature expects.

use std::fmt;

/// Largest index range a [`BitSet`] can describe.
pub const MAX_BITS: usize = 64;

/// A subset of `0..64`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet(u64);

/// Subset of a matroid's ground set.
pub type ElementSet = BitSet;
/// Subset of the vertices of a rooted tree.
pub type VertexSet = BitSet;

impl BitSet {
    pub const fn empty() -> Self {
        BitSet(0)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_BITS, "bit set width {n} exceeds {MAX_BITS}");
        if n == MAX_BITS {
            BitSet(u64::MAX)
        } else {
            BitSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_BITS, "index {i} exceeds bit set width");
        BitSet(1u64 << i)
    }

    pub const fn from_bits(bits: u64) -> Self {
        BitSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_BITS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        *self = self.with(i);
    }

    pub fn remove(&mut self, i: usize) {
        *self = self.without(i);
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        self | BitSet::singleton(i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        BitSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        BitSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        BitSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        BitSet(self.0 & !other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        BitSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// One past the largest member (0 for the empty set).
    pub fn width(self) -> usize {
        MAX_BITS - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Members in ascending order.
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing order of their bit patterns.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl std::ops::BitOr for BitSet {
    type Output = BitSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitOrAssign for BitSet {
    fn bitor_assign(&mut self, rhs: Self) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAnd for BitSet {
    type Output = BitSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for BitSet {
    type Output = BitSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = BitSet::empty();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl<'a> FromIterator<&'a usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for BitSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for BitSet {
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

/// Ascending iterator over the members of a [`BitSet`].
#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
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

impl ExactSizeIterator for Iter {}

/// Iterator over all subsets of a mask (Gosper-free submask walk).
#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = BitSet;

    fn next(&mut self) -> Option<BitSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(BitSet(cur))
    }
}
