//! Ground sets, rank oracles and the concrete matroid backends.
//!
//! A matroid is anything that can answer rank queries over a dense ground set
//! `0..n`. Minors and duals are lazy views over a shared base matroid; they
//! never materialise independent sets.

mod connectivity;
mod explicit;
mod file;
mod gf2;
mod graphic;
mod table;
mod uniform;
mod views;

use std::fmt;
use std::sync::Arc;

pub use connectivity::{components_by_rank, components_from_circuits, UnionFind};
pub use explicit::Explicit;
pub use file::MatroidFile;
pub use gf2::{gf2_rank, Gf2};
pub use graphic::Graphic;
pub use table::RankTable;
pub use uniform::Uniform;
pub use views::{dual, minor, DualView, MinorView};

use crate::bitset::{ElementSet, MAX_BITS};
use crate::error::{Error, Result};

/// Shared handle to a matroid backend.
pub type MatroidRef = Arc<dyn Matroid>;

/// Dense element index within one matroid's ground set.
pub type ElementId = usize;

/// Default cap on ground-set size for subset enumeration.
pub const DEFAULT_SUBSET_CAP: usize = 16;

/// Kind of a single element with respect to the whole matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Loop,
    Coloop,
    Ordinary,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::Loop => "loop",
            ElementKind::Coloop => "coloop",
            ElementKind::Ordinary => "ordinary",
        })
    }
}

/// Partition of the ground set into components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub blocks: Vec<ElementSet>,
    /// `trivial[i]` is set when block `i` is a single loop.
    pub trivial: Vec<bool>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `e`.
    pub fn block_of(&self, e: ElementId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(e))
    }
}

/// A finite matroid given by its rank function.
///
/// Implementors provide [`Matroid::rank_unchecked`]; every other query is
/// derived from it.
pub trait Matroid: fmt::Debug + Send + Sync {
    /// Number of elements in the ground set.
    fn len(&self) -> usize;

    /// Rank of `set`, which must lie inside the ground set.
    fn rank_unchecked(&self, set: ElementSet) -> usize;

    /// Short human-readable name of the backend.
    fn describe(&self) -> String {
        format!("matroid on {} elements", self.len())
    }

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn ground(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    fn check_set(&self, set: ElementSet) -> Result<()> {
        if set.is_subset(self.ground()) {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: set.width() - 1,
                size: self.len(),
            })
        }
    }

    fn check_element(&self, e: ElementId) -> Result<()> {
        if e < self.len() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: e,
                size: self.len(),
            })
        }
    }

    fn rank(&self, set: ElementSet) -> Result<usize> {
        self.check_set(set)?;
        Ok(self.rank_unchecked(set))
    }

    /// Rank of the whole ground set.
    fn full_rank(&self) -> usize {
        self.rank_unchecked(self.ground())
    }

    fn is_independent(&self, set: ElementSet) -> Result<bool> {
        Ok(self.rank(set)? == set.len())
    }

    fn classify(&self, e: ElementId) -> Result<ElementKind> {
        self.check_element(e)?;
        Ok(if self.rank_unchecked(ElementSet::singleton(e)) == 0 {
            ElementKind::Loop
        } else if self.rank_unchecked(self.ground().without(e)) + 1 == self.full_rank() {
            ElementKind::Coloop
        } else {
            ElementKind::Ordinary
        })
    }

    /// All circuits, sorted by size and then by their ascending element lists.
    fn circuits(&self, cap: usize) -> Result<Vec<ElementSet>> {
        ensure_cap("ground set for circuit enumeration", self.len(), cap)?;
        let mut out: Vec<ElementSet> = self
            .ground()
            .subsets()
            .filter(|&s| is_circuit(|x| self.rank_unchecked(x), s))
            .collect();
        out.sort_by_key(|s| (s.len(), s.to_vec()));
        Ok(out)
    }

    /// Components, computed from the fundamental circuits of a greedy basis.
    fn components(&self, cap: usize) -> Result<ComponentPartition> {
        ensure_cap("ground set for component computation", self.len(), cap)?;
        let blocks = components_by_rank(self.ground(), |x| self.rank_unchecked(x));
        let trivial = blocks
            .iter()
            .map(|b| b.len() == 1 && self.rank_unchecked(*b) == 0)
            .collect();
        Ok(ComponentPartition { blocks, trivial })
    }

    /// All bases, in increasing bit-pattern order.
    fn bases(&self, cap: usize) -> Result<Vec<ElementSet>> {
        ensure_cap("ground set for basis enumeration", self.len(), cap)?;
        let r = self.full_rank();
        Ok(self
            .ground()
            .subsets()
            .filter(|s| s.len() == r && self.rank_unchecked(*s) == r)
            .collect())
    }

    /// Whether every element is a loop or a coloop.
    fn is_loops_and_coloops_only(&self) -> bool {
        (0..self.len()).all(|e| self.classify(e).is_ok_and(|k| k != ElementKind::Ordinary))
    }
}

pub(crate) fn ensure_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_BITS);
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// `set` is a circuit iff it is dependent and every proper subset obtained by
/// dropping one element is independent.
pub(crate) fn is_circuit(rank: impl Fn(ElementSet) -> usize, set: ElementSet) -> bool {
    let k = set.len();
    if k == 0 || rank(set) != k - 1 {
        return false;
    }
    set.iter().all(|e| rank(set.without(e)) == k - 1)
}

/// The free matroid on `n` elements.
pub fn free(n: usize) -> Uniform {
    Uniform::new(n, n).expect("free matroid is always a valid uniform matroid")
}

/// Matroid whose elements are all loops.
pub fn loops(n: usize) -> Uniform {
    Uniform::new(n, 0).expect("rank-0 uniform matroid is always valid")
}

/// Rank agreement of two matroids on every subset of a common ground set.
pub fn rank_agrees(a: &dyn Matroid, b: &dyn Matroid) -> bool {
    a.len() == b.len()
        && a
            .ground()
            .subsets()
            .all(|s| a.rank_unchecked(s) == b.rank_unchecked(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2_columns(cols: &[&str]) -> Gf2 {
        Gf2::from_bitstrings(2, cols).unwrap()
    }

    #[test]
    fn uniform_ranks() {
        let u = Uniform::new(3, 2).unwrap();
        assert_eq!(u.rank(ElementSet::from_iter([0, 1])).unwrap(), 2);
        assert_eq!(loops(3).rank(ElementSet::from_iter([0, 1])).unwrap(), 0);
        assert!(!u.is_independent(ElementSet::full(3)).unwrap());
        assert!(u.is_independent(ElementSet::empty()).unwrap());
    }

    #[test]
    fn rank_rejects_out_of_range() {
        let u = Uniform::new(3, 2).unwrap();
        assert_eq!(
            u.rank(ElementSet::singleton(5)),
            Err(Error::ElementOutOfRange { index: 5, size: 3 })
        );
        assert!(u.classify(3).is_err());
    }

    #[test]
    fn gf2_small_examples() {
        let m = gf2_columns(&["10", "01", "11"]);
        assert_eq!(m.rank(ElementSet::full(3)).unwrap(), 2);
        assert!(m.is_independent(ElementSet::from_iter([0, 2])).unwrap());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(loops(3).classify(0).unwrap(), ElementKind::Loop);
        assert_eq!(free(2).classify(1).unwrap(), ElementKind::Coloop);
        assert_eq!(
            Uniform::new(3, 2).unwrap().classify(0).unwrap(),
            ElementKind::Ordinary
        );
    }

    #[test]
    fn circuits_examples() {
        let u = Uniform::new(3, 2).unwrap();
        assert_eq!(u.circuits(16).unwrap(), vec![ElementSet::full(3)]);
        assert!(free(4).circuits(16).unwrap().is_empty());
        let m = Gf2::from_bitstrings(2, &["10", "01", "11", "11"]).unwrap();
        assert!(m
            .circuits(16)
            .unwrap()
            .contains(&ElementSet::from_iter([2, 3])));
        assert!(matches!(
            free(17).circuits(16),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn components_examples() {
        let sum = Explicit::direct_sum(&Uniform::new(2, 1).unwrap(), &Uniform::new(2, 1).unwrap())
            .unwrap();
        let parts = sum.components(16).unwrap();
        assert_eq!(
            parts.blocks,
            vec![ElementSet::from_iter([0, 1]), ElementSet::from_iter([2, 3])]
        );
        let parts = free(3).components(16).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts.trivial.iter().all(|t| !t));
        let parts = loops(2).components(16).unwrap();
        assert!(parts.trivial.iter().all(|t| *t));
        assert_eq!(Uniform::new(3, 2).unwrap().components(16).unwrap().len(), 1);
    }

    #[test]
    fn bases_of_uniform() {
        assert_eq!(Uniform::new(4, 2).unwrap().bases(16).unwrap().len(), 6);
        assert_eq!(loops(2).bases(16).unwrap(), vec![ElementSet::empty()]);
    }
}
