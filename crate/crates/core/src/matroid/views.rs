use super::{Matroid, MatroidRef};
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// `M / C \ D`, re-indexed densely.
///
/// Element `i` of the view is element `index_map()[i]` of the base. Rank is
/// `rank_M(X ∪ C) - rank_M(C)`.
#[derive(Debug, Clone)]
pub struct MinorView {
    base: MatroidRef,
    contracted: ElementSet,
    deleted: ElementSet,
    to_base: Vec<usize>,
    contracted_rank: usize,
}

/// Builds `base / contract \ delete`.
pub fn minor(base: &MatroidRef, contract: ElementSet, delete: ElementSet) -> Result<MinorView> {
    base.check_set(contract)?;
    base.check_set(delete)?;
    let overlap = contract & delete;
    if !overlap.is_empty() {
        return Err(Error::OverlappingMinor(overlap.to_string()));
    }
    let kept = base.ground() - contract - delete;
    Ok(MinorView {
        base: base.clone(),
        contracted: contract,
        deleted: delete,
        to_base: kept.to_vec(),
        contracted_rank: base.rank_unchecked(contract),
    })
}

impl MinorView {
    pub fn base(&self) -> &MatroidRef {
        &self.base
    }

    pub fn contracted(&self) -> ElementSet {
        self.contracted
    }

    pub fn deleted(&self) -> ElementSet {
        self.deleted
    }

    /// View index to base index.
    pub fn index_map(&self) -> &[usize] {
        &self.to_base
    }

    /// Translates a view set into base indices.
    pub fn lift(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|i| self.to_base[i]).collect()
    }

    /// Translates base indices into view indices, dropping elements that are
    /// not in the view.
    pub fn project(&self, set: ElementSet) -> ElementSet {
        self.to_base
            .iter()
            .enumerate()
            .filter(|(_, &old)| set.contains(old))
            .map(|(new, _)| new)
            .collect()
    }

    /// View index of a base element, if it survives.
    pub fn view_index(&self, base_element: usize) -> Option<usize> {
        self.to_base.binary_search(&base_element).ok()
    }
}

impl Matroid for MinorView {
    fn len(&self) -> usize {
        self.to_base.len()
    }

    fn rank_unchecked(&self, set: ElementSet) -> usize {
        self.base.rank_unchecked(self.lift(set) | self.contracted) - self.contracted_rank
    }

    fn describe(&self) -> String {
        format!(
            "minor of {} (contract {}, delete {})",
            self.base.describe(),
            self.contracted,
            self.deleted
        )
    }
}

/// `M*`, with `rank*(X) = rank(E − X) + |X| − rank(E)`.
#[derive(Debug, Clone)]
pub struct DualView {
    base: MatroidRef,
    base_rank: usize,
}

pub fn dual(base: &MatroidRef) -> DualView {
    DualView {
        base: base.clone(),
        base_rank: base.full_rank(),
    }
}

impl DualView {
    pub fn base(&self) -> &MatroidRef {
        &self.base
    }
}

impl Matroid for DualView {
    fn len(&self) -> usize {
        self.base.len()
    }

    fn rank_unchecked(&self, set: ElementSet) -> usize {
        self.base.rank_unchecked(set.complement(self.len())) + set.len() - self.base_rank
    }

    fn describe(&self) -> String {
        format!("dual of {}", self.base.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{free, loops, rank_agrees, Explicit, Gf2, Graphic, Uniform};
    use std::sync::Arc;

    fn shared<M: Matroid + 'static>(m: M) -> MatroidRef {
        Arc::new(m)
    }

    #[test]
    fn dual_of_uniform_is_uniform() {
        for n in 0..=5 {
            for r in 0..=n {
                let d = dual(&shared(Uniform::new(n, r).unwrap()));
                assert!(rank_agrees(&d, &Uniform::new(n, n - r).unwrap()), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn dual_is_involution() {
        let g = shared(Graphic::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)]).unwrap());
        let dd = dual(&shared(dual(&g)));
        assert!(rank_agrees(&dd, g.as_ref()));
    }

    #[test]
    fn coloops_dualize_to_loops() {
        assert!(rank_agrees(&dual(&shared(free(3))), &loops(3)));
    }

    #[test]
    fn contraction_of_uniform() {
        let u = shared(Uniform::new(3, 2).unwrap());
        let m = minor(&u, ElementSet::singleton(0), ElementSet::empty()).unwrap();
        assert!(rank_agrees(&m, &Uniform::new(2, 1).unwrap()));
        assert_eq!(m.index_map(), &[1, 2]);
        let id = minor(&u, ElementSet::empty(), ElementSet::empty()).unwrap();
        assert!(rank_agrees(&id, u.as_ref()));
    }

    #[test]
    fn overlapping_minor_rejected() {
        let u = shared(Uniform::new(3, 2).unwrap());
        let err = minor(&u, ElementSet::from_iter([0, 1]), ElementSet::from_iter([1])).unwrap_err();
        assert!(matches!(err, Error::OverlappingMinor(_)));
        assert!(minor(&u, ElementSet::singleton(3), ElementSet::empty()).is_err());
    }

    #[test]
    fn minor_of_minor_composes() {
        let m = shared(
            Gf2::from_bitstrings(3, &["100", "010", "110", "001", "101", "011", "111"]).unwrap(),
        );
        let c1 = ElementSet::from_iter([1]);
        let d1 = ElementSet::from_iter([4]);
        let first = minor(&m, c1, d1).unwrap();
        let first_ref: MatroidRef = Arc::new(first.clone());
        let c2 = ElementSet::from_iter([0]);
        let d2 = ElementSet::from_iter([3]);
        let second = minor(&first_ref, c2, d2).unwrap();
        let direct = minor(&m, c1 | first.lift(c2), d1 | first.lift(d2)).unwrap();
        assert!(rank_agrees(&second, &direct));
    }

    #[test]
    fn dual_formula_on_explicit_sum() {
        let s = shared(
            Explicit::direct_sum(&Uniform::new(3, 1).unwrap(), &Uniform::new(2, 2).unwrap())
                .unwrap(),
        );
        let d = dual(&s);
        let r = s.full_rank();
        for x in s.ground().subsets() {
            let expected = s.rank_unchecked(x.complement(5)) + x.len() - r;
            assert_eq!(d.rank(x).unwrap(), expected);
        }
    }
}
