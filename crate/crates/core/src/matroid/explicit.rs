use super::{ensure_cap, Matroid, DEFAULT_SUBSET_CAP};
use crate::bitset::{ElementSet, MAX_BITS};
use crate::error::{Error, Result};

/// A matroid given by its list of bases; `rank(X) = max |X ∩ B|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explicit {
    n: usize,
    bases: Vec<ElementSet>,
}

impl Explicit {
    /// Checks that the list is non-empty, equicardinal and in range. The basis
    /// exchange axiom is checked separately by [`Explicit::check_exchange`].
    pub fn new(n: usize, mut bases: Vec<ElementSet>) -> Result<Self> {
        if n > MAX_BITS {
            return Err(Error::invalid(format!("{n} elements exceed the supported 64")));
        }
        let first = *bases
            .first()
            .ok_or_else(|| Error::invalid("explicit matroid needs at least one basis"))?;
        if let Some(b) = bases.iter().find(|b| b.len() != first.len()) {
            return Err(Error::invalid(format!(
                "basis {b} has size {} but {first} has size {}",
                b.len(),
                first.len()
            )));
        }
        if let Some(b) = bases.iter().find(|b| !b.is_subset(ElementSet::full(n))) {
            return Err(Error::invalid(format!("basis {b} has elements outside 0..{n}")));
        }
        bases.sort();
        bases.dedup();
        Ok(Explicit { n, bases })
    }

    pub fn bases_list(&self) -> &[ElementSet] {
        &self.bases
    }

    /// Basis exchange: for bases `A`, `B` and `a ∈ A − B` there is
    /// `b ∈ B − A` with `A − a + b` a basis.
    pub fn check_exchange(&self) -> Result<()> {
        for &a in &self.bases {
            for &b in &self.bases {
                for x in a - b {
                    let ok = (b - a)
                        .iter()
                        .any(|y| self.bases.binary_search(&a.without(x).with(y)).is_ok());
                    if !ok {
                        return Err(Error::invalid(format!(
                            "bases {a} and {b} violate exchange at element {x}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Explicit copy of any matroid, by enumerating its bases.
    pub fn from_matroid(m: &dyn Matroid) -> Result<Self> {
        Explicit::new(m.len(), m.bases(DEFAULT_SUBSET_CAP)?)
    }

    /// Direct sum with the elements of `b` shifted past those of `a`.
    pub fn direct_sum(a: &dyn Matroid, b: &dyn Matroid) -> Result<Self> {
        ensure_cap("direct sum", a.len() + b.len(), MAX_BITS)?;
        let left = a.bases(DEFAULT_SUBSET_CAP)?;
        let right = b.bases(DEFAULT_SUBSET_CAP)?;
        let shift = a.len();
        let bases = left
            .iter()
            .flat_map(|&x| {
                right
                    .iter()
                    .map(move |&y| x | ElementSet::from_bits(y.bits() << shift))
            })
            .collect();
        Explicit::new(a.len() + b.len(), bases)
    }
}

impl Matroid for Explicit {
    fn len(&self) -> usize {
        self.n
    }

    fn rank_unchecked(&self, set: ElementSet) -> usize {
        self.bases
            .iter()
            .map(|b| (set & *b).len())
            .max()
            .unwrap_or(0)
    }

    fn describe(&self) -> String {
        format!("explicit(n={}, bases={})", self.n, self.bases.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{rank_agrees, Uniform};

    #[test]
    fn copy_of_uniform_agrees() {
        let u = Uniform::new(4, 2).unwrap();
        let e = Explicit::from_matroid(&u).unwrap();
        assert!(rank_agrees(&u, &e));
        assert!(e.check_exchange().is_ok());
    }

    #[test]
    fn rejects_malformed_lists() {
        assert!(Explicit::new(3, vec![]).is_err());
        assert!(Explicit::new(
            3,
            vec![ElementSet::from_iter([0]), ElementSet::from_iter([1, 2])]
        )
        .is_err());
        let bad = Explicit::new(
            4,
            vec![ElementSet::from_iter([0, 1]), ElementSet::from_iter([2, 3])],
        )
        .unwrap();
        assert!(bad.check_exchange().is_err());
    }

    #[test]
    fn direct_sum_shifts_second_summand() {
        let s = Explicit::direct_sum(&Uniform::new(2, 1).unwrap(), &Uniform::new(1, 1).unwrap())
            .unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.full_rank(), 2);
        assert_eq!(s.rank(ElementSet::from_iter([0, 1])).unwrap(), 1);
    }
}
