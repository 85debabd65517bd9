use super::{ensure_cap, Matroid};
use crate::bitset::ElementSet;
use crate::error::Result;

/// Rank function stored for every subset of a small ground set.
///
/// Used to make the exponential depth recursions independent of the cost of
/// the underlying oracle.
#[derive(Clone, PartialEq, Eq)]
pub struct RankTable {
    n: usize,
    ranks: Vec<u8>,
}

impl std::fmt::Debug for RankTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RankTable")
            .field("n", &self.n)
            .field("rank", &self.ranks.last())
            .finish()
    }
}

impl RankTable {
    /// Queries `m` once per subset.
    pub fn build(m: &dyn Matroid, cap: usize) -> Result<Self> {
        ensure_cap("ground set for rank tabulation", m.len(), cap)?;
        let n = m.len();
        let ranks = (0..1u64 << n)
            .map(|bits| m.rank_unchecked(ElementSet::from_bits(bits)) as u8)
            .collect();
        Ok(RankTable { n, ranks })
    }

    /// Largest independent subset size for an arbitrary independence
    /// predicate: `|S|` when `S` is independent, otherwise the best over
    /// `S - e`. Exact even when the predicate is not a matroid.
    pub fn from_independence(
        n: usize,
        cap: usize,
        mut independent: impl FnMut(ElementSet) -> bool,
    ) -> Result<Self> {
        ensure_cap("ground set for rank tabulation", n, cap)?;
        let mut ranks = vec![0u8; 1 << n];
        for bits in 1..1u64 << n {
            let set = ElementSet::from_bits(bits);
            ranks[bits as usize] = if independent(set) {
                set.len() as u8
            } else {
                set.iter()
                    .map(|e| ranks[set.without(e).bits() as usize])
                    .max()
                    .unwrap_or(0)
            };
        }
        Ok(RankTable { n, ranks })
    }

    #[inline]
    pub fn get(&self, set: ElementSet) -> usize {
        self.ranks[set.bits() as usize] as usize
    }
}

impl Matroid for RankTable {
    fn len(&self) -> usize {
        self.n
    }

    fn rank_unchecked(&self, set: ElementSet) -> usize {
        self.get(set)
    }

    fn describe(&self) -> String {
        format!("rank table(n={})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{rank_agrees, Uniform};

    #[test]
    fn tabulation_matches_oracle() {
        let u = Uniform::new(5, 3).unwrap();
        let t = RankTable::build(&u, 16).unwrap();
        assert!(rank_agrees(&u, &t));
        let via_indep = RankTable::from_independence(5, 16, |s| s.len() <= 3).unwrap();
        assert_eq!(t, via_indep);
    }

    #[test]
    fn cap_is_enforced() {
        let u = Uniform::new(20, 3).unwrap();
        assert!(RankTable::build(&u, 16).unwrap_err().is_resource());
    }
}
