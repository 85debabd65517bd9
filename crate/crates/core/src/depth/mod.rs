//! Contraction-depth, deletion-depth and their altered variants.
//!
//! All four parameters share one recursion: a matroid with a single element
//! has a base value, a disconnected matroid takes the maximum over its
//! components, and a connected matroid is one plus the best value after
//! removing a single element (by contraction or by deletion). Minors are
//! addressed as `(contracted, remaining)` pairs of the tabulated input so the
//! memo key is exact.

mod quotient;

use std::collections::HashMap;
use std::fmt;

pub use quotient::csd_gf2_quotient;

use crate::bitset::ElementSet;
use crate::error::Result;
use crate::matroid::{components_by_rank, ElementId, Matroid, RankTable};

/// Which depth parameter to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DepthKind {
    /// `cd`: contract in the connected case; a single element has depth 1.
    Contraction,
    /// `dd`: delete in the connected case; a single element has depth 1.
    Deletion,
    /// `cd′`: as `cd`, but a single element has depth equal to its rank.
    AlteredContraction,
    /// `dd′`: as `dd`, but a single loop has depth 1 and a single coloop 0.
    AlteredDeletion,
}

impl DepthKind {
    pub const ALL: [DepthKind; 4] = [
        DepthKind::Contraction,
        DepthKind::Deletion,
        DepthKind::AlteredContraction,
        DepthKind::AlteredDeletion,
    ];

    fn contracts(self) -> bool {
        matches!(self, DepthKind::Contraction | DepthKind::AlteredContraction)
    }

    /// Value of a one-element matroid of the given rank (0 or 1).
    fn single(self, rank: usize) -> u32 {
        match self {
            DepthKind::Contraction | DepthKind::Deletion => 1,
            DepthKind::AlteredContraction => rank as u32,
            DepthKind::AlteredDeletion => 1 - rank as u32,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            DepthKind::Contraction => "cd",
            DepthKind::Deletion => "dd",
            DepthKind::AlteredContraction => "cd-alt",
            DepthKind::AlteredDeletion => "dd-alt",
        }
    }
}

impl fmt::Display for DepthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl std::str::FromStr for DepthKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        DepthKind::ALL
            .into_iter()
            .find(|k| k.short_name() == s)
            .ok_or_else(|| format!("unknown depth kind {s:?} (expected cd, dd, cd-alt or dd-alt)"))
    }
}

/// Value of a depth parameter, with the element chosen at the top level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DepthReport {
    pub value: usize,
    /// Smallest element whose removal attains the minimum, when the matroid is
    /// connected with at least two elements.
    pub optimal_element: Option<ElementId>,
}

/// Memoised evaluator for one matroid and one depth parameter.
#[derive(Debug)]
pub struct DepthMemo {
    table: RankTable,
    kind: DepthKind,
    cache: Option<HashMap<(u64, u64), u32>>,
}

impl DepthMemo {
    pub fn new(m: &dyn Matroid, kind: DepthKind, cap: usize) -> Result<Self> {
        Ok(DepthMemo::from_table(RankTable::build(m, cap)?, kind))
    }

    pub fn from_table(table: RankTable, kind: DepthKind) -> Self {
        DepthMemo {
            table,
            kind,
            cache: Some(HashMap::new()),
        }
    }

    /// Same recursion with the memo table switched off.
    pub fn uncached(m: &dyn Matroid, kind: DepthKind, cap: usize) -> Result<Self> {
        let mut memo = DepthMemo::new(m, kind, cap)?;
        memo.cache = None;
        Ok(memo)
    }

    pub fn table(&self) -> &RankTable {
        &self.table
    }

    pub fn cached_minors(&self) -> usize {
        self.cache.as_ref().map_or(0, |c| c.len())
    }

    fn minor_rank(&self, contracted: ElementSet, set: ElementSet) -> usize {
        self.table.get(set | contracted) - self.table.get(contracted)
    }

    /// Parameter of `(M / contracted) | remaining`.
    pub fn minor_value(&mut self, contracted: ElementSet, remaining: ElementSet) -> usize {
        assert!(contracted.is_disjoint(remaining));
        assert!((contracted | remaining).is_subset(self.table.ground()));
        self.eval(contracted, remaining) as usize
    }

    /// Parameter of the whole matroid plus the optimal top-level element.
    pub fn report(&mut self) -> DepthReport {
        let ground = self.table.ground();
        let value = self.eval(ElementSet::empty(), ground) as usize;
        let optimal_element = if ground.len() >= 2
            && self.components(ElementSet::empty(), ground).len() == 1
        {
            ground
                .iter()
                .find(|&e| self.step(ElementSet::empty(), ground, e) + 1 == value as u32)
        } else {
            None
        };
        DepthReport {
            value,
            optimal_element,
        }
    }

    fn components(&self, contracted: ElementSet, remaining: ElementSet) -> Vec<ElementSet> {
        components_by_rank(remaining, |x| self.minor_rank(contracted, x))
    }

    /// Value after removing `e` from a connected minor.
    fn step(&mut self, contracted: ElementSet, remaining: ElementSet, e: ElementId) -> u32 {
        if self.kind.contracts() {
            self.eval(contracted.with(e), remaining.without(e))
        } else {
            self.eval(contracted, remaining.without(e))
        }
    }

    fn eval(&mut self, contracted: ElementSet, remaining: ElementSet) -> u32 {
        match remaining.len() {
            0 => return 0,
            1 => return self.kind.single(self.minor_rank(contracted, remaining)),
            _ => {}
        }
        let key = (contracted.bits(), remaining.bits());
        if let Some(v) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            return *v;
        }
        let parts = self.components(contracted, remaining);
        let value = if parts.len() > 1 {
            parts
                .into_iter()
                .map(|p| self.eval(contracted, p))
                .max()
                .unwrap_or(0)
        } else {
            1 + remaining
                .iter()
                .map(|e| self.step(contracted, remaining, e))
                .min()
                .expect("connected minor has elements")
        };
        if let Some(c) = self.cache.as_mut() {
            c.insert(key, value);
        }
        value
    }
}

pub fn depth(m: &dyn Matroid, kind: DepthKind, cap: usize) -> Result<DepthReport> {
    Ok(DepthMemo::new(m, kind, cap)?.report())
}

pub fn contraction_depth(m: &dyn Matroid, cap: usize) -> Result<usize> {
    Ok(depth(m, DepthKind::Contraction, cap)?.value)
}

pub fn deletion_depth(m: &dyn Matroid, cap: usize) -> Result<usize> {
    Ok(depth(m, DepthKind::Deletion, cap)?.value)
}

pub fn altered_contraction_depth(m: &dyn Matroid, cap: usize) -> Result<usize> {
    Ok(depth(m, DepthKind::AlteredContraction, cap)?.value)
}

pub fn altered_deletion_depth(m: &dyn Matroid, cap: usize) -> Result<usize> {
    Ok(depth(m, DepthKind::AlteredDeletion, cap)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{dual, free, loops, Explicit, Graphic, MatroidRef, Uniform};
    use std::sync::Arc;

    const CAP: usize = 16;

    /// Direct transcription of the definition over explicit minor views,
    /// trying every element at every level; independent of the memo engine.
    fn brute_cd(m: &MatroidRef) -> usize {
        use crate::matroid::minor;
        if m.is_empty() {
            return 0;
        }
        if m.len() == 1 {
            return 1;
        }
        let parts = m.components(CAP).unwrap();
        if parts.len() > 1 {
            return parts
                .blocks
                .iter()
                .map(|b| {
                    let rest = m.ground() - *b;
                    brute_cd(&(Arc::new(minor(m, ElementSet::empty(), rest).unwrap()) as MatroidRef))
                })
                .max()
                .unwrap();
        }
        1 + (0..m.len())
            .map(|e| {
                let c = minor(m, ElementSet::singleton(e), ElementSet::empty()).unwrap();
                brute_cd(&(Arc::new(c) as MatroidRef))
            })
            .min()
            .unwrap()
    }

    #[test]
    fn contraction_depth_examples() {
        assert_eq!(contraction_depth(&loops(3), CAP).unwrap(), 1);
        assert_eq!(contraction_depth(&Uniform::new(3, 1).unwrap(), CAP).unwrap(), 2);
        let u32_: MatroidRef = Arc::new(Uniform::new(3, 2).unwrap());
        assert_eq!(brute_cd(&u32_), 3);
        assert_eq!(contraction_depth(u32_.as_ref(), CAP).unwrap(), 3);
        assert_eq!(contraction_depth(&free(0), CAP).unwrap(), 0);
    }

    #[test]
    fn memo_matches_brute_force_on_small_graphs() {
        let graphs = [
            Graphic::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
            Graphic::new(3, vec![(0, 1), (0, 1), (1, 2), (2, 2)]).unwrap(),
            Graphic::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
        ];
        for g in graphs {
            let m: MatroidRef = Arc::new(g);
            assert_eq!(contraction_depth(m.as_ref(), CAP).unwrap(), brute_cd(&m));
        }
    }

    #[test]
    fn deletion_depth_examples() {
        assert_eq!(deletion_depth(&free(1), CAP).unwrap(), 1);
        let m: MatroidRef = Arc::new(Uniform::new(3, 2).unwrap());
        let d = dual(&m);
        assert_eq!(deletion_depth(m.as_ref(), CAP).unwrap(), contraction_depth(&d, CAP).unwrap());
    }

    #[test]
    fn altered_examples() {
        assert_eq!(altered_contraction_depth(&free(1), CAP).unwrap(), 1);
        assert_eq!(altered_contraction_depth(&loops(1), CAP).unwrap(), 0);
        assert_eq!(altered_contraction_depth(&Uniform::new(3, 1).unwrap(), CAP).unwrap(), 1);
        assert_eq!(altered_deletion_depth(&loops(1), CAP).unwrap(), 1);
        assert_eq!(altered_deletion_depth(&free(1), CAP).unwrap(), 0);
        assert_eq!(altered_deletion_depth(&free(3), CAP).unwrap(), 0);
    }

    #[test]
    fn report_names_smallest_optimal_element() {
        let r = depth(&Uniform::new(3, 2).unwrap(), DepthKind::Contraction, CAP).unwrap();
        assert_eq!(r, DepthReport { value: 3, optimal_element: Some(0) });
        let r = depth(&free(2), DepthKind::Contraction, CAP).unwrap();
        assert_eq!(r.optimal_element, None);
        // a pendant edge on a triangle: the triangle dominates
        let g = Graphic::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(depth(&g, DepthKind::Contraction, CAP).unwrap().value, 3);
    }

    #[test]
    fn direct_sum_takes_component_maximum() {
        let a = Uniform::new(3, 2).unwrap();
        let b = Uniform::new(2, 1).unwrap();
        let s = Explicit::direct_sum(&a, &b).unwrap();
        assert_eq!(
            contraction_depth(&s, CAP).unwrap(),
            contraction_depth(&a, CAP).unwrap().max(contraction_depth(&b, CAP).unwrap())
        );
    }

    #[test]
    fn cached_and_uncached_agree() {
        let g = Graphic::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        for kind in DepthKind::ALL {
            let a = DepthMemo::new(&g, kind, CAP).unwrap().report();
            let b = DepthMemo::uncached(&g, kind, CAP).unwrap().report();
            assert_eq!(a, b, "{kind}");
        }
    }

    #[test]
    fn kind_parses() {
        assert_eq!("cd-alt".parse::<DepthKind>(), Ok(DepthKind::AlteredContraction));
        assert!("xd".parse::<DepthKind>().is_err());
    }
}
