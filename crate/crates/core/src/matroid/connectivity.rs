use crate::bitset::ElementSet;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Classes restricted to `members`, ordered by smallest element.
    pub fn classes(&mut self, members: ElementSet) -> Vec<ElementSet> {
        let mut out: Vec<(usize, ElementSet)> = Vec::new();
        for e in members {
            let root = self.find(e);
            match out.iter_mut().find(|(r, _)| *r == root) {
                Some((_, set)) => set.insert(e),
                None => out.push((root, ElementSet::singleton(e))),
            }
        }
        out.into_iter().map(|(_, s)| s).collect()
    }
}

/// Components of the restriction to `ground` of the matroid with rank
/// function `rank`.
///
/// A greedy basis `B` is grown in index order; each non-basis element `e` that
/// is not a loop is joined with every `b` in its fundamental circuit, i.e.
/// every `b` for which `B - b + e` is again a basis. The connected classes of
/// that relation are exactly the components. Uses `O(|ground| * rank)` oracle
/// calls.
pub fn components_by_rank(
    ground: ElementSet,
    rank: impl Fn(ElementSet) -> usize,
) -> Vec<ElementSet> {
    let mut basis = ElementSet::empty();
    for e in ground {
        let grown = basis.with(e);
        if rank(grown) == grown.len() {
            basis = grown;
        }
    }
    let r = basis.len();
    let mut uf = UnionFind::new(ground.width());
    for e in ground - basis {
        if rank(ElementSet::singleton(e)) == 0 {
            continue;
        }
        for b in basis {
            if rank(basis.without(b).with(e)) == r {
                uf.union(e, b);
            }
        }
    }
    uf.classes(ground)
}

/// Components as classes of the "share a circuit" relation over an explicit
/// circuit list.
pub fn components_from_circuits(ground: ElementSet, circuits: &[ElementSet]) -> Vec<ElementSet> {
    let mut uf = UnionFind::new(ground.width());
    for c in circuits {
        let mut it = c.iter();
        if let Some(first) = it.next() {
            for e in it {
                uf.union(first, e);
            }
        }
    }
    uf.classes(ground)
}
