use rayon::prelude::*;

use super::StarDecomposition;
use crate::bitset::{ElementSet, VertexSet};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, RankTable, DEFAULT_SUBSET_CAP};
use crate::tree::{rooted_trees, RootedTree, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// When set, only decompositions of depth at most this are sought.
    pub depth_cap: Option<usize>,
    pub rank_cap: usize,
    pub size_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            depth_cap: None,
            rank_cap: 6,
            size_cap: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub depth: usize,
    pub decomposition: StarDecomposition,
    pub trees_examined: usize,
    /// Partial assignments visited by the backtracking search.
    pub assignments_examined: u64,
}

/// Backtracking over element-to-leaf maps for one fixed tree.
struct LeafAssigner<'a> {
    table: &'a RankTable,
    tree: &'a RootedTree,
    leaves: Vec<Vertex>,
    /// Edge count of the upward closure of each set of leaf indices.
    closure: Vec<usize>,
    /// For each leaf index, the leaf indices interchangeable with it (leaf
    /// siblings), lowest first.
    group: Vec<Vec<usize>>,
    preimage: Vec<ElementSet>,
    nodes: u64,
}

impl<'a> LeafAssigner<'a> {
    fn new(table: &'a RankTable, tree: &'a RootedTree) -> Self {
        let leaves = tree.leaves();
        let k = leaves.len();
        let closure = (0u64..1 << k)
            .map(|mask| {
                let set: VertexSet = ElementSet::from_bits(mask).iter().map(|i| leaves[i]).collect();
                if set.is_empty() {
                    0
                } else {
                    tree.closure_edges_unchecked(set).len()
                }
            })
            .collect();
        let group = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| tree.parent(leaves[j]) == tree.parent(leaves[i]))
                    .collect()
            })
            .collect();
        LeafAssigner {
            table,
            tree,
            leaves,
            closure,
            group,
            preimage: vec![ElementSet::empty(); k],
            nodes: 0,
        }
    }

    /// Constraints for every leaf set containing `leaf`.
    fn consistent_at(&self, leaf: usize) -> bool {
        let k = self.leaves.len();
        let others = ElementSet::full(k).without(leaf);
        others.subsets().all(|rest| {
            let mask = rest.with(leaf);
            let elements = mask
                .iter()
                .fold(ElementSet::empty(), |acc, i| acc | self.preimage[i]);
            self.table.get(elements) <= self.closure[mask.bits() as usize]
        })
    }

    /// Sibling leaves are interchangeable, so only the first unused one of
    /// each sibling group is tried.
    fn admissible(&self, leaf: usize) -> bool {
        self.group[leaf]
            .iter()
            .take_while(|&&j| j < leaf)
            .all(|&j| !self.preimage[j].is_empty())
    }

    fn assign(&mut self, order: &[usize]) -> bool {
        let Some((&e, rest)) = order.split_first() else {
            return true;
        };
        for leaf in 0..self.leaves.len() {
            if !self.admissible(leaf) {
                continue;
            }
            self.nodes += 1;
            self.preimage[leaf].insert(e);
            if self.consistent_at(leaf) && self.assign(rest) {
                return true;
            }
            self.preimage[leaf].remove(e);
        }
        false
    }

    /// Lexicographically first valid assignment, loops pinned to the first leaf.
    fn solve(mut self) -> (Option<StarDecomposition>, u64) {
        let n = self.table.len();
        let loops: ElementSet = (0..n)
            .filter(|&e| self.table.get(ElementSet::singleton(e)) == 0)
            .collect();
        self.preimage[0] = loops;
        let order: Vec<usize> = (ElementSet::full(n) - loops).to_vec();
        if !self.assign(&order) {
            return (None, self.nodes);
        }
        let mut assignment = vec![0; n];
        for (i, set) in self.preimage.iter().enumerate() {
            for e in set.iter() {
                assignment[e] = self.leaves[i];
            }
        }
        let d = StarDecomposition::new(self.tree.clone(), assignment)
            .expect("search only maps elements to leaves");
        (Some(d), self.nodes)
    }
}

fn prepare(m: &dyn Matroid, opts: &SearchOptions) -> Result<RankTable> {
    if m.len() > opts.size_cap {
        return Err(Error::CapExceeded {
            what: "ground set for decomposition search",
            size: m.len(),
            cap: opts.size_cap,
        });
    }
    let r = m.full_rank();
    if r > opts.rank_cap {
        return Err(Error::CapExceeded {
            what: "rank for decomposition search",
            size: r,
            cap: opts.rank_cap,
        });
    }
    RankTable::build(m, DEFAULT_SUBSET_CAP.max(opts.size_cap))
}

/// Searches trees with `rank(M)` edges in order of depth and canonical
/// encoding; returns the first valid decomposition at the least depth, or
/// `None` if none exists within `depth_cap`.
pub fn csd_search(m: &dyn Matroid, opts: &SearchOptions) -> Result<Option<SearchReport>> {
    let table = prepare(m, opts)?;
    let trees = rooted_trees(table.full_rank());
    let max_depth = trees.last().map_or(0, |t| t.depth());
    let cap = opts.depth_cap.unwrap_or(max_depth).min(max_depth);
    let mut trees_examined = 0;
    let mut assignments_examined = 0;
    for depth in 0..=cap {
        let level: Vec<&RootedTree> = trees.iter().filter(|t| t.depth() == depth).collect();
        let results: Vec<_> = level
            .par_iter()
            .map(|t| LeafAssigner::new(&table, t).solve())
            .collect();
        trees_examined += level.len();
        assignments_examined += results.iter().map(|(_, n)| n).sum::<u64>();
        if let Some(d) = results.into_iter().find_map(|(d, _)| d) {
            return Ok(Some(SearchReport {
                depth,
                decomposition: d,
                trees_examined,
                assignments_examined,
            }));
        }
    }
    Ok(None)
}

/// The contraction*-depth of `m`.
pub fn csd(m: &dyn Matroid, opts: &SearchOptions) -> Result<usize> {
    let unbounded = SearchOptions {
        depth_cap: None,
        ..*opts
    };
    csd_search(m, &unbounded)?
        .map(|r| r.depth)
        .ok_or_else(|| Error::invalid("no contraction*-decomposition found"))
}

/// For every tree shape with `rank(M)` edges, the first valid decomposition
/// on that shape (if any), in search order.
pub fn valid_decompositions_by_shape(
    m: &dyn Matroid,
    opts: &SearchOptions,
) -> Result<Vec<StarDecomposition>> {
    let table = prepare(m, opts)?;
    let trees = rooted_trees(table.full_rank());
    Ok(trees
        .par_iter()
        .filter_map(|t| LeafAssigner::new(&table, t).solve().0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::is_valid;
    use crate::matroid::{free, loops, Explicit, Gf2, Uniform};
    use crate::tree::Vertex;

    /// Every map from elements to leaves on every tree, no pruning.
    fn brute_csd(m: &dyn Matroid) -> usize {
        let r = m.full_rank();
        let n = m.len();
        let mut best = usize::MAX;
        for t in rooted_trees(r) {
            let leaves = t.leaves();
            let total = leaves.len().pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let assignment: Vec<Vertex> = (0..n)
                    .map(|_| {
                        let l = leaves[c % leaves.len()];
                        c /= leaves.len();
                        l
                    })
                    .collect();
                let d = StarDecomposition::new(t.clone(), assignment).unwrap();
                if is_valid(m, &d).unwrap() {
                    best = best.min(t.depth());
                    break;
                }
            }
        }
        best
    }

    fn search(m: &dyn Matroid) -> SearchReport {
        csd_search(m, &SearchOptions::default()).unwrap().unwrap()
    }

    #[test]
    fn named_values() {
        assert_eq!(search(&Uniform::new(3, 1).unwrap()).depth, 1);
        assert_eq!(search(&loops(3)).depth, 0);
        assert_eq!(search(&Uniform::new(3, 2).unwrap()).depth, 2);
        assert_eq!(search(&free(3)).depth, 1);
        assert_eq!(search(&free(0)).depth, 0);
    }

    #[test]
    fn agrees_with_unpruned_enumeration() {
        let cases: Vec<Box<dyn Matroid>> = vec![
            Box::new(Uniform::new(4, 2).unwrap()),
            Box::new(Uniform::new(4, 3).unwrap()),
            Box::new(Gf2::from_bitstrings(3, &["100", "010", "110", "001", "000"]).unwrap()),
            Box::new(
                Explicit::direct_sum(&Uniform::new(2, 1).unwrap(), &Uniform::new(3, 2).unwrap())
                    .unwrap(),
            ),
        ];
        for m in cases {
            let report = search(m.as_ref());
            assert_eq!(report.depth, brute_csd(m.as_ref()), "{}", m.describe());
            assert!(is_valid(m.as_ref(), &report.decomposition).unwrap());
        }
    }

    #[test]
    fn depth_cap_turns_search_into_a_decision() {
        let u = Uniform::new(3, 2).unwrap();
        let capped = SearchOptions {
            depth_cap: Some(1),
            ..SearchOptions::default()
        };
        assert!(csd_search(&u, &capped).unwrap().is_none());
        assert_eq!(csd(&u, &capped).unwrap(), 2);
    }

    #[test]
    fn caps_are_enforced() {
        let big = free(7);
        assert!(csd_search(&big, &SearchOptions::default())
            .unwrap_err()
            .is_resource());
        let wide = Uniform::new(11, 1).unwrap();
        assert!(csd_search(&wide, &SearchOptions::default())
            .unwrap_err()
            .is_resource());
    }

    #[test]
    fn loops_go_to_the_first_leaf() {
        let m = Gf2::from_bitstrings(2, &["00", "10", "01", "00"]).unwrap();
        let d = search(&m).decomposition;
        let first = d.tree().leaves()[0];
        assert_eq!(d.leaf_of(0), first);
        assert_eq!(d.leaf_of(3), first);
    }

    #[test]
    fn one_decomposition_per_valid_shape() {
        let u = Uniform::new(3, 2).unwrap();
        let all = valid_decompositions_by_shape(&u, &SearchOptions::default()).unwrap();
        // only the path carries U(2,3)
        assert_eq!(all.len(), 1);
        let f = free(3);
        // three coloops fit on every 3-edge tree
        let all = valid_decompositions_by_shape(&f, &SearchOptions::default()).unwrap();
        assert!(all.iter().all(|d| is_valid(&f, d).unwrap()));
        assert_eq!(all.len(), rooted_trees(3).len());
    }
}
