//! Contraction*-decompositions: a rooted tree with `rank(M)` edges and a map
//! from elements to leaves such that, for every set of elements `X`, the
//! upward closure of the leaves used by `X` has at least `rank(X)` edges.

mod search;

pub use search::{csd, csd_search, valid_decompositions_by_shape, SearchOptions, SearchReport};

use crate::bitset::{ElementSet, VertexSet};
use crate::error::{Error, Result};
use crate::matroid::{ElementId, Matroid};
use crate::tree::{parse_dot, write_dot, RootedTree, Vertex};

/// Largest number of leaves for which validity is checked exhaustively.
pub const MAX_CHECKED_LEAVES: usize = 20;

/// The pair `(T, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDecomposition {
    tree: RootedTree,
    assignment: Vec<Vertex>,
}

impl StarDecomposition {
    /// Fails if some element is mapped to a vertex that is not a leaf.
    pub fn new(tree: RootedTree, assignment: Vec<Vertex>) -> Result<Self> {
        if let Some((e, &v)) = assignment
            .iter()
            .enumerate()
            .find(|(_, &v)| v >= tree.num_vertices() || !tree.is_leaf(v))
        {
            return Err(Error::InvalidDecomposition(format!(
                "element {e} is mapped to vertex {v}, which is not a leaf"
            )));
        }
        Ok(StarDecomposition { tree, assignment })
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn assignment(&self) -> &[Vertex] {
        &self.assignment
    }

    pub fn leaf_of(&self, e: ElementId) -> Vertex {
        self.assignment[e]
    }

    pub fn num_elements(&self) -> usize {
        self.assignment.len()
    }

    pub fn depth(&self) -> usize {
        self.tree.depth()
    }

    /// Elements mapped to exactly `v`.
    pub fn elements_at(&self, v: Vertex) -> ElementSet {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == v)
            .map(|(e, _)| e)
            .collect()
    }

    /// `T(v)`: elements mapped to leaves of `T[v]`.
    pub fn elements_under(&self, v: Vertex) -> ElementSet {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &l)| self.tree.order_leq(l, v))
            .map(|(e, _)| e)
            .collect()
    }

    /// `f(X)`.
    pub fn leaves_of(&self, set: ElementSet) -> VertexSet {
        set.iter().map(|e| self.assignment[e]).collect()
    }

    /// Per-vertex element labels, as drawn in DOT output.
    pub fn labels(&self) -> Vec<ElementSet> {
        (0..self.tree.num_vertices())
            .map(|v| self.elements_at(v))
            .collect()
    }

    pub fn to_dot(&self) -> String {
        write_dot(&self.tree, Some(&self.labels()))
    }

    /// Reads a decomposition written by [`StarDecomposition::to_dot`].
    pub fn from_dot(text: &str) -> Result<Self> {
        let parsed = parse_dot(text)?;
        let labels = parsed
            .elements
            .ok_or_else(|| Error::parse(0, "DOT file carries no element labels"))?;
        let n: usize = labels.iter().map(|s| s.len()).sum();
        let mut assignment = vec![usize::MAX; n];
        for (v, set) in labels.iter().enumerate() {
            for e in set.iter() {
                if e >= n || assignment[e] != usize::MAX {
                    return Err(Error::parse(0, format!("element {e} is labelled twice or out of range")));
                }
                assignment[e] = v;
            }
        }
        StarDecomposition::new(parsed.tree, assignment)
    }
}

fn check_shape(m: &dyn Matroid, d: &StarDecomposition) -> Result<()> {
    let r = m.full_rank();
    if d.tree.num_edges() != r {
        return Err(Error::InvalidDecomposition(format!(
            "tree has {} edges but the matroid has rank {r}",
            d.tree.num_edges()
        )));
    }
    if d.assignment.len() != m.len() {
        return Err(Error::InvalidDecomposition(format!(
            "assignment covers {} elements but the matroid has {}",
            d.assignment.len(),
            m.len()
        )));
    }
    Ok(())
}

/// Whether `d` is a contraction*-decomposition of `m`.
///
/// `T⟨f(X)⟩` depends only on the leaf set `f(X)`, and rank is monotone, so it
/// suffices to compare each non-empty leaf set `L` against `rank(f⁻¹(L))`.
pub fn is_valid(m: &dyn Matroid, d: &StarDecomposition) -> Result<bool> {
    check_shape(m, d)?;
    let leaves = d.tree.leaves();
    if leaves.len() > MAX_CHECKED_LEAVES {
        return Err(Error::CapExceeded {
            what: "leaf count for validity checking",
            size: leaves.len(),
            cap: MAX_CHECKED_LEAVES,
        });
    }
    let preimages: Vec<ElementSet> = leaves.iter().map(|&l| d.elements_at(l)).collect();
    let violated = (1u64..1 << leaves.len()).any(|mask| {
        let chosen = ElementSet::from_bits(mask);
        let leaf_set: VertexSet = chosen.iter().map(|i| leaves[i]).collect();
        let elements = chosen
            .iter()
            .fold(ElementSet::empty(), |acc, i| acc | preimages[i]);
        d.tree.closure_edges_unchecked(leaf_set).len() < m.rank_unchecked(elements)
    });
    Ok(!violated)
}

/// Like [`is_valid`] but turns an invalid decomposition into an error.
pub fn ensure_valid(m: &dyn Matroid, d: &StarDecomposition) -> Result<()> {
    if is_valid(m, d)? {
        Ok(())
    } else {
        Err(Error::InvalidDecomposition(
            "some set of elements has rank above its upward closure".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{loops, Uniform};

    #[test]
    fn path_with_all_elements_on_the_leaf() {
        let u = Uniform::new(3, 2).unwrap();
        let d = StarDecomposition::new(RootedTree::path(2), vec![2, 2, 2]).unwrap();
        assert!(is_valid(&u, &d).unwrap());
    }

    #[test]
    fn star_splitting_uniform_is_invalid() {
        let u = Uniform::new(3, 2).unwrap();
        let d = StarDecomposition::new(RootedTree::star(2), vec![1, 1, 2]).unwrap();
        assert!(!is_valid(&u, &d).unwrap());
        assert!(ensure_valid(&u, &d).is_err());
    }

    #[test]
    fn loops_on_the_lone_root() {
        let d = StarDecomposition::new(RootedTree::single_vertex(), vec![0, 0, 0]).unwrap();
        assert!(is_valid(&loops(3), &d).unwrap());
    }

    #[test]
    fn shape_errors() {
        let u = Uniform::new(3, 2).unwrap();
        let d = StarDecomposition::new(RootedTree::path(1), vec![1, 1, 1]).unwrap();
        assert!(matches!(is_valid(&u, &d), Err(Error::InvalidDecomposition(_))));
        assert!(StarDecomposition::new(RootedTree::path(2), vec![1, 2, 2]).is_err());
    }

    #[test]
    fn elements_under_examples() {
        // 0 - 1 - {2, 3}
        let t = RootedTree::from_parents(vec![None, Some(0), Some(1), Some(1)]).unwrap();
        let d = StarDecomposition::new(t, vec![2, 3, 3]).unwrap();
        assert_eq!(d.elements_under(0), ElementSet::full(3));
        assert_eq!(d.elements_under(3), ElementSet::from_iter([1, 2]));
        assert_eq!(d.elements_under(1), d.elements_under(2) | d.elements_under(3));
    }

    #[test]
    fn dot_round_trip() {
        let t = RootedTree::from_parents(vec![None, Some(0), Some(1), Some(1)]).unwrap();
        let d = StarDecomposition::new(t, vec![2, 3, 3, 2]).unwrap();
        assert_eq!(StarDecomposition::from_dot(&d.to_dot()).unwrap(), d);
    }
}
