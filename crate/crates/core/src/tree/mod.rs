//! Rooted trees with the ancestor order, upward closures and branching
//! structure used by contraction*-decompositions.
//!
//! An edge is named by its bottom (child) vertex, so edge sets and vertex
//! sets share the [`VertexSet`] representation.

mod dot;
mod enumerate;

pub use dot::{parse_dot, write_dot, DotTree};
pub use enumerate::{count_rooted_trees, rooted_trees};

use crate::bitset::{VertexSet, MAX_BITS};
use crate::error::{Error, Result};

/// Vertex index, dense in `0..num_vertices`.
pub type Vertex = usize;

/// An edge, identified with its bottom vertex.
pub type EdgeId = Vertex;

/// A rooted tree stored as a parent array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<Vertex>>,
    root: Vertex,
    children: Vec<Vec<Vertex>>,
    /// `up[v]` holds `v` and all of its ancestors.
    up: Vec<VertexSet>,
}

/// Summary of a tree's shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStats {
    pub height: usize,
    pub depth: usize,
    pub leaves: Vec<Vertex>,
    pub branching: Vec<Vertex>,
    pub internal_branching: Vec<Vertex>,
}

impl RootedTree {
    /// Builds a tree from `parent[v]`, with `None` marking the root.
    pub fn from_parents(parent: Vec<Option<Vertex>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::invalid("a rooted tree needs at least one vertex"));
        }
        if n > MAX_BITS {
            return Err(Error::invalid(format!("{n} vertices exceed the supported 64")));
        }
        let roots: Vec<_> = (0..n).filter(|&v| parent[v].is_none()).collect();
        let root = match roots.as_slice() {
            [r] => *r,
            _ => {
                return Err(Error::invalid(format!(
                    "expected exactly one root, found {}",
                    roots.len()
                )))
            }
        };
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == v {
                    return Err(Error::invalid(format!("vertex {v} has invalid parent {p}")));
                }
                children[p].push(v);
            }
        }
        // walk down from the root; anything unreached sits on a cycle
        let mut up = vec![VertexSet::empty(); n];
        let mut seen = 0;
        let mut stack = vec![root];
        up[root] = VertexSet::singleton(root);
        while let Some(v) = stack.pop() {
            seen += 1;
            for &c in &children[v] {
                up[c] = up[v].with(c);
                stack.push(c);
            }
        }
        if seen != n {
            return Err(Error::invalid("parent links contain a cycle"));
        }
        Ok(RootedTree {
            parent,
            root,
            children,
            up,
        })
    }

    pub fn single_vertex() -> Self {
        RootedTree::from_parents(vec![None]).expect("single vertex tree")
    }

    /// Path `0 - 1 - .. - edges` rooted at 0.
    pub fn path(edges: usize) -> Self {
        let parent = (0..=edges).map(|v| v.checked_sub(1)).collect();
        RootedTree::from_parents(parent).expect("path is a tree")
    }

    /// Root 0 with `leaves` children.
    pub fn star(leaves: usize) -> Self {
        let parent = (0..=leaves).map(|v| (v > 0).then_some(0)).collect();
        RootedTree::from_parents(parent).expect("star is a tree")
    }

    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    pub fn num_edges(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<Vertex>] {
        &self.parent
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.num_vertices())
    }

    /// Edges, i.e. the non-root vertices.
    pub fn edges(&self) -> VertexSet {
        self.vertices().without(self.root)
    }

    /// Position of edge `v` among all edges in ascending bottom-vertex order.
    pub fn edge_index(&self, v: EdgeId) -> Option<usize> {
        (v != self.root && v < self.num_vertices())
            .then(|| (self.edges().bits() & ((1u64 << v) - 1)).count_ones() as usize)
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.children[v].is_empty()
    }

    pub fn is_branching(&self, v: Vertex) -> bool {
        self.children[v].len() >= 2
    }

    pub fn is_internal_branching(&self, v: Vertex) -> bool {
        v != self.root && self.is_branching(v)
    }

    /// `u ≼ v`: `u == v` or `v` is an ancestor of `u`.
    pub fn order_leq(&self, u: Vertex, v: Vertex) -> bool {
        self.up[u].contains(v)
    }

    /// `v` together with all of its ancestors.
    pub fn ancestors_inclusive(&self, v: Vertex) -> VertexSet {
        self.up[v]
    }

    /// Edges on the path from `v` to the root.
    pub fn root_path_edges(&self, v: Vertex) -> VertexSet {
        self.up[v].without(self.root)
    }

    /// Edges on the path from `v` up to its ancestor `top`.
    pub fn path_edges(&self, v: Vertex, top: Vertex) -> VertexSet {
        debug_assert!(self.order_leq(v, top));
        self.up[v] - self.up[top]
    }

    /// Edge set of `T⟨A⟩`, the smallest subtree containing the root and `A`.
    pub fn upward_closure_edges(&self, set: VertexSet) -> Result<VertexSet> {
        if set.is_empty() {
            return Err(Error::invalid("upward closure of the empty vertex set"));
        }
        if !set.is_subset(self.vertices()) {
            return Err(Error::invalid(format!("vertex set {set} is not inside the tree")));
        }
        Ok(self.closure_edges_unchecked(set))
    }

    pub(crate) fn closure_edges_unchecked(&self, set: VertexSet) -> VertexSet {
        set.iter()
            .fold(VertexSet::empty(), |acc, v| acc | self.up[v])
            .without(self.root)
    }

    /// Vertices of `T[v]`.
    pub fn subtree(&self, v: Vertex) -> VertexSet {
        (0..self.num_vertices())
            .filter(|&u| self.order_leq(u, v))
            .collect()
    }

    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.num_vertices()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn leaves_under(&self, v: Vertex) -> VertexSet {
        self.subtree(v)
            .iter()
            .filter(|&u| self.is_leaf(u))
            .collect()
    }

    /// Maximum number of edges on a root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.up.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    /// Maximum number of vertices on a root-to-leaf path.
    pub fn height(&self) -> usize {
        self.depth() + 1
    }

    /// Height of `T[v]` viewed as a rooted tree.
    pub fn height_below(&self, v: Vertex) -> usize {
        let base = self.up[v].len();
        self.subtree(v)
            .iter()
            .map(|u| self.up[u].len() - base + 1)
            .max()
            .unwrap_or(1)
    }

    pub fn stats(&self) -> TreeStats {
        let all = 0..self.num_vertices();
        TreeStats {
            height: self.height(),
            depth: self.depth(),
            leaves: self.leaves(),
            branching: all.clone().filter(|&v| self.is_branching(v)).collect(),
            internal_branching: all.filter(|&v| self.is_internal_branching(v)).collect(),
        }
    }

    /// The `≼`-maximal proper descendants of `v` that are branching vertices
    /// or leaves: one per child, found by following single-child chains.
    pub fn top_branching_or_leaf_descendants(&self, v: Vertex) -> Vec<Vertex> {
        self.children[v]
            .iter()
            .map(|&c| {
                let mut u = c;
                while let [only] = self.children[u].as_slice() {
                    u = *only;
                }
                u
            })
            .collect()
    }

    /// The `≼`-minimal proper ancestor of `v` that is branching or the root.
    pub fn branching_or_root_ancestor(&self, v: Vertex) -> Option<Vertex> {
        let mut u = self.parent[v]?;
        while u != self.root && !self.is_branching(u) {
            u = self.parent[u].expect("non-root vertex has a parent");
        }
        Some(u)
    }

    /// Vertices in pre-order, children visited in ascending index order.
    pub fn preorder(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.num_vertices());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            let mut kids = self.children[v].clone();
            kids.sort_unstable_by(|a, b| b.cmp(a));
            stack.extend(kids);
        }
        out
    }

    /// Vertices in an order where every vertex follows all of its descendants.
    pub fn postorder(&self) -> Vec<Vertex> {
        let mut order = self.preorder();
        order.reverse();
        order
    }

    /// Canonical level sequence: pre-order depths with sibling subtrees
    /// sorted by decreasing encoding. Equal for isomorphic rooted trees.
    pub fn level_sequence(&self) -> Vec<u8> {
        fn encode(t: &RootedTree, v: Vertex, level: u8) -> Vec<u8> {
            let mut kids: Vec<Vec<u8>> = t.children[v]
                .iter()
                .map(|&c| encode(t, c, level + 1))
                .collect();
            kids.sort_unstable_by(|a, b| b.cmp(a));
            std::iter::once(level).chain(kids.into_iter().flatten()).collect()
        }
        encode(self, self.root, 0)
    }

    /// Rebuilds a tree from a level sequence (root at level 0, pre-order).
    pub fn from_level_sequence(levels: &[u8]) -> Result<Self> {
        if levels.first() != Some(&0) || levels[1..].contains(&0) {
            return Err(Error::invalid("level sequence must start with the only 0"));
        }
        let mut parent = vec![None; levels.len()];
        let mut last_at: Vec<Vertex> = vec![0];
        for (v, &l) in levels.iter().enumerate().skip(1) {
            let l = l as usize;
            if l > last_at.len() {
                return Err(Error::invalid(format!("level jumps to {l} at position {v}")));
            }
            parent[v] = Some(last_at[l - 1]);
            last_at.truncate(l);
            last_at.push(v);
        }
        RootedTree::from_parents(parent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// root 0 - 1; 1 has leaf children 2 and 3
    fn fork() -> RootedTree {
        RootedTree::from_parents(vec![None, Some(0), Some(1), Some(1)]).unwrap()
    }

    #[test]
    fn rejects_non_trees() {
        assert!(RootedTree::from_parents(vec![]).is_err());
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(1)]).is_err());
    }

    #[test]
    fn order_examples() {
        let p = RootedTree::path(2);
        assert!(p.order_leq(1, 1));
        assert!(p.order_leq(2, 0));
        assert!(!p.order_leq(0, 2));
        let s = RootedTree::star(2);
        assert!(!s.order_leq(1, 2));
        assert!(!s.order_leq(2, 1));
    }

    #[test]
    fn upward_closure_examples() {
        let p = RootedTree::path(2);
        assert_eq!(
            p.upward_closure_edges(VertexSet::singleton(2)).unwrap(),
            VertexSet::from_iter([1, 2])
        );
        let s = RootedTree::star(2);
        assert_eq!(s.upward_closure_edges(VertexSet::singleton(1)).unwrap().len(), 1);
        assert!(s.upward_closure_edges(VertexSet::empty()).is_err());
        // two leaves under a shared branching vertex: both leaf edges plus the
        // trunk edge, counted once
        let f = fork();
        assert_eq!(
            f.upward_closure_edges(VertexSet::from_iter([2, 3])).unwrap(),
            VertexSet::from_iter([1, 2, 3])
        );
    }

    #[test]
    fn stats_examples() {
        let single = RootedTree::single_vertex();
        let st = single.stats();
        assert_eq!((st.height, st.depth), (1, 0));
        assert_eq!(st.leaves, vec![0]);
        let p = RootedTree::path(2).stats();
        assert_eq!((p.height, p.depth), (3, 2));
        assert!(p.branching.is_empty());
        assert_eq!(fork().stats().internal_branching, vec![1]);
    }

    #[test]
    fn branching_descendants_and_ancestors() {
        // 0 - 1 - 2 - {3, 4 - 5}
        let t = RootedTree::from_parents(vec![None, Some(0), Some(1), Some(2), Some(2), Some(4)])
            .unwrap();
        assert_eq!(t.top_branching_or_leaf_descendants(0), vec![2]);
        let mut below = t.top_branching_or_leaf_descendants(2);
        below.sort();
        assert_eq!(below, vec![3, 5]);
        assert_eq!(t.branching_or_root_ancestor(5), Some(2));
        assert_eq!(t.branching_or_root_ancestor(2), Some(0));
        assert_eq!(t.branching_or_root_ancestor(0), None);
        assert_eq!(t.path_edges(5, 2), VertexSet::from_iter([4, 5]));
        assert_eq!(t.height_below(2), 3);
        assert_eq!(t.edge_index(3), Some(2));
    }

    #[test]
    fn level_sequence_round_trip() {
        let t = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(2)]).unwrap();
        let seq = t.level_sequence();
        assert_eq!(seq, vec![0, 1, 2, 1]);
        let back = RootedTree::from_level_sequence(&seq).unwrap();
        assert_eq!(back.level_sequence(), seq);
        assert!(RootedTree::from_level_sequence(&[0, 2]).is_err());
    }

    #[test]
    fn orders_visit_every_vertex() {
        let t = fork();
        assert_eq!(t.preorder(), vec![0, 1, 2, 3]);
        let post = t.postorder();
        for v in 0..4 {
            let pos = post.iter().position(|&x| x == v).unwrap();
            for u in t.subtree(v).iter().filter(|&u| u != v) {
                assert!(post.iter().position(|&x| x == u).unwrap() < pos);
            }
        }
    }
}
