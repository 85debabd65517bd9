//! Tamed sets of a contraction*-decomposition and the extension matroid they
//! form.
//!
//! The ground set of the extension is `M ∪ E(T)`: elements `0..n` are the
//! elements of `M`, and element `n + i` is the `i`-th tree edge in ascending
//! bottom-vertex order. A set is tamed when its matroid part is independent
//! and the token distribution below leaves no tokens at the root:
//!
//! * a leaf `v` receives `|X ∩ P| + rank_{M / comp T(v)}(X ∩ T(v))` tokens,
//!   where `P` holds the edges from `v` up to its nearest branching ancestor
//!   (or the root);
//! * an internal branching vertex receives the same quantity minus the sum of
//!   the rank terms of its topmost branching-or-leaf descendants;
//! * every other vertex receives nothing;
//! * then, bottom-up, each non-root vertex keeps one token and passes the
//!   rest to its parent.

mod export;

use std::fmt;
use std::sync::Arc;

pub use export::{extension_to_text, EdgeMapEntry};

use crate::bitset::{ElementSet, VertexSet};
use crate::decomposition::{ensure_valid, StarDecomposition};
use crate::error::Result;
use crate::matroid::{Matroid, MatroidRef, RankTable};
use crate::tree::{RootedTree, Vertex};

/// Deliberate corruptions of the construction, used to show that the
/// verification harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Branching vertices do not subtract the rank terms of their descendants.
    NoBranchSubtraction,
    /// Vertices keep every token instead of passing `k - 1` to the parent.
    NoSend,
    /// The matroid part is not required to be independent.
    NoIndependenceCheck,
}

impl Mutation {
    pub const ACTIVE: [Mutation; 3] = [
        Mutation::NoBranchSubtraction,
        Mutation::NoSend,
        Mutation::NoIndependenceCheck,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::None => "none",
            Mutation::NoBranchSubtraction => "no-branch-subtraction",
            Mutation::NoSend => "no-send",
            Mutation::NoIndependenceCheck => "no-independence-check",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        std::iter::once(Mutation::None)
            .chain(Mutation::ACTIVE)
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mutation {s:?}"))
    }
}

/// A subset of `M ∪ E(T)`, split into its two parts. Edges are named by
/// their bottom vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExtendedSet {
    pub matroid_part: ElementSet,
    pub edge_part: VertexSet,
}

impl ExtendedSet {
    pub fn new(matroid_part: ElementSet, edge_part: VertexSet) -> Self {
        ExtendedSet {
            matroid_part,
            edge_part,
        }
    }

    pub fn len(&self) -> usize {
        self.matroid_part.len() + self.edge_part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Tokens per vertex before and after distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenLedger {
    /// Tokens assigned to each vertex. Negative values only arise for sets
    /// whose matroid part is dependent.
    pub assigned: Vec<i64>,
    /// Tokens each vertex holds once distribution finishes (0 or 1 for a
    /// non-root vertex; the root's entry is 0, see `root_surplus`).
    pub kept: Vec<i64>,
    pub root_surplus: i64,
}

impl TokenLedger {
    pub fn total_assigned(&self) -> i64 {
        self.assigned.iter().sum()
    }
}

/// One step of the marking procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkStep {
    pub vertex: Vertex,
    pub held: i64,
    pub sent: i64,
}

/// Bottom-up distribution as a single post-order pass: a vertex holding `k`
/// tokens keeps `min(k, 1)` and passes `k - 1` up.
pub fn distribute(tree: &RootedTree, assigned: &[i64]) -> TokenLedger {
    distribute_with(tree, assigned, Mutation::None)
}

fn distribute_with(tree: &RootedTree, assigned: &[i64], mutation: Mutation) -> TokenLedger {
    let mut held = assigned.to_vec();
    let mut kept = vec![0; assigned.len()];
    for v in tree.postorder() {
        let Some(p) = tree.parent(v) else { continue };
        let k = held[v];
        if k <= 0 {
            continue;
        }
        if mutation == Mutation::NoSend {
            kept[v] = k;
        } else {
            kept[v] = 1;
            held[p] += k - 1;
        }
    }
    TokenLedger {
        assigned: assigned.to_vec(),
        kept,
        root_surplus: held[tree.root()],
    }
}

/// The marking loop: repeatedly pick the lowest-numbered unmarked non-root
/// vertex whose descendants are all marked and let it send `k - 1` tokens.
/// Returns the same ledger as [`distribute`] plus the step trace.
pub fn distribute_by_marking(tree: &RootedTree, assigned: &[i64]) -> (TokenLedger, Vec<MarkStep>) {
    let n = tree.num_vertices();
    let mut held = assigned.to_vec();
    let mut kept = vec![0; n];
    let mut marked = VertexSet::empty();
    let mut steps = Vec::new();
    loop {
        let ready = (0..n).find(|&v| {
            v != tree.root()
                && !marked.contains(v)
                && tree.subtree(v).without(v).is_subset(marked)
        });
        let Some(v) = ready else { break };
        let k = held[v];
        let sent = (k - 1).max(0);
        if k > 0 {
            kept[v] = 1;
            held[tree.parent(v).expect("non-root")] += sent;
        }
        marked.insert(v);
        steps.push(MarkStep { vertex: v, held: k, sent });
    }
    (
        TokenLedger {
            assigned: assigned.to_vec(),
            kept,
            root_surplus: held[tree.root()],
        },
        steps,
    )
}

/// A vertex that receives tokens: a leaf or an internal branching vertex.
#[derive(Debug, Clone)]
struct Site {
    vertex: Vertex,
    /// Edges from the vertex up to its nearest branching ancestor or the root.
    path: VertexSet,
    /// `T(v)`.
    under: ElementSet,
    /// `rank_M(complement of T(v))`.
    outside_rank: usize,
    /// Indices (into the site list) of the topmost branching-or-leaf
    /// descendants; empty for leaves.
    below: Vec<usize>,
}

/// The matroid `M^T` on `M ∪ E(T)` whose independent sets are the tamed sets.
#[derive(Debug, Clone)]
pub struct TamedExtension {
    base: MatroidRef,
    decomposition: StarDecomposition,
    sites: Vec<Site>,
    /// Bottom vertex of each edge element, by edge index.
    edges: Vec<Vertex>,
    mutation: Mutation,
}

impl TamedExtension {
    pub fn new(base: MatroidRef, decomposition: StarDecomposition) -> Result<Self> {
        TamedExtension::with_mutation(base, decomposition, Mutation::None)
    }

    pub fn with_mutation(
        base: MatroidRef,
        decomposition: StarDecomposition,
        mutation: Mutation,
    ) -> Result<Self> {
        ensure_valid(base.as_ref(), &decomposition)?;
        let tree = decomposition.tree();
        let ground = base.ground();
        let vertices: Vec<Vertex> = (0..tree.num_vertices())
            .filter(|&v| v != tree.root() && (tree.is_leaf(v) || tree.is_branching(v)))
            .collect();
        let sites = vertices
            .iter()
            .map(|&v| {
                let top = tree
                    .branching_or_root_ancestor(v)
                    .expect("site is not the root");
                let under = decomposition.elements_under(v);
                let below = tree
                    .top_branching_or_leaf_descendants(v)
                    .iter()
                    .map(|d| vertices.iter().position(|x| x == d).expect("descendant is a site"))
                    .collect();
                Site {
                    vertex: v,
                    path: tree.path_edges(v, top),
                    under,
                    outside_rank: base.rank_unchecked(ground - under),
                    below,
                }
            })
            .collect();
        let edges = tree.edges().to_vec();
        Ok(TamedExtension {
            base,
            decomposition,
            sites,
            edges,
            mutation,
        })
    }

    pub fn base(&self) -> &MatroidRef {
        &self.base
    }

    pub fn decomposition(&self) -> &StarDecomposition {
        &self.decomposition
    }

    pub fn tree(&self) -> &RootedTree {
        self.decomposition.tree()
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }

    pub fn base_len(&self) -> usize {
        self.base.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Combined index of the edge with bottom vertex `v`.
    pub fn edge_element(&self, v: Vertex) -> usize {
        self.base.len() + self.tree().edge_index(v).expect("vertex is not the root")
    }

    /// Bottom vertex of a combined index, if it names an edge.
    pub fn edge_of(&self, element: usize) -> Option<Vertex> {
        element
            .checked_sub(self.base.len())
            .and_then(|i| self.edges.get(i).copied())
    }

    /// Combined indices of the given tree edges.
    pub fn edge_elements(&self, edges: VertexSet) -> ElementSet {
        edges.iter().map(|v| self.edge_element(v)).collect()
    }

    /// All edge elements, i.e. `E(T)` as a subset of the extension.
    pub fn all_edges(&self) -> ElementSet {
        self.edge_elements(self.tree().edges())
    }

    pub fn split(&self, set: ElementSet) -> ExtendedSet {
        let n = self.base.len();
        ExtendedSet {
            matroid_part: set & ElementSet::full(n),
            edge_part: (set - ElementSet::full(n))
                .iter()
                .map(|i| self.edges[i - n])
                .collect(),
        }
    }

    pub fn combine(&self, set: &ExtendedSet) -> ElementSet {
        set.matroid_part | self.edge_elements(set.edge_part)
    }

    /// `rank_{M / comp T(v)}(part ∩ T(v))`.
    fn local_rank(&self, site: &Site, part: ElementSet) -> i64 {
        let ground = self.base.ground();
        let outside = ground - site.under;
        (self.base.rank_unchecked((part & site.under) | outside) - site.outside_rank) as i64
    }

    /// Tokens assigned to each vertex with respect to `set`.
    pub fn token_assignment(&self, set: &ExtendedSet) -> Vec<i64> {
        let local: Vec<i64> = self
            .sites
            .iter()
            .map(|s| self.local_rank(s, set.matroid_part))
            .collect();
        let mut assigned = vec![0; self.tree().num_vertices()];
        for (i, s) in self.sites.iter().enumerate() {
            let mut tokens = (set.edge_part & s.path).len() as i64 + local[i];
            if self.mutation != Mutation::NoBranchSubtraction {
                tokens -= s.below.iter().map(|&j| local[j]).sum::<i64>();
            }
            assigned[s.vertex] = tokens;
        }
        assigned
    }

    pub fn ledger(&self, set: &ExtendedSet) -> TokenLedger {
        distribute_with(self.tree(), &self.token_assignment(set), self.mutation)
    }

    pub fn is_tamed(&self, set: &ExtendedSet) -> bool {
        if self.mutation != Mutation::NoIndependenceCheck
            && self.base.rank_unchecked(set.matroid_part) != set.matroid_part.len()
        {
            return false;
        }
        self.ledger(set).root_surplus == 0
    }

    /// Tamed check on a combined-index set.
    pub fn is_tamed_set(&self, set: ElementSet) -> bool {
        self.is_tamed(&self.split(set))
    }

    /// Rank by exhaustive maximisation over subsets, tabulated for every
    /// subset. Agrees with the greedy oracle whenever tamed sets form a
    /// matroid, and stays meaningful for mutated constructions.
    pub fn rank_table(&self, cap: usize) -> Result<RankTable> {
        RankTable::from_independence(self.len(), cap, |s| self.is_tamed_set(s))
    }
}

impl Matroid for TamedExtension {
    fn len(&self) -> usize {
        self.base.len() + self.edges.len()
    }

    /// Greedy augmentation in ascending combined index order.
    fn rank_unchecked(&self, set: ElementSet) -> usize {
        let mut grown = ElementSet::empty();
        for e in set {
            if self.is_tamed_set(grown.with(e)) {
                grown.insert(e);
            }
        }
        grown.len()
    }

    fn describe(&self) -> String {
        format!(
            "tamed extension of {} by {} edges",
            self.base.describe(),
            self.edges.len()
        )
    }
}

/// Token ledger of `set` for the decomposition `d` of `m`.
pub fn token_assignment(
    m: &MatroidRef,
    d: &StarDecomposition,
    set: &ExtendedSet,
) -> Result<TokenLedger> {
    Ok(TamedExtension::new(m.clone(), d.clone())?.ledger(set))
}

pub fn is_tamed(m: &MatroidRef, d: &StarDecomposition, set: &ExtendedSet) -> Result<bool> {
    Ok(TamedExtension::new(m.clone(), d.clone())?.is_tamed(set))
}

pub fn extension(m: &MatroidRef, d: &StarDecomposition) -> Result<Arc<TamedExtension>> {
    Ok(Arc::new(TamedExtension::new(m.clone(), d.clone())?))
}
