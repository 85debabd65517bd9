use super::RootedTree;

/// Level sequences of all rooted trees on `vertices` vertices, one per
/// isomorphism class, in decreasing lexicographic order.
fn shapes(vertices: usize, memo: &mut Vec<Option<Vec<Vec<u8>>>>) -> Vec<Vec<u8>> {
    if memo.len() <= vertices {
        memo.resize(vertices + 1, None);
    }
    if let Some(done) = &memo[vertices] {
        return done.clone();
    }
    let result = if vertices == 1 {
        vec![vec![0]]
    } else {
        // every child subtree, shifted one level down, sorted by decreasing code
        let mut pool: Vec<Vec<u8>> = (1..vertices)
            .flat_map(|k| shapes(k, memo))
            .map(|s| s.into_iter().map(|l| l + 1).collect())
            .collect();
        pool.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        forests(&pool, 0, vertices - 1, &mut chosen, &mut out);
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    };
    memo[vertices] = Some(result.clone());
    result
}

/// Multisets of pool entries (non-increasing pool index order) with total
/// size `remaining`, each emitted as a level sequence under a new root.
fn forests(
    pool: &[Vec<u8>],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<u8>>,
) {
    if remaining == 0 {
        let mut seq = vec![0u8];
        for &i in chosen.iter() {
            seq.extend_from_slice(&pool[i]);
        }
        out.push(seq);
        return;
    }
    for i in start..pool.len() {
        if pool[i].len() <= remaining {
            chosen.push(i);
            forests(pool, i, remaining - pool[i].len(), chosen, out);
            chosen.pop();
        }
    }
}

/// All rooted trees with `edges` edges up to root-preserving isomorphism,
/// ordered by depth and then by canonical level sequence. Vertices are
/// numbered in pre-order, so the root is 0.
pub fn rooted_trees(edges: usize) -> Vec<RootedTree> {
    let mut memo = Vec::new();
    let mut trees: Vec<RootedTree> = shapes(edges + 1, &mut memo)
        .iter()
        .map(|seq| RootedTree::from_level_sequence(seq).expect("generated level sequence"))
        .collect();
    trees.sort_by_cached_key(|t| (t.depth(), t.level_sequence()));
    trees
}

pub fn count_rooted_trees(edges: usize) -> usize {
    shapes(edges + 1, &mut Vec::new()).len()
}
