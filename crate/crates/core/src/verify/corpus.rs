//! The reproducible set of small matroids every check runs over.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::matroid::{free, loops, Explicit, Matroid, MatroidFile, MatroidRef, Uniform};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Uniform,
    Graphic,
    Gf2,
    DirectSum,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub family: Family,
    pub file: MatroidFile,
    pub matroid: MatroidRef,
}

impl CorpusEntry {
    pub fn from_file(label: impl Into<String>, family: Family, file: MatroidFile) -> Result<Self> {
        let matroid = file.build()?;
        Ok(CorpusEntry {
            label: label.into(),
            family,
            file,
            matroid,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub seed: u64,
    pub entries: Vec<CorpusEntry>,
}

/// Random binary matroids drawn per seed.
pub const RANDOM_GF2_MEMBERS: usize = 16;
/// Largest uniform ground set and largest multigraph edge count.
pub const MAX_UNIFORM_SIZE: usize = 6;
pub const MAX_GRAPH_EDGES: usize = 5;

impl Corpus {
    pub fn generate(seed: u64) -> Corpus {
        let mut entries = Vec::new();
        for n in 1..=MAX_UNIFORM_SIZE {
            for r in 0..=n {
                let file = MatroidFile::Uniform { n, r };
                entries.push(entry(format!("uniform({n},{r})"), Family::Uniform, file));
            }
        }
        for (vertices, edges) in multigraphs(MAX_GRAPH_EDGES) {
            let shown: Vec<String> = edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            let label = format!("graphic[{}]", shown.join(" "));
            entries.push(entry(label, Family::Graphic, MatroidFile::Graphic { vertices, edges }));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..RANDOM_GF2_MEMBERS {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(2..=6);
            let columns = (0..cols).map(|_| rng.gen::<u64>() & ((1 << rows) - 1)).collect();
            entries.push(entry(format!("gf2-random-{i}"), Family::Gf2, MatroidFile::Gf2 { rows, columns }));
        }
        for (label, sum) in direct_sums() {
            let file = MatroidFile::Explicit {
                n: sum.len(),
                bases: sum.bases_list().to_vec(),
            };
            entries.push(entry(label, Family::DirectSum, file));
        }
        Corpus { seed, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn entry(label: String, family: Family, file: MatroidFile) -> CorpusEntry {
    CorpusEntry::from_file(label, family, file).expect("corpus members are well formed")
}

fn direct_sums() -> Vec<(String, Explicit)> {
    let u21 = || Uniform::new(2, 1).unwrap();
    let sum = |a: &dyn Matroid, b: &dyn Matroid| Explicit::direct_sum(a, b).unwrap();
    vec![
        ("uniform(2,1)+uniform(2,1)".into(), sum(&u21(), &u21())),
        ("uniform(2,1)+uniform(3,2)".into(), sum(&u21(), &Uniform::new(3, 2).unwrap())),
        ("uniform(3,1)+free(1)".into(), sum(&Uniform::new(3, 1).unwrap(), &free(1))),
        ("uniform(3,2)+loops(1)".into(), sum(&Uniform::new(3, 2).unwrap(), &loops(1))),
        ("uniform(4,2)+uniform(2,1)".into(), sum(&Uniform::new(4, 2).unwrap(), &u21())),
        (
            "uniform(2,1)+uniform(2,1)+uniform(2,1)".into(),
            sum(&sum(&u21(), &u21()), &u21()),
        ),
    ]
}

/// Connected loopless multigraphs with `1..=max_edges` edges, one per
/// isomorphism class, as `(vertex count, edge list)`.
pub fn multigraphs(max_edges: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    let mut seen = BTreeSet::new();
    for edges in 1..=max_edges {
        for vertices in 2..=edges + 1 {
            let pairs: Vec<(usize, usize)> = (0..vertices)
                .flat_map(|u| (u + 1..vertices).map(move |v| (u, v)))
                .collect();
            for choice in multisets(pairs.len(), edges) {
                let list: Vec<(usize, usize)> = choice.iter().map(|&i| pairs[i]).collect();
                if connected(vertices, &list) {
                    seen.insert((edges, vertices, canonical(vertices, &list)));
                }
            }
        }
    }
    seen.into_iter().map(|(_, v, e)| (v, e)).collect()
}

/// Non-decreasing index sequences of length `k` over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

fn connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
    let mut reach = 1u64;
    loop {
        let grown = edges.iter().fold(reach, |acc, &(u, v)| {
            if acc >> u & 1 == 1 || acc >> v & 1 == 1 {
                acc | 1 << u | 1 << v
            } else {
                acc
            }
        });
        if grown == reach {
            return reach.count_ones() as usize == vertices;
        }
        reach = grown;
    }
}

/// Lexicographically least sorted edge list over all vertex relabellings.
fn canonical(vertices: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..vertices).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut relabelled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        relabelled.sort_unstable();
        if best.as_ref().is_none_or(|b| relabelled < *b) {
            best = Some(relabelled);
        }
        if !next_permutation(&mut perm) {
            return best.expect("at least one permutation");
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = Corpus::generate(7);
        let b = Corpus::generate(7);
        let files = |c: &Corpus| c.entries.iter().map(|e| e.file.clone()).collect::<Vec<_>>();
        assert_eq!(files(&a), files(&b));
        assert_ne!(files(&a), files(&Corpus::generate(8)));
    }

    #[test]
    fn multigraph_counts() {
        // connected loopless multigraphs by edge count (OEIS A076864)
        let counts: Vec<usize> = (1..=5)
            .map(|k| multigraphs(k).len() - if k > 1 { multigraphs(k - 1).len() } else { 0 })
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 12, 33]);
    }

    #[test]
    fn members_within_caps() {
        for e in Corpus::generate(0).entries {
            assert!(e.matroid.len() <= 10, "{}", e.label);
            assert!(e.matroid.full_rank() <= 6, "{}", e.label);
        }
    }
}
