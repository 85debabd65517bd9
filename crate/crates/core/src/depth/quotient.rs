//! Contraction*-depth of a binary vector matroid through quotient spaces.
//!
//! A connected matroid with several elements is projected along every
//! one-dimensional subspace of its span; over GF(2) those are exactly the
//! non-zero vectors of the span. This recursion never builds a tree and serves
//! as an independent check on the decomposition search.

use std::collections::HashMap;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::{components_by_rank, gf2_rank, Gf2, Matroid};

pub fn csd_gf2_quotient(m: &Gf2, dim_cap: usize) -> Result<usize> {
    let dim = m.full_rank();
    if dim > dim_cap {
        return Err(Error::CapExceeded {
            what: "span dimension for the quotient recursion",
            size: dim,
            cap: dim_cap,
        });
    }
    let mut memo = HashMap::new();
    Ok(quotient_depth(m.columns().to_vec(), &mut memo))
}

/// Maps `v` to its class in `K / span{g}`: the pivot bit of `g` is cleared
/// from every vector, which is a linear projection with kernel `{0, g}`.
fn project(vectors: &[u64], g: u64) -> Vec<u64> {
    let pivot = 63 - g.leading_zeros();
    vectors
        .iter()
        .map(|&v| if v >> pivot & 1 == 1 { v ^ g } else { v })
        .collect()
}

/// Every non-zero vector in the span of `vectors`.
fn span_vectors(vectors: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let reduced = basis.iter().fold(v, |acc, &b| acc.min(acc ^ b));
        if reduced != 0 {
            basis.push(reduced);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    (1u64..1 << basis.len())
        .map(|mask| {
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, &b)| acc ^ b)
        })
        .collect()
}

fn quotient_depth(mut vectors: Vec<u64>, memo: &mut HashMap<Vec<u64>, usize>) -> usize {
    match vectors.as_slice() {
        [] => return 0,
        [v] => return usize::from(*v != 0),
        _ => {}
    }
    vectors.sort_unstable();
    if let Some(&v) = memo.get(&vectors) {
        return v;
    }
    let ground = ElementSet::full(vectors.len());
    let pick = |s: ElementSet| s.iter().map(|i| vectors[i]).collect::<Vec<_>>();
    let parts = components_by_rank(ground, |s| gf2_rank(s.iter().map(|i| vectors[i])));
    let value = if parts.len() > 1 {
        parts
            .into_iter()
            .map(|p| quotient_depth(pick(p), memo))
            .max()
            .unwrap_or(0)
    } else {
        1 + span_vectors(&vectors)
            .into_iter()
            .map(|g| quotient_depth(project(&vectors, g), memo))
            .min()
            .expect("connected matroid with two elements has a non-zero span")
    };
    memo.insert(vectors, value);
    value
}
