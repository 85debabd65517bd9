use super::Matroid;
use crate::bitset::{ElementSet, MAX_BITS};
use crate::error::{Error, Result};

/// The uniform matroid `U(r, n)`: every set of at most `r` elements is independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Uniform {
    n: usize,
    r: usize,
}

impl Uniform {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n > MAX_BITS {
            return Err(Error::invalid(format!("uniform matroid with {n} elements is too large")));
        }
        if r > n {
            return Err(Error::invalid(format!("uniform rank {r} exceeds size {n}")));
        }
        Ok(Uniform { n, r })
    }

    pub fn rank_bound(&self) -> usize {
        self.r
    }
}

impl Matroid for Uniform {
    fn len(&self) -> usize {
        self.n
    }

    fn rank_unchecked(&self, set: ElementSet) -> usize {
        set.len().min(self.r)
    }

    fn describe(&self) -> String {
        format!("uniform(n={}, r={})", self.n, self.r)
    }
}
