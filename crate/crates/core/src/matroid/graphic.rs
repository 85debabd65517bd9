use super::{Matroid, UnionFind};
use crate::bitset::{ElementSet, MAX_BITS};
use crate::error::{Error, Result};

/// Cycle matroid of a multigraph. Element `i` is the `i`-th edge; a self-loop
/// is a matroid loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graphic {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graphic {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.len() > MAX_BITS {
            return Err(Error::invalid(format!("{} edges exceed the supported 64", edges.len())));
        }
        if let Some(&(u, v)) = edges.iter().find(|(u, v)| *u >= vertices || *v >= vertices) {
            return Err(Error::invalid(format!(
                "edge {u}-{v} references a vertex outside 0..{vertices}"
            )));
        }
        Ok(Graphic { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

impl Matroid for Graphic {
    fn len(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges in a spanning forest of the edge subset.
    fn rank_unchecked(&self, set: ElementSet) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        set.iter()
            .filter(|&e| {
                let (u, v) = self.edges[e];
                uf.union(u, v)
            })
            .count()
    }

    fn describe(&self) -> String {
        format!("graphic(vertices={}, edges={})", self.vertices, self.edges.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::minor;
    use std::sync::Arc;

    #[test]
    fn triangle_contracted_gives_parallel_pair() {
        let tri: Arc<dyn Matroid> =
            Arc::new(Graphic::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap());
        let m = minor(&tri, ElementSet::singleton(0), ElementSet::empty()).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.rank(ElementSet::singleton(0)).unwrap(), 1);
        assert_eq!(m.rank(ElementSet::singleton(1)).unwrap(), 1);
        assert_eq!(m.rank(ElementSet::full(2)).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_vertices() {
        assert!(Graphic::new(2, vec![(0, 2)]).is_err());
    }
}
