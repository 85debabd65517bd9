//! Exact matroid depth parameters at desk scale.
//!
//! The crate computes contraction-depth, deletion-depth and their altered
//! variants, searches for optimal contraction*-decompositions, builds the
//! extension matroid whose independent sets are the tamed sets of a
//! decomposition, and checks the surrounding theorems by exhaustive
//! enumeration over a reproducible corpus.

pub mod bitset;
pub mod cli;
pub mod decomposition;
pub mod depth;
pub mod error;
pub mod matroid;
pub mod tamed;
pub mod tree;
pub mod verify;

pub use bitset::{BitSet, ElementSet, VertexSet};
pub use error::{Error, Result};
pub use matroid::{ElementId, ElementKind, Matroid, MatroidRef};
