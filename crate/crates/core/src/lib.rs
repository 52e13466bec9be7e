//! Exact tools for symmetrizable cyclotomic integer matrices.
//!
//! A square integer matrix is read as a charged, weighted digraph: vertex `i`
//! carries charge `a_ii`, and a nonzero pair `(a_ij, a_ji)` is an edge. The
//! crate decides symmetrizability, certifies that spectra lie in `[-2, 2]`,
//! computes canonical forms under signed permutations, generates the known
//! families and reruns the classification searches.

pub mod classify;
pub mod document;
pub mod equivalence;
pub mod error;
pub mod families;
pub mod matrix;
pub mod poly;
pub mod spectra;
pub mod symmetrize;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{Digraph, SurdMatrix, VertexSet};
pub use poly::{IntPolynomial, RootCount};
pub use symmetrize::{CycleViolation, Symmetrizer};
pub use equivalence::{CanonicalKey, SignedPermutation};
pub use families::{FamilyId, FamilyKind};
pub use classify::{ClassificationReport, SearchConstraints};
pub use document::DigraphDocument;
