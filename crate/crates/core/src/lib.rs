//! Union-find with a proof-producing `explain` operation.
//!
//! The crate maintains the equivalence closure of a sequence of merges over
//! the elements `0..n` and, for any two equivalent elements, produces an
//! [`EqProof`] certificate that can be validated by [`check`] against the
//! chronological log of effective unions.
//!
//! Layers, from most obviously correct to fastest:
//!
//! - [`uf_core`]: the signed-integer forest ([`IntForest`]) and a
//!   path-compressing forest ([`CompressedForest`]).
//! - [`certificates`]: proof terms, the checker, and a brute-force closure
//!   oracle.
//! - [`ufe_log`]: the functional state ([`UfeState`]) with rollback and the
//!   naive, log-scanning explain.
//! - [`ufe_fast`]: edge annotations, lowest common ancestors, and the
//!   path-based explain.
//! - [`engine`]: the array-backed [`Engine`] used in practice.
#![no_std]

extern crate alloc;

pub mod certificates;
pub mod engine;
mod error;
pub mod ufe_fast;
pub mod ufe_log;
pub mod uf_core;

pub use certificates::{check, equiv_closure, proof_stats, CheckError, EqProof, ProofStats, Relation, Step};
pub use engine::{DynArray, Engine};
pub use error::UfError;
pub use ufe_fast::{explain_fast, AssocUnions, ExplainForest};
pub use ufe_log::{UfeState, UnionOutcome, UnionPolicy};
pub use uf_core::{CompressedForest, IntForest, Link};

/// Index of an element of a union-find structure over `0..n`.
pub type Elem = usize;

/// A union as it was requested, `(a, b)`.
pub type Union = (Elem, Elem);
