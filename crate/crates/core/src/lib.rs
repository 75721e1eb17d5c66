//! Inference with idempotent valuations.
//!
//! Knowledge is a pool of valuations, each represented by simple basic
//! valuations; single-variable marginals are computed by successive variable
//! deletion. Two instantiations are provided with exact cross-checking
//! oracles:
//!
//! - finite frames: explicit sets, with generalized clauses (lower) and
//!   tuples (upper) as basics;
//! - rational polytopes in the unit hypercube: half-spaces (lower, deleted
//!   by Fourier–Motzkin elimination) and vertices (upper).

pub mod axioms;
pub mod engine;
pub mod finite;
pub mod index_set;
pub mod kb;
pub mod polytope;
pub mod rep;
pub mod system;
pub mod vars;

pub use index_set::IndexSet;
pub use rep::{CapacityError, RepKind, Represented};
pub use system::IdempotentSystem;
pub use vars::{VarId, VarTable};
