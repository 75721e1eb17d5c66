//! Represented valuations: a scope plus a finite set of basic valuations.
//!
//! A lower representation denotes the combination of its basics; an upper
//! representation denotes their disjunction. The scope is carried separately
//! from the basics so that extension never rewrites them: lifting a
//! representation to a larger scope only grows the scope annotation.

use crate::index_set::IndexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepKind {
    /// Combination of weak basics (clauses, half-spaces).
    Lower,
    /// Disjunction of strong basics (tuples, vertices).
    Upper,
}

impl std::fmt::Display for RepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RepKind::Lower => write!(f, "lower"),
            RepKind::Upper => write!(f, "upper"),
        }
    }
}

/// A valuation given by basic valuations. Every basic's scope is contained
/// in `scope`; the annotation may be strictly larger (lazy extension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Represented<B> {
    pub scope: IndexSet,
    pub basics: Vec<B>,
}

impl<B> Represented<B> {
    pub fn new(scope: IndexSet, basics: Vec<B>) -> Self {
        Self { scope, basics }
    }

    /// Extension: only the scope annotation grows.
    pub fn extend(&self, to: &IndexSet) -> Self
    where
        B: Clone,
    {
        assert!(self.scope.is_subset(to), "extension target must contain the scope");
        Self {
            scope: to.clone(),
            basics: self.basics.clone(),
        }
    }
}

/// What every basic valuation offers the engine: a scope, value semantics
/// and a canonical order (used for deterministic pooling and output).
pub trait Basic: Clone + Eq + Ord + std::hash::Hash + std::fmt::Debug {
    fn scope(&self) -> &IndexSet;
}

/// A basic valuation together with the inputs that produced it. Carried
/// pass-throughs have no parents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Production<B> {
    pub basic: B,
    pub parents: Vec<B>,
}

impl<B> Production<B> {
    pub fn new(basic: B, parents: Vec<B>) -> Self {
        Self { basic, parents }
    }
}

/// Outcome of deleting a variable from a set of basic valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeleteOutcome<B> {
    Produced(Vec<Production<B>>),
    Contradiction,
}

impl<B> DeleteOutcome<B> {
    /// Just the basics, provenance dropped.
    pub fn into_basics(self) -> Option<Vec<B>> {
        match self {
            DeleteOutcome::Produced(p) => Some(p.into_iter().map(|p| p.basic).collect()),
            DeleteOutcome::Contradiction => None,
        }
    }
}

/// Resource-limit errors for oracle-scale materializations.
#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CapacityError {
    #[error("frame with {size} tuples exceeds the limit of {limit}")]
    FrameTooLarge { size: usize, limit: usize },
    #[error("dimension {dim} exceeds the limit of {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },
}
