//! Finite-frame instantiation: each variable ranges over a finite set
//! `{0, .., card-1}`. Valuations are subsets of the product frame.
//!
//! Three faces of the same semantics live here:
//! - [`ExplicitSet`]: materialized subsets, exact at small scale (the oracle);
//! - [`Clause`]: weak basic valuations (one forbidden assignment each), the
//!   lower representation, with variable deletion by generalized resolution;
//! - [`Tuple`]: strong basic valuations (one point each), the upper
//!   representation, with distributive combination.

mod clause;
mod cnf;
mod convert;
mod explicit;
mod tuple;

pub use clause::{clause_leq, lower_rep, resolve_delete, Clause};
pub use cnf::{from_cnf, CnfError};
pub use convert::{clauses_to_explicit, tuples_to_explicit};
pub use explicit::{ExplicitSet, FiniteSystem, DEFAULT_EXPLICIT_LIMIT};
pub use tuple::{combine_upper, marginalize_upper, minimize_tuples, tuple_leq, Tuple};

use crate::index_set::IndexSet;
use crate::vars::VarId;

/// Per-variable cardinalities. Indexed by `VarId`; every size is at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameSpec {
    sizes: Vec<u32>,
}

impl FrameSpec {
    pub fn new(sizes: Vec<u32>) -> Self {
        assert!(sizes.iter().all(|s| *s >= 1), "frame sizes must be positive");
        Self { sizes }
    }

    pub fn cardinality(&self, v: VarId) -> u32 {
        self.sizes[v.index()]
    }

    pub fn num_vars(&self) -> usize {
        self.sizes.len()
    }

    /// Number of points in the product frame over `scope`, saturating.
    pub fn frame_size(&self, scope: &IndexSet) -> usize {
        scope
            .iter()
            .map(|v| self.cardinality(v) as usize)
            .fold(1usize, |acc, c| acc.saturating_mul(c))
    }

    /// Iterates all assignments over `scope` in mixed-radix order (last
    /// variable fastest).
    pub fn assignments<'a>(&'a self, scope: &'a IndexSet) -> FrameIter<'a> {
        FrameIter {
            frames: self,
            scope,
            next: Some(vec![0; scope.len()]),
        }
    }
}

/// Odometer over a product frame.
pub struct FrameIter<'a> {
    frames: &'a FrameSpec,
    scope: &'a IndexSet,
    next: Option<Vec<u32>>,
}

impl Iterator for FrameIter<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = self.scope.len();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            let var = self.scope.as_slice()[pos];
            succ[pos] += 1;
            if succ[pos] < self.frames.cardinality(var) {
                self.next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// Projects a value vector aligned with `scope` onto `to ⊆ scope`.
pub(crate) fn project_values(scope: &IndexSet, values: &[u32], to: &IndexSet) -> Vec<u32> {
    to.iter()
        .map(|v| values[scope.position(v).expect("projection target within scope")])
        .collect()
}

/// Merges two aligned value vectors onto the union scope; `None` when the
/// vectors disagree on a shared variable.
pub(crate) fn merge_values(
    scope_a: &IndexSet,
    values_a: &[u32],
    scope_b: &IndexSet,
    values_b: &[u32],
) -> Option<(IndexSet, Vec<u32>)> {
    let union = scope_a.union(scope_b);
    let mut merged = Vec::with_capacity(union.len());
    for v in union.iter() {
        let from_a = scope_a.position(v).map(|i| values_a[i]);
        let from_b = scope_b.position(v).map(|i| values_b[i]);
        match (from_a, from_b) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) => merged.push(a),
            (None, Some(b)) => merged.push(b),
            (None, None) => unreachable!("union variable missing from both scopes"),
        }
    }
    Some((union, merged))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scope(ids: &[u32]) -> IndexSet {
        IndexSet::from_iter(ids.iter().map(|i| VarId(*i)))
    }

    #[test]
    fn frame_iteration_order() {
        let frames = FrameSpec::new(vec![2, 3]);
        let s = scope(&[0, 1]);
        let all: Vec<_> = frames.assignments(&s).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
    }

    #[test]
    fn empty_scope_has_one_assignment() {
        let frames = FrameSpec::new(vec![2]);
        let all: Vec<_> = frames.assignments(&IndexSet::empty()).collect();
        assert_eq!(all, vec![Vec::<u32>::new()]);
    }

    #[test]
    fn merge_detects_conflicts() {
        let a = scope(&[0, 1]);
        let b = scope(&[1, 2]);
        assert_eq!(
            merge_values(&a, &[1, 0], &b, &[0, 2]),
            Some((scope(&[0, 1, 2]), vec![1, 0, 2]))
        );
        assert_eq!(merge_values(&a, &[1, 0], &b, &[1, 2]), None);
    }
}
