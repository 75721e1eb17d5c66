//! Tuples: the strong basic valuations of the finite instance.
//!
//! A tuple denotes a single point of its frame. A disjunction of tuples
//! denotes their union (after extension to a common scope); combining two
//! such disjunctions distributes over the members, keeping only joins of
//! consistent pairs.

use std::collections::BTreeSet;

use crate::index_set::IndexSet;
use crate::vars::VarId;

use super::{merge_values, project_values, ExplicitSet, FrameSpec};

/// A single point of the frame over `scope`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple {
    scope: IndexSet,
    values: Vec<u32>,
}

impl Tuple {
    pub fn new(frames: &FrameSpec, scope: IndexSet, values: Vec<u32>) -> Self {
        assert_eq!(scope.len(), values.len(), "tuple arity must match scope");
        for (v, val) in scope.iter().zip(&values) {
            assert!(*val < frames.cardinality(v), "value out of range for {:?}", v);
        }
        Self { scope, values }
    }

    pub fn scope(&self) -> &IndexSet {
        &self.scope
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, v: VarId) -> Option<u32> {
        self.scope.position(v).map(|i| self.values[i])
    }

    pub fn project(&self, to: &IndexSet) -> Tuple {
        assert!(to.is_subset(&self.scope), "projection target must be a sub-scope");
        Tuple {
            scope: to.clone(),
            values: project_values(&self.scope, &self.values, to),
        }
    }

    /// The denoted singleton set.
    pub fn to_explicit(&self) -> ExplicitSet {
        ExplicitSet::new(self.scope.clone(), [self.values.clone()])
    }
}

impl std::fmt::Debug for Tuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}@{:?}", self.values, self.scope)
    }
}

/// `a ⪯ b`: `b`'s singleton (extended) is contained in `a`'s cylinder, i.e.
/// `b` refines `a` on every variable `a` mentions.
pub fn tuple_leq(a: &Tuple, b: &Tuple) -> bool {
    a.scope.is_subset(&b.scope)
        && a.scope
            .iter()
            .all(|v| a.value(v).unwrap() == b.value(v).unwrap())
}

/// Combines two tuple disjunctions: the joins of all consistent pairs. An
/// empty result denotes the contradiction.
pub fn combine_upper(frames: &FrameSpec, h1: &[Tuple], h2: &[Tuple]) -> Vec<Tuple> {
    let mut out: BTreeSet<Tuple> = BTreeSet::new();
    for a in h1 {
        for b in h2 {
            if let Some((scope, values)) = merge_values(&a.scope, &a.values, &b.scope, &b.values) {
                out.insert(Tuple::new(frames, scope, values));
            }
        }
    }
    minimize_tuples(out.into_iter().collect())
}

/// Projects a tuple disjunction onto `to`, deduplicating.
pub fn marginalize_upper(h: &[Tuple], to: &IndexSet) -> Vec<Tuple> {
    let out: BTreeSet<Tuple> = h.iter().map(|t| t.project(to)).collect();
    minimize_tuples(out.into_iter().collect())
}

/// Drops members whose denoted point is already covered by another member's
/// cylinder; the disjunction is unchanged.
pub fn minimize_tuples(tuples: Vec<Tuple>) -> Vec<Tuple> {
    let mut keep: Vec<Tuple> = Vec::with_capacity(tuples.len());
    'outer: for (i, t) in tuples.iter().enumerate() {
        for (j, other) in tuples.iter().enumerate() {
            if i == j {
                continue;
            }
            // Drop t when another member is weaker than (or equal to) it;
            // equal duplicates keep the earliest occurrence.
            if tuple_leq(other, t) && !(tuple_leq(t, other) && i < j) {
                continue 'outer;
            }
        }
        keep.push(t.clone());
    }
    keep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scope(ids: &[u32]) -> IndexSet {
        IndexSet::from_iter(ids.iter().map(|i| VarId(*i)))
    }

    fn binary(n: usize) -> FrameSpec {
        FrameSpec::new(vec![2; n])
    }

    #[test]
    fn inconsistent_pair_combines_to_nothing() {
        let frames = binary(3);
        let h1 = vec![Tuple::new(&frames, scope(&[0, 1]), vec![0, 0])];
        let h2 = vec![Tuple::new(&frames, scope(&[1, 2]), vec![1, 0])];
        assert!(combine_upper(&frames, &h1, &h2).is_empty());
    }

    #[test]
    fn consistent_pair_joins() {
        let frames = binary(3);
        let h1 = vec![Tuple::new(&frames, scope(&[0, 1]), vec![0, 0])];
        let h2 = vec![Tuple::new(&frames, scope(&[1, 2]), vec![0, 0])];
        assert_eq!(
            combine_upper(&frames, &h1, &h2),
            vec![Tuple::new(&frames, scope(&[0, 1, 2]), vec![0, 0, 0])]
        );
    }

    #[test]
    fn projection_deduplicates() {
        let frames = binary(2);
        let h = vec![
            Tuple::new(&frames, scope(&[0, 1]), vec![0, 1]),
            Tuple::new(&frames, scope(&[0, 1]), vec![1, 1]),
        ];
        assert_eq!(
            marginalize_upper(&h, &scope(&[1])),
            vec![Tuple::new(&frames, scope(&[1]), vec![1])]
        );
        // Projecting onto the whole scope is the identity.
        assert_eq!(marginalize_upper(&h, &scope(&[0, 1])), h);
    }

    #[test]
    fn minimization_drops_covered_points() {
        let frames = binary(2);
        let short = Tuple::new(&frames, scope(&[0]), vec![0]);
        let long = Tuple::new(&frames, scope(&[0, 1]), vec![0, 1]);
        // The longer tuple lies inside the shorter one's cylinder.
        assert!(tuple_leq(&short, &long));
        assert_eq!(
            minimize_tuples(vec![short.clone(), long]),
            vec![short]
        );
    }
}
