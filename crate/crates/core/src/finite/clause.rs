//! Generalized clauses: the weak basic valuations of the finite instance.
//!
//! A clause forbids exactly one assignment over its scope. Over binary
//! frames this is an ordinary propositional clause (the forbidden assignment
//! is the unique falsifying one), and variable deletion specializes to
//! ordered resolution. Over larger frames a deletion step merges one clause
//! per frame value of the deleted variable.

use std::collections::BTreeMap;

use crate::index_set::IndexSet;
use crate::rep::{DeleteOutcome, Production};
use crate::vars::VarId;

use super::{merge_values, ExplicitSet, FrameSpec};

/// Forbids the single assignment `forbidden` over `scope`. Denotes the
/// complement of that point; never the full frame.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    scope: IndexSet,
    forbidden: Vec<u32>,
}

impl Clause {
    /// `scope` and `forbidden` must be aligned; values must be in range.
    pub fn new(frames: &FrameSpec, scope: IndexSet, forbidden: Vec<u32>) -> Self {
        assert_eq!(scope.len(), forbidden.len(), "assignment arity must match scope");
        for (v, val) in scope.iter().zip(&forbidden) {
            assert!(
                *val < frames.cardinality(v),
                "forbidden value out of range for {:?}",
                v
            );
        }
        Self { scope, forbidden }
    }

    /// The contradiction produced when a deletion eliminates every variable.
    pub fn empty() -> Self {
        Self {
            scope: IndexSet::empty(),
            forbidden: Vec::new(),
        }
    }

    pub fn scope(&self) -> &IndexSet {
        &self.scope
    }

    pub fn forbidden(&self) -> &[u32] {
        &self.forbidden
    }

    pub fn forbidden_value(&self, v: VarId) -> Option<u32> {
        self.scope.position(v).map(|i| self.forbidden[i])
    }

    /// Signals the contradiction on the empty scope.
    pub fn is_contradiction(&self) -> bool {
        self.scope.is_empty()
    }

    /// The denoted subset of the frame over the clause's own scope.
    pub fn to_explicit(&self, frames: &FrameSpec) -> ExplicitSet {
        let members = frames
            .assignments(&self.scope)
            .filter(|t| *t != self.forbidden);
        ExplicitSet::new(self.scope.clone(), members)
    }
}

impl std::fmt::Debug for Clause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "¬{:?}@{:?}", self.forbidden, self.scope)
    }
}

/// The information order between clauses: `a ⪯ b` holds when `b`'s denoted
/// set (extended to the union scope) is contained in `a`'s.
///
/// Every point matching `a`'s forbidden assignment must also match `b`'s:
/// each variable of `b` either appears in `a` with the same value or is
/// forced by a one-element frame.
pub fn clause_leq(frames: &FrameSpec, a: &Clause, b: &Clause) -> bool {
    b.scope.iter().all(|v| match a.forbidden_value(v) {
        Some(val) => val == b.forbidden_value(v).unwrap(),
        None => frames.cardinality(v) == 1,
    })
}

/// Deletes variable `k` from clauses that all mention it.
///
/// For every way of picking one clause per frame value of `k` such that the
/// picks agree on every shared variable other than `k`, the merged
/// assignment with `k` dropped becomes a new clause. The union of these
/// clauses, combined with any clauses not mentioning `k`, represents the
/// marginal of the combination. Each produced clause records the picks that
/// made it.
///
/// A merge that eliminates every variable is a contradiction and
/// short-circuits. Produced clauses prune remaining inputs they subsume, so
/// later picks skip them.
pub fn resolve_delete(frames: &FrameSpec, clauses: &[Clause], k: VarId) -> DeleteOutcome<Clause> {
    debug_assert!(
        clauses.iter().all(|c| c.scope.contains(k)),
        "every input clause must mention the deleted variable"
    );
    let card = frames.cardinality(k) as usize;

    // One bucket per frame value of k.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); card];
    for (i, c) in clauses.iter().enumerate() {
        buckets[c.forbidden_value(k).unwrap() as usize].push(i);
    }
    if buckets.iter().any(|b| b.is_empty()) {
        // Some value of k can never be ruled out: the deletion adds nothing.
        return DeleteOutcome::Produced(Vec::new());
    }

    // Only the parts away from k take part in compatibility and merging.
    let reduced: Vec<(IndexSet, Vec<u32>)> = clauses
        .iter()
        .map(|c| {
            let scope = c.scope.without(k);
            let values = super::project_values(&c.scope, &c.forbidden, &scope);
            (scope, values)
        })
        .collect();

    struct Search<'s> {
        frames: &'s FrameSpec,
        clauses: &'s [Clause],
        reduced: &'s [(IndexSet, Vec<u32>)],
        buckets: &'s [Vec<usize>],
        alive: Vec<bool>,
        picks: Vec<usize>,
        produced: BTreeMap<Clause, Vec<Clause>>,
    }

    impl Search<'_> {
        fn descend(&mut self, depth: usize, current: (IndexSet, Vec<u32>)) -> bool {
            if depth == self.buckets.len() {
                let (scope, values) = current;
                if scope.is_empty() {
                    return false; // contradiction
                }
                let clause = Clause::new(self.frames, scope, values);
                // A fresh result subsumes inputs it dominates; drop them so
                // later picks skip those clauses entirely.
                for (i, c) in self.clauses.iter().enumerate() {
                    if self.alive[i] && clause_leq(self.frames, c, &clause) {
                        self.alive[i] = false;
                    }
                }
                let parents: Vec<Clause> =
                    self.picks.iter().map(|i| self.clauses[*i].clone()).collect();
                self.produced.entry(clause).or_insert(parents);
                return true;
            }
            for pos in 0..self.buckets[depth].len() {
                let idx = self.buckets[depth][pos];
                if !self.alive[idx] {
                    continue;
                }
                let (c_scope, c_values) = &self.reduced[idx];
                let merged = merge_values(&current.0, &current.1, c_scope, c_values);
                let Some(next) = merged else { continue };
                self.picks.push(idx);
                let ok = self.descend(depth + 1, next);
                self.picks.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
    }

    let mut search = Search {
        frames,
        clauses,
        reduced: &reduced,
        buckets: &buckets,
        alive: vec![true; clauses.len()],
        picks: Vec::new(),
        produced: BTreeMap::new(),
    };
    if !search.descend(0, (IndexSet::empty(), Vec::new())) {
        return DeleteOutcome::Contradiction;
    }
    DeleteOutcome::Produced(
        search
            .produced
            .into_iter()
            .map(|(basic, parents)| Production::new(basic, parents))
            .collect(),
    )
}

/// Represents an explicit set by enumerating the complement, one clause per
/// missing point. The full frame becomes the empty clause set.
pub fn lower_rep(frames: &FrameSpec, set: &ExplicitSet) -> Vec<Clause> {
    frames
        .assignments(set.scope())
        .filter(|t| !set.contains(t))
        .map(|t| Clause::new(frames, set.scope().clone(), t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::FiniteSystem;
    use super::*;
    use crate::system::IdempotentSystem;

    fn scope(ids: &[u32]) -> IndexSet {
        IndexSet::from_iter(ids.iter().map(|i| VarId(*i)))
    }

    fn binary(n: usize) -> FrameSpec {
        FrameSpec::new(vec![2; n])
    }

    #[test]
    fn unit_resolution_chain() {
        // ¬(x1=1) and ¬(x1=0, x2=1), delete x1: merged pick forbids x2=1.
        let frames = binary(2);
        let h = vec![
            Clause::new(&frames, scope(&[0]), vec![1]),
            Clause::new(&frames, scope(&[0, 1]), vec![0, 1]),
        ];
        let out = resolve_delete(&frames, &h, VarId(0));
        let DeleteOutcome::Produced(productions) = out else {
            panic!("unexpected contradiction");
        };
        assert_eq!(productions.len(), 1);
        assert_eq!(productions[0].basic, Clause::new(&frames, scope(&[1]), vec![1]));
        // Provenance names the whole picked subset.
        let mut parents = productions[0].parents.clone();
        parents.sort();
        assert_eq!(parents, { let mut h = h.clone(); h.sort(); h });
    }

    #[test]
    fn complementary_units_contradict() {
        let frames = binary(1);
        let h = vec![
            Clause::new(&frames, scope(&[0]), vec![0]),
            Clause::new(&frames, scope(&[0]), vec![1]),
        ];
        assert_eq!(resolve_delete(&frames, &h, VarId(0)), DeleteOutcome::Contradiction);
    }

    #[test]
    fn disjoint_side_variables_merge() {
        let frames = binary(3);
        let h = vec![
            Clause::new(&frames, scope(&[0, 1]), vec![0, 1]),
            Clause::new(&frames, scope(&[0, 2]), vec![1, 1]),
        ];
        let out = resolve_delete(&frames, &h, VarId(0)).into_basics();
        assert_eq!(out, Some(vec![Clause::new(&frames, scope(&[1, 2]), vec![1, 1])]));
    }

    #[test]
    fn incompatible_picks_produce_nothing() {
        // Both clauses forbid x1=0 only; value 1 has no clause.
        let frames = binary(2);
        let h = vec![
            Clause::new(&frames, scope(&[0, 1]), vec![0, 0]),
            Clause::new(&frames, scope(&[0, 1]), vec![0, 1]),
        ];
        assert_eq!(resolve_delete(&frames, &h, VarId(0)).into_basics(), Some(vec![]));
    }

    #[test]
    fn subsumption_order_matches_sets() {
        let frames = binary(2);
        let unit = Clause::new(&frames, scope(&[0]), vec![0]);
        let longer = Clause::new(&frames, scope(&[0, 1]), vec![0, 1]);
        // The longer clause is less informative than the unit.
        assert!(clause_leq(&frames, &longer, &unit));
        assert!(!clause_leq(&frames, &unit, &longer));

        let sys = FiniteSystem::new(frames.clone());
        let a = longer.to_explicit(&frames);
        let b = unit.to_explicit(&frames);
        assert!(sys.leq(&a, &b));
    }

    #[test]
    fn complement_enumeration_round_trips() {
        let frames = binary(2);
        let sys = FiniteSystem::new(frames.clone());
        let set = ExplicitSet::new(scope(&[0, 1]), [vec![0, 0], vec![1, 1]]);
        let clauses = lower_rep(&frames, &set);
        assert_eq!(
            clauses,
            vec![
                Clause::new(&frames, scope(&[0, 1]), vec![0, 1]),
                Clause::new(&frames, scope(&[0, 1]), vec![1, 0]),
            ]
        );
        // Intersecting the complements recovers the set.
        let mut acc = sys.neutral(&scope(&[0, 1]));
        for c in &clauses {
            acc = sys.combine(&acc, &c.to_explicit(&frames));
        }
        assert_eq!(acc, set);

        // Full frame needs no clause at all.
        assert!(lower_rep(&frames, &sys.neutral(&scope(&[0, 1]))).is_empty());
    }
}
