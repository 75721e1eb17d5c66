//! Materialized subsets of a product frame.
//!
//! This is the reference semantics for the finite instance: combination is
//! the natural join, marginalization is projection. Everything else in the
//! finite modules is checked against it, so it stays deliberately simple and
//! is only meant for frames below the configured size limit.

use std::collections::BTreeSet;

use crate::index_set::IndexSet;
use crate::system::IdempotentSystem;

use super::{project_values, FrameSpec};

/// Default cap on materialized frame size (number of tuples).
pub const DEFAULT_EXPLICIT_LIMIT: usize = 1 << 20;

/// A subset of the frame over `scope`, listed tuple by tuple.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExplicitSet {
    scope: IndexSet,
    members: BTreeSet<Vec<u32>>,
}

impl ExplicitSet {
    pub fn new(scope: IndexSet, members: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let members: BTreeSet<Vec<u32>> = members.into_iter().collect();
        for m in &members {
            assert_eq!(m.len(), scope.len(), "tuple arity must match scope");
        }
        Self { scope, members }
    }

    pub fn empty(scope: IndexSet) -> Self {
        Self {
            scope,
            members: BTreeSet::new(),
        }
    }

    pub fn scope(&self) -> &IndexSet {
        &self.scope
    }

    pub fn members(&self) -> &BTreeSet<Vec<u32>> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        self.members.contains(tuple)
    }
}

impl std::fmt::Debug for ExplicitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExplicitSet{:?}{{", self.scope)?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{:?}", m)?;
        }
        write!(f, "}}")
    }
}

/// The finite instance: explicit-set semantics over a fixed frame spec.
#[derive(Clone, Debug)]
pub struct FiniteSystem {
    frames: FrameSpec,
    limit: usize,
}

impl FiniteSystem {
    pub fn new(frames: FrameSpec) -> Self {
        Self {
            frames,
            limit: DEFAULT_EXPLICIT_LIMIT,
        }
    }

    pub fn with_limit(frames: FrameSpec, limit: usize) -> Self {
        Self { frames, limit }
    }

    pub fn frames(&self) -> &FrameSpec {
        &self.frames
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn check_capacity(&self, scope: &IndexSet) {
        assert!(
            self.frames.frame_size(scope) <= self.limit,
            "frame over {:?} exceeds the materialization limit",
            scope
        );
    }

    /// The full frame over `scope` as an explicit set.
    pub fn full_frame(&self, scope: &IndexSet) -> ExplicitSet {
        self.check_capacity(scope);
        ExplicitSet::new(scope.clone(), self.frames.assignments(scope))
    }
}

impl IdempotentSystem for FiniteSystem {
    type Value = ExplicitSet;

    fn scope<'a>(&self, v: &'a ExplicitSet) -> &'a IndexSet {
        &v.scope
    }

    fn combine(&self, a: &ExplicitSet, b: &ExplicitSet) -> ExplicitSet {
        // Natural join: merge every compatible pair of tuples.
        let union = a.scope.union(&b.scope);
        let mut members = BTreeSet::new();
        for ta in &a.members {
            for tb in &b.members {
                if let Some((_, merged)) = super::merge_values(&a.scope, ta, &b.scope, tb) {
                    members.insert(merged);
                }
            }
        }
        ExplicitSet {
            scope: union,
            members,
        }
    }

    fn marginalize(&self, v: &ExplicitSet, to: &IndexSet) -> ExplicitSet {
        assert!(to.is_subset(&v.scope), "marginal target must be a sub-scope");
        let members = v
            .members
            .iter()
            .map(|t| project_values(&v.scope, t, to))
            .collect();
        ExplicitSet {
            scope: to.clone(),
            members,
        }
    }

    fn neutral(&self, scope: &IndexSet) -> ExplicitSet {
        self.full_frame(scope)
    }

    fn contradiction(&self, scope: &IndexSet) -> ExplicitSet {
        ExplicitSet::empty(scope.clone())
    }

    fn is_contradiction(&self, v: &ExplicitSet) -> bool {
        v.members.is_empty()
    }

    fn equivalent(&self, a: &ExplicitSet, b: &ExplicitSet) -> bool {
        a.scope == b.scope && a.members == b.members
    }

    fn disjoin(&self, a: &ExplicitSet, b: &ExplicitSet) -> ExplicitSet {
        let union = a.scope.union(&b.scope);
        let ea = self.extend(a, &union);
        let eb = self.extend(b, &union);
        let members = ea.members.union(&eb.members).cloned().collect();
        ExplicitSet {
            scope: union,
            members,
        }
    }
}
