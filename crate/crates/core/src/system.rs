//! The abstract contract shared by both instantiations.
//!
//! A system provides combination (an idempotent, commutative, associative
//! merge of information), marginalization (restriction to a sub-scope) and
//! the distinguished neutral / contradiction values per scope. The
//! information order, extension and disjunction are derived here once.
//!
//! All values are immutable; every operation is a pure function of its
//! inputs, so values can be shared freely across threads.

use crate::index_set::IndexSet;

/// An idempotent valuation system. `&self` carries instance context (frame
/// cardinalities for the finite instance); values carry their own scope.
pub trait IdempotentSystem {
    type Value: Clone + std::fmt::Debug;

    fn scope<'a>(&self, v: &'a Self::Value) -> &'a IndexSet;

    /// Merges two values; the result's scope is the union of the inputs'.
    fn combine(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    /// Restricts `v` to `to`. Requires `to ⊆ scope(v)`.
    fn marginalize(&self, v: &Self::Value, to: &IndexSet) -> Self::Value;

    /// The no-information value on a scope.
    fn neutral(&self, scope: &IndexSet) -> Self::Value;

    /// The absorbing impossible value on a scope.
    fn contradiction(&self, scope: &IndexSet) -> Self::Value;

    fn is_contradiction(&self, v: &Self::Value) -> bool;

    /// Semantic equality. Values with different scopes are never equal.
    fn equivalent(&self, a: &Self::Value, b: &Self::Value) -> bool;

    /// The infimum of the two values extended to their union scope (set
    /// union for finite frames, convex hull of the union for polytopes).
    fn disjoin(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    /// Lifts `v` to a larger scope by combining with the neutral value.
    /// Requires `scope(v) ⊆ to`.
    fn extend(&self, v: &Self::Value, to: &IndexSet) -> Self::Value {
        assert!(
            self.scope(v).is_subset(to),
            "extension target must contain the value's scope"
        );
        self.combine(v, &self.neutral(to))
    }

    /// The information order: `a` is less informative than `b` when
    /// combining them adds nothing to `b`. Values with different scopes are
    /// compared after extension to the union scope.
    fn leq(&self, a: &Self::Value, b: &Self::Value) -> bool {
        let union = self.scope(a).union(self.scope(b));
        let combined = self.combine(a, b);
        let b_ext = self.extend(b, &union);
        self.equivalent(&combined, &b_ext)
    }
}
