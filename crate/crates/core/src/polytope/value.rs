//! The polytope instance as an idempotent system over canonical vertex sets.
//!
//! Combination routes through the restriction side: recover restrictions for
//! both operands, pool them on the union scope and enumerate vertices again.
//! With minimal vertex sets as the canonical form, semantic equality is
//! plain equality, which is what the oracle suites rely on.

use crate::index_set::IndexSet;
use crate::system::IdempotentSystem;

use super::enumerate::{facet_recovery, vertex_enumerate, DEFAULT_DIM_LIMIT};
use super::vertex::{hull_disjoin, in_hull, VPolytope};

/// Desk-scale polytope semantics inside the unit hypercube.
#[derive(Clone, Debug)]
pub struct PolytopeSystem {
    dim_limit: usize,
}

impl Default for PolytopeSystem {
    fn default() -> Self {
        Self {
            dim_limit: DEFAULT_DIM_LIMIT,
        }
    }
}

impl PolytopeSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_dim_limit(dim_limit: usize) -> Self {
        Self { dim_limit }
    }

    pub fn dim_limit(&self) -> usize {
        self.dim_limit
    }
}

impl IdempotentSystem for PolytopeSystem {
    type Value = VPolytope;

    fn scope<'a>(&self, v: &'a VPolytope) -> &'a IndexSet {
        v.scope()
    }

    fn combine(&self, a: &VPolytope, b: &VPolytope) -> VPolytope {
        let union = a.scope().union(b.scope());
        if a.is_empty() || b.is_empty() {
            return VPolytope::empty(union);
        }
        if a.scope() == b.scope() && a == b {
            return a.clone();
        }
        let mut pool = facet_recovery(a);
        pool.extend(facet_recovery(b));
        vertex_enumerate(&union, &pool, self.dim_limit)
            .expect("combination within the configured dimension limit")
    }

    fn marginalize(&self, v: &VPolytope, to: &IndexSet) -> VPolytope {
        v.project(to)
    }

    fn neutral(&self, scope: &IndexSet) -> VPolytope {
        assert!(scope.len() <= self.dim_limit, "scope beyond the dimension limit");
        VPolytope::hypercube(scope.clone())
    }

    fn contradiction(&self, scope: &IndexSet) -> VPolytope {
        VPolytope::empty(scope.clone())
    }

    fn is_contradiction(&self, v: &VPolytope) -> bool {
        v.is_empty()
    }

    fn equivalent(&self, a: &VPolytope, b: &VPolytope) -> bool {
        a == b
    }

    fn extend(&self, v: &VPolytope, to: &IndexSet) -> VPolytope {
        // Cheaper than combining with the hypercube, same result.
        v.extend(to)
    }

    fn leq(&self, a: &VPolytope, b: &VPolytope) -> bool {
        // Combining adds nothing to b exactly when b's hull sits inside
        // a's; a pointwise membership test avoids the conversion route.
        let union = a.scope().union(b.scope());
        let ea = a.extend(&union);
        let eb = b.extend(&union);
        if eb.is_empty() {
            return true;
        }
        if ea.is_empty() {
            return false;
        }
        let hull: Vec<&Vec<_>> = ea.points().iter().collect();
        eb.points().iter().all(|p| in_hull(p, &hull))
    }

    fn disjoin(&self, a: &VPolytope, b: &VPolytope) -> VPolytope {
        hull_disjoin(a, b)
    }
}
