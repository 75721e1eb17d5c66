//! Engine bindings for the two instantiations.

use crate::finite::{
    clause_leq, combine_upper, minimize_tuples, resolve_delete, tuple_leq, Clause, FrameSpec,
    Tuple,
};
use crate::index_set::IndexSet;
use crate::polytope::{fm_delete, halfspace_leq, mc_combine, HalfSpace, VPolytope, Vertex};
use crate::rep::{Basic, CapacityError, DeleteOutcome, Represented};
use crate::vars::VarId;

use super::{LowerInstance, UpperInstance};

impl Basic for Clause {
    fn scope(&self) -> &IndexSet {
        Clause::scope(self)
    }
}

impl Basic for Tuple {
    fn scope(&self) -> &IndexSet {
        Tuple::scope(self)
    }
}

impl Basic for HalfSpace {
    fn scope(&self) -> &IndexSet {
        HalfSpace::scope(self)
    }
}

impl Basic for Vertex {
    fn scope(&self) -> &IndexSet {
        Vertex::scope(self)
    }
}

/// Clauses under combination; deletion by generalized resolution.
pub struct FiniteLower<'a> {
    pub frames: &'a FrameSpec,
}

impl LowerInstance for FiniteLower<'_> {
    type Basic = Clause;

    fn absorbs(&self, keeper: &Clause, other: &Clause) -> bool {
        clause_leq(self.frames, other, keeper)
    }

    fn delete_variable(&self, mentioning: &[Clause], k: VarId) -> DeleteOutcome<Clause> {
        resolve_delete(self.frames, mentioning, k)
    }
}

/// Half-spaces under combination; deletion by pairwise resolution.
pub struct PolytopeLower;

impl LowerInstance for PolytopeLower {
    type Basic = HalfSpace;

    fn absorbs(&self, keeper: &HalfSpace, other: &HalfSpace) -> bool {
        halfspace_leq(other, keeper)
    }

    fn delete_variable(&self, mentioning: &[HalfSpace], k: VarId) -> DeleteOutcome<HalfSpace> {
        fm_delete(mentioning, k)
    }
}

/// Tuple disjunctions; distributive combination over consistent pairs.
pub struct FiniteUpper<'a> {
    pub frames: &'a FrameSpec,
}

impl UpperInstance for FiniteUpper<'_> {
    type Basic = Tuple;

    fn absorbs(&self, keeper: &Tuple, other: &Tuple) -> bool {
        // The keeper's cylinder covers the other point.
        tuple_leq(keeper, other)
    }

    fn combine(
        &self,
        a: &Represented<Tuple>,
        b: &Represented<Tuple>,
    ) -> Result<Vec<Tuple>, CapacityError> {
        Ok(combine_upper(self.frames, &a.basics, &b.basics))
    }

    fn project_basic(&self, basic: &Tuple, to: &IndexSet) -> Tuple {
        basic.project(&basic.scope().intersection(to))
    }

    fn minimize(&self, basics: Vec<Tuple>) -> Vec<Tuple> {
        minimize_tuples(basics)
    }
}

/// Vertex disjunctions; combination by minimal-pair search after
/// homogenizing both operands onto the union scope.
pub struct PolytopeUpper;

impl PolytopeUpper {
    /// A vertex disjunction as a polytope on the valuation's scope: every
    /// vertex fans out over the unconstrained variables' endpoints.
    fn materialize(rep: &Represented<Vertex>, scope: &IndexSet) -> VPolytope {
        let inner = rep
            .basics
            .iter()
            .map(|v| {
                VPolytope::from_points(v.scope().clone(), vec![v.coords().to_vec()])
                    .extend(scope)
                    .points()
                    .to_vec()
            })
            .reduce(|mut acc, pts| {
                acc.extend(pts);
                acc
            })
            .unwrap_or_default();
        VPolytope::from_points(scope.clone(), inner)
    }
}

impl UpperInstance for PolytopeUpper {
    type Basic = Vertex;

    fn absorbs(&self, keeper: &Vertex, other: &Vertex) -> bool {
        // Subsumption between bare points is on-scope agreement; convex
        // redundancy is the minimizer's job.
        keeper.scope().is_subset(other.scope())
            && keeper
                .scope()
                .iter()
                .all(|v| keeper.coord(v) == other.coord(v))
    }

    fn combine(
        &self,
        a: &Represented<Vertex>,
        b: &Represented<Vertex>,
    ) -> Result<Vec<Vertex>, CapacityError> {
        let union = a.scope.union(&b.scope);
        let pa = Self::materialize(a, &union);
        let pb = Self::materialize(b, &union);
        Ok(mc_combine(&pa, &pb)?.vertices())
    }

    fn project_basic(&self, basic: &Vertex, to: &IndexSet) -> Vertex {
        let target = basic.scope().intersection(to);
        let coords = target
            .iter()
            .map(|v| basic.coord(v).unwrap().clone())
            .collect();
        Vertex::new(target, coords)
    }

    fn minimize(&self, basics: Vec<Vertex>) -> Vec<Vertex> {
        let Some(first) = basics.first() else {
            return basics;
        };
        let scope = first.scope().clone();
        debug_assert!(basics.iter().all(|v| *v.scope() == scope));
        let points = basics.into_iter().map(|v| v.coords().to_vec()).collect();
        VPolytope::from_points(scope, points).vertices()
    }
}
