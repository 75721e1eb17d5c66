//! Materialization of represented valuations into explicit sets.
//!
//! This is the finite instance's exact oracle: lower representations
//! intersect the clause complements, upper representations take the union of
//! the tuple cylinders. Only usable below the configured frame-size limit.

use crate::index_set::IndexSet;
use crate::rep::{CapacityError, Represented};
use crate::system::IdempotentSystem;

use super::{Clause, ExplicitSet, FiniteSystem, Tuple};

fn check_capacity(sys: &FiniteSystem, scope: &IndexSet) -> Result<(), CapacityError> {
    let size = sys.frames().frame_size(scope);
    if size > sys.limit() {
        return Err(CapacityError::FrameTooLarge {
            size,
            limit: sys.limit(),
        });
    }
    Ok(())
}

/// The exact set denoted by a clause combination over `rep.scope`.
pub fn clauses_to_explicit(
    sys: &FiniteSystem,
    rep: &Represented<Clause>,
) -> Result<ExplicitSet, CapacityError> {
    check_capacity(sys, &rep.scope)?;
    if rep.basics.iter().any(|c| c.is_contradiction()) {
        return Ok(sys.contradiction(&rep.scope));
    }
    let members = sys.frames().assignments(&rep.scope).filter(|t| {
        rep.basics.iter().all(|c| {
            c.scope()
                .iter()
                .zip(c.forbidden())
                .any(|(v, fv)| t[rep.scope.position(v).unwrap()] != *fv)
        })
    });
    Ok(ExplicitSet::new(rep.scope.clone(), members))
}

/// The exact set denoted by a tuple disjunction over `rep.scope`.
pub fn tuples_to_explicit(
    sys: &FiniteSystem,
    rep: &Represented<Tuple>,
) -> Result<ExplicitSet, CapacityError> {
    check_capacity(sys, &rep.scope)?;
    let mut acc = sys.contradiction(&rep.scope);
    for t in &rep.basics {
        let cylinder = sys.extend(&t.to_explicit(), &rep.scope);
        acc = sys.disjoin(&acc, &cylinder);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FrameSpec;
    use crate::vars::VarId;

    fn scope(ids: &[u32]) -> IndexSet {
        IndexSet::from_iter(ids.iter().map(|i| VarId(*i)))
    }

    #[test]
    fn neutral_and_unit_clause() {
        let sys = FiniteSystem::new(FrameSpec::new(vec![2]));
        let s = scope(&[0]);
        let neutral = Represented::new(s.clone(), Vec::<Clause>::new());
        assert_eq!(
            clauses_to_explicit(&sys, &neutral).unwrap(),
            ExplicitSet::new(s.clone(), [vec![0], vec![1]])
        );
        let unit = Represented::new(
            s.clone(),
            vec![Clause::new(sys.frames(), s.clone(), vec![0])],
        );
        assert_eq!(
            clauses_to_explicit(&sys, &unit).unwrap(),
            ExplicitSet::new(s, [vec![1]])
        );
    }

    #[test]
    fn biconditional_knowledge_base() {
        // x3 = 1 exactly when x1 = 1 and x2 = 1, encoded with three clauses.
        let sys = FiniteSystem::new(FrameSpec::new(vec![2, 2, 2]));
        let frames = sys.frames();
        let full = scope(&[0, 1, 2]);
        let rep = Represented::new(
            full.clone(),
            vec![
                Clause::new(frames, scope(&[0, 2]), vec![0, 1]),
                Clause::new(frames, scope(&[1, 2]), vec![0, 1]),
                Clause::new(frames, full.clone(), vec![1, 1, 0]),
            ],
        );
        let set = clauses_to_explicit(&sys, &rep).unwrap();
        let expected: Vec<Vec<u32>> = sys
            .frames()
            .assignments(&full)
            .filter(|t| (t[2] == 1) == (t[0] == 1 && t[1] == 1))
            .collect();
        assert_eq!(set.members().len(), expected.len());
        for t in expected {
            assert!(set.contains(&t));
        }
        assert_eq!(set.len(), 4);
    }

    #[test]
    fn tuple_union_with_lazy_extension() {
        let sys = FiniteSystem::new(FrameSpec::new(vec![2, 2]));
        let frames = sys.frames();
        let rep = Represented::new(
            scope(&[0, 1]),
            vec![Tuple::new(frames, scope(&[0]), vec![0])],
        );
        assert_eq!(
            tuples_to_explicit(&sys, &rep).unwrap(),
            ExplicitSet::new(scope(&[0, 1]), [vec![0, 0], vec![0, 1]])
        );
    }

    #[test]
    fn capacity_is_enforced() {
        let sys = FiniteSystem::with_limit(FrameSpec::new(vec![2, 2, 2]), 4);
        let rep = Represented::new(scope(&[0, 1, 2]), Vec::<Clause>::new());
        assert_eq!(
            clauses_to_explicit(&sys, &rep),
            Err(CapacityError::FrameTooLarge { size: 8, limit: 4 })
        );
    }
}
