//! Linear restrictions: the weak basic valuations of the polytope instance.
//!
//! A half-space is `sum a_i x_i <= b` with the inequality direction fixed.
//! Construction canonicalizes: denominators are cleared, the common integer
//! factor of all coefficients and the bound is divided out, and variables
//! with zero coefficient are dropped from the scope. Ground facts (no
//! variables left) are not half-spaces; they surface as the neutral or the
//! contradiction instead.
//!
//! Deleting a variable pairs every restriction with positive coefficient
//! against every one with negative coefficient and takes the positive linear
//! combination that cancels the variable; restrictions not mentioning it
//! pass through.

use num::bigint::BigInt;
use num::{BigRational, Integer, Signed, Zero};

use crate::index_set::IndexSet;
use crate::rep::{DeleteOutcome, Production};
use crate::vars::VarId;

pub type Rat = BigRational;

/// Canonical `coeffs · x <= bound` over `scope`; every stored coefficient is
/// a nonzero integer and the scope is exactly the mentioned variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    scope: IndexSet,
    coeffs: Vec<BigInt>,
    bound: BigInt,
}

/// What a linear restriction canonicalizes to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearForm {
    HalfSpace(HalfSpace),
    /// `0 <= b` with `b >= 0`: no information.
    Trivial,
    /// `0 <= b` with `b < 0`: impossible.
    Infeasible,
}

impl HalfSpace {
    /// Canonicalizes `terms · x <= bound`. Duplicate variables are summed.
    pub fn new(terms: &[(VarId, Rat)], bound: Rat) -> LinearForm {
        let mut vars: Vec<VarId> = terms.iter().map(|(v, _)| *v).collect();
        vars.sort_unstable();
        vars.dedup();
        let scope = IndexSet::from_iter(vars.iter().copied());
        let mut sums = vec![Rat::zero(); scope.len()];
        for (v, c) in terms {
            sums[scope.position(*v).unwrap()] += c;
        }
        Self::from_rational_row(&scope, &sums, &bound)
    }

    /// Canonicalizes a dense rational row aligned with `scope`.
    pub fn from_rational_row(scope: &IndexSet, coeffs: &[Rat], bound: &Rat) -> LinearForm {
        // Clear denominators.
        let mut lcm = bound.denom().clone();
        for c in coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let ibound = bound.numer() * (&lcm / bound.denom());
        Self::from_integer_row(scope, &ints, ibound)
    }

    fn from_integer_row(scope: &IndexSet, coeffs: &[BigInt], bound: BigInt) -> LinearForm {
        let kept: Vec<(VarId, BigInt)> = scope
            .iter()
            .zip(coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| (v, c.clone()))
            .collect();
        if kept.is_empty() {
            return if bound.is_negative() {
                LinearForm::Infeasible
            } else {
                LinearForm::Trivial
            };
        }
        let mut gcd = bound.abs();
        for (_, c) in &kept {
            gcd = gcd.gcd(c);
        }
        let scope = IndexSet::from_iter(kept.iter().map(|(v, _)| *v));
        let coeffs = kept.iter().map(|(_, c)| c / &gcd).collect();
        LinearForm::HalfSpace(HalfSpace {
            scope,
            coeffs,
            bound: bound / gcd,
        })
    }

    pub fn scope(&self) -> &IndexSet {
        &self.scope
    }

    pub fn coefficient(&self, v: VarId) -> Option<&BigInt> {
        self.scope.position(v).map(|i| &self.coeffs[i])
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (VarId, &BigInt)> {
        self.scope.iter().zip(self.coeffs.iter())
    }

    pub fn bound(&self) -> &BigInt {
        &self.bound
    }

    /// Dense coefficient row aligned with a larger scope.
    pub fn dense_row(&self, scope: &IndexSet) -> (Vec<Rat>, Rat) {
        let mut row = vec![Rat::zero(); scope.len()];
        for (v, c) in self.coefficients() {
            row[scope.position(v).expect("half-space scope within target")] =
                Rat::from_integer(c.clone());
        }
        (row, Rat::from_integer(self.bound.clone()))
    }

    /// Does `point` (aligned with `scope ⊇ self.scope`) satisfy this
    /// restriction?
    pub fn satisfied_by(&self, scope: &IndexSet, point: &[Rat]) -> bool {
        let mut lhs = Rat::zero();
        for (v, c) in self.coefficients() {
            lhs += Rat::from_integer(c.clone()) * &point[scope.position(v).unwrap()];
        }
        lhs <= Rat::from_integer(self.bound.clone())
    }
}

impl std::fmt::Debug for HalfSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (v, c)) in self.coefficients().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{v:?}")?;
        }
        write!(f, " ≤ {}", self.bound)
    }
}

/// `a ⪯ b`: `b`'s half-space is contained in `a`'s. Decided syntactically:
/// identical canonical coefficient vectors with `b.bound <= a.bound`.
/// Non-parallel pairs report false, which is sound but incomplete.
pub fn halfspace_leq(a: &HalfSpace, b: &HalfSpace) -> bool {
    a.scope == b.scope && a.coeffs == b.coeffs && b.bound <= a.bound
}

/// Removes restrictions dominated by a parallel one, and exact duplicates.
pub fn prune_parallel(halfspaces: Vec<HalfSpace>) -> Vec<HalfSpace> {
    let mut keep: Vec<HalfSpace> = Vec::with_capacity(halfspaces.len());
    for h in halfspaces {
        if keep.iter().any(|k| halfspace_leq(&h, k)) {
            continue; // an existing restriction is at least as tight
        }
        keep.retain(|k| !halfspace_leq(k, &h));
        keep.push(h);
    }
    keep.sort();
    keep
}

/// Deletes variable `k` by pairwise resolution of opposite-sign
/// restrictions. Restrictions without `k` pass through untouched (with no
/// parents). A derived ground impossibility short-circuits to a
/// contradiction.
pub fn fm_delete(halfspaces: &[HalfSpace], k: VarId) -> DeleteOutcome<HalfSpace> {
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    let mut out: Vec<Production<HalfSpace>> = Vec::new();
    for h in halfspaces {
        match h.coefficient(k) {
            Some(c) if c.is_positive() => positive.push(h),
            Some(_) => negative.push(h),
            None => out.push(Production::new(h.clone(), Vec::new())),
        }
    }

    for hi in &positive {
        let ci = hi.coefficient(k).unwrap().clone();
        for hj in &negative {
            let cj = hj.coefficient(k).unwrap().clone();
            // (-cj)·hi + ci·hj, a positive combination cancelling k.
            let scope = hi.scope.union(&hj.scope);
            let mut row = vec![BigInt::zero(); scope.len()];
            for (v, c) in hi.coefficients() {
                row[scope.position(v).unwrap()] += -&cj * c;
            }
            for (v, c) in hj.coefficients() {
                row[scope.position(v).unwrap()] += &ci * c;
            }
            debug_assert!(row[scope.position(k).unwrap()].is_zero());
            let bound = -&cj * &hi.bound + &ci * &hj.bound;
            match HalfSpace::from_integer_row(&scope, &row, bound) {
                LinearForm::HalfSpace(h) => {
                    out.push(Production::new(h, vec![(*hi).clone(), (*hj).clone()]))
                }
                LinearForm::Trivial => {}
                LinearForm::Infeasible => return DeleteOutcome::Contradiction,
            }
        }
    }

    // Canonical dedup plus parallel dominance, keeping the first provenance
    // of every survivor.
    let mut pruned: Vec<Production<HalfSpace>> = Vec::with_capacity(out.len());
    for p in out {
        if pruned.iter().any(|q| halfspace_leq(&p.basic, &q.basic)) {
            continue;
        }
        pruned.retain(|q| !halfspace_leq(&q.basic, &p.basic));
        pruned.push(p);
    }
    pruned.sort_by(|a, b| a.basic.cmp(&b.basic));
    DeleteOutcome::Produced(pruned)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn rq(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn hs(terms: &[(u32, i64)], bound: i64) -> HalfSpace {
        let terms: Vec<(VarId, Rat)> = terms.iter().map(|(v, c)| (VarId(*v), r(*c))).collect();
        match HalfSpace::new(&terms, r(bound)) {
            LinearForm::HalfSpace(h) => h,
            other => panic!("expected a half-space, got {other:?}"),
        }
    }

    #[test]
    fn canonicalization_clears_denominators_and_gcd() {
        let a = hs(&[(0, 2), (1, 2)], 2);
        let b = hs(&[(0, 1), (1, 1)], 1);
        assert_eq!(a, b);
        // Rational input x0/2 <= 1/4 scales to 2·x0 <= 1.
        let c = HalfSpace::new(&[(VarId(0), rq(1, 2))], rq(1, 4));
        assert_eq!(c, LinearForm::HalfSpace(hs(&[(0, 2)], 1)));
        // Direction is never flipped.
        assert_ne!(hs(&[(0, 1)], 1), hs(&[(0, -1)], -1));
    }

    #[test]
    fn zero_coefficients_leave_the_scope() {
        let h = HalfSpace::new(&[(VarId(0), r(0)), (VarId(1), r(1))], r(1));
        assert_eq!(h, LinearForm::HalfSpace(hs(&[(1, 1)], 1)));
        assert_eq!(HalfSpace::new(&[(VarId(0), r(0))], r(3)), LinearForm::Trivial);
        assert_eq!(
            HalfSpace::new(&[(VarId(0), r(0))], r(-1)),
            LinearForm::Infeasible
        );
    }

    #[test]
    fn parallel_dominance() {
        let loose = hs(&[(0, 1)], 1);
        let tight = hs(&[(0, 1)], 0);
        assert!(halfspace_leq(&loose, &tight));
        assert!(!halfspace_leq(&tight, &loose));
        // Different directions are incomparable here.
        assert!(!halfspace_leq(&hs(&[(0, 1)], 0), &hs(&[(1, 1)], 0)));
        // Scaled twins canonicalize equal, hence compare equal.
        assert!(halfspace_leq(&hs(&[(0, 2), (1, 2)], 2), &hs(&[(0, 1), (1, 1)], 1)));
        assert_eq!(prune_parallel(vec![loose, tight.clone()]), vec![tight]);
    }

    #[test]
    fn eliminate_single_pair() {
        // x0 + x1 <= 1 and -x1 <= 0 resolve to x0 <= 1.
        let h = vec![hs(&[(0, 1), (1, 1)], 1), hs(&[(1, -1)], 0)];
        let DeleteOutcome::Produced(out) = fm_delete(&h, VarId(1)) else {
            panic!("unexpected contradiction");
        };
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].basic, hs(&[(0, 1)], 1));
        assert_eq!(out[0].parents, h);
    }

    #[test]
    fn one_sided_variable_vanishes() {
        // Only an upper restriction on x1: nothing survives its deletion.
        let h = vec![hs(&[(1, 1)], 1)];
        assert_eq!(fm_delete(&h, VarId(1)).into_basics(), Some(vec![]));
    }

    #[test]
    fn elimination_with_scaling() {
        // {x0 <= 1, -x0 <= 0, x0 - x1 <= 0, x1 - 2 x0 <= 0} without x0.
        let h = vec![
            hs(&[(0, 1)], 1),
            hs(&[(0, -1)], 0),
            hs(&[(0, 1), (1, -1)], 0),
            hs(&[(0, -2), (1, 1)], 0),
        ];
        assert_eq!(
            fm_delete(&h, VarId(0)).into_basics(),
            Some(vec![hs(&[(1, -1)], 0), hs(&[(1, 1)], 2)])
        );
    }

    #[test]
    fn untouched_restrictions_pass_through() {
        let h = vec![hs(&[(0, 1), (1, 1)], 1), hs(&[(1, -1)], 0), hs(&[(2, 1)], 1)];
        let DeleteOutcome::Produced(out) = fm_delete(&h, VarId(1)) else {
            panic!("unexpected contradiction");
        };
        let passed = out.iter().find(|p| p.basic == hs(&[(2, 1)], 1)).unwrap();
        assert!(passed.parents.is_empty());
    }

    #[test]
    fn ground_impossibility_is_a_contradiction() {
        // x0 <= 0 and -x0 <= -1 imply 0 <= -1.
        let h = vec![hs(&[(0, 1)], 0), hs(&[(0, -1)], -1)];
        assert_eq!(fm_delete(&h, VarId(0)), DeleteOutcome::Contradiction);
    }
}
