//! Seeded generators shared by the acceptance criteria.

#![allow(dead_code)]

use idemval::finite::{Clause, ExplicitSet, FiniteSystem, FrameSpec, Tuple};
use idemval::polytope::{HalfSpace, LinearForm, Rat, VPolytope};
use idemval::{IndexSet, Represented, VarId, VarTable};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn var_table(n: usize) -> VarTable {
    let mut t = VarTable::new();
    for i in 0..n {
        t.declare(&format!("v{i}")).unwrap();
    }
    t
}

pub fn full_scope(n: usize) -> IndexSet {
    IndexSet::from_iter((0..n as u32).map(VarId))
}

pub fn random_scope(r: &mut ChaCha8Rng, n: usize) -> IndexSet {
    loop {
        let s = IndexSet::from_iter((0..n as u32).map(VarId).filter(|_| r.random_bool(0.5)));
        if !s.is_empty() {
            return s;
        }
    }
}

pub fn random_frames(r: &mut ChaCha8Rng, n: usize, max_card: u32) -> FrameSpec {
    FrameSpec::new((0..n).map(|_| r.random_range(1..=max_card)).collect())
}

pub fn random_assignment(r: &mut ChaCha8Rng, frames: &FrameSpec, scope: &IndexSet) -> Vec<u32> {
    scope
        .iter()
        .map(|v| r.random_range(0..frames.cardinality(v)))
        .collect()
}

pub fn random_clause(r: &mut ChaCha8Rng, frames: &FrameSpec, n: usize) -> Clause {
    let scope = random_scope(r, n);
    let values = random_assignment(r, frames, &scope);
    Clause::new(frames, scope, values)
}

pub fn random_explicit(r: &mut ChaCha8Rng, sys: &FiniteSystem, scope: &IndexSet) -> ExplicitSet {
    let members = sys
        .frames()
        .assignments(scope)
        .filter(|_| r.random_bool(0.5));
    ExplicitSet::new(scope.clone(), members)
}

pub fn random_tuple(r: &mut ChaCha8Rng, frames: &FrameSpec, scope: &IndexSet) -> Tuple {
    let values = random_assignment(r, frames, scope);
    Tuple::new(frames, scope.clone(), values)
}

pub fn clauses_explicit(sys: &FiniteSystem, scope: &IndexSet, clauses: &[Clause]) -> ExplicitSet {
    idemval::finite::clauses_to_explicit(sys, &Represented::new(scope.clone(), clauses.to_vec()))
        .expect("oracle-scale frame")
}

pub fn random_order(r: &mut ChaCha8Rng, n: usize, query: VarId) -> Vec<VarId> {
    let mut order: Vec<VarId> = (0..n as u32).map(VarId).filter(|v| *v != query).collect();
    order.shuffle(r);
    order
}

pub fn rational(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn random_unit_rat(r: &mut ChaCha8Rng, max_denom: i64) -> Rat {
    let d = r.random_range(1..=max_denom);
    let n = r.random_range(0..=d);
    rational(n, d)
}

pub fn random_halfspace(r: &mut ChaCha8Rng, scope: &IndexSet) -> HalfSpace {
    loop {
        let terms: Vec<(VarId, Rat)> = scope
            .iter()
            .map(|v| (v, Rat::from_integer(r.random_range(-5..=5).into())))
            .collect();
        let bound = if r.random_bool(0.5) {
            let anchor: Rat = terms.iter().map(|(_, c)| c * random_unit_rat(r, 4)).sum();
            anchor + Rat::from_integer(r.random_range(0..=1).into())
        } else {
            Rat::from_integer(r.random_range(-5..=5).into())
        };
        if let LinearForm::HalfSpace(h) = HalfSpace::new(&terms, bound) {
            return h;
        }
    }
}

pub fn cube_facets(scope: &IndexSet) -> Vec<HalfSpace> {
    let mut out = Vec::new();
    for v in scope.iter() {
        for (coeff, bound) in [(1i64, 1i64), (-1, 0)] {
            match HalfSpace::new(
                &[(v, Rat::from_integer(coeff.into()))],
                Rat::from_integer(bound.into()),
            ) {
                LinearForm::HalfSpace(h) => out.push(h),
                _ => unreachable!(),
            }
        }
    }
    out
}

pub fn random_hpolytope(r: &mut ChaCha8Rng, dim: usize, extra: usize) -> (IndexSet, Vec<HalfSpace>) {
    let scope = full_scope(dim);
    let mut hs = cube_facets(&scope);
    for _ in 0..extra {
        hs.push(random_halfspace(r, &scope));
    }
    (scope, hs)
}

pub fn random_vpolytope(r: &mut ChaCha8Rng, scope: &IndexSet, max_points: usize) -> VPolytope {
    let count = r.random_range(1..=max_points);
    let points = (0..count)
        .map(|_| scope.iter().map(|_| random_unit_rat(r, 4)).collect())
        .collect();
    VPolytope::from_points(scope.clone(), points)
}
