//! Intersection of vertex-represented polytopes via minimal consistent
//! subset pairs.
//!
//! A pair of vertex subsets, one per operand, is consistent when their hulls
//! meet, and minimal when dropping any single vertex breaks consistency.
//! Each minimal pair pins down one point of the intersection; the hull of
//! those points is the intersection itself. Search is brute force over
//! subsets of bounded size, so the dimension is capped.

use std::collections::HashMap;

use itertools::Itertools;
use num::{BigRational, One, Zero};

use crate::rep::CapacityError;

use super::simplex::{self, LpResult};
use super::vertex::VPolytope;

pub type Rat = BigRational;

/// Dimension cap: minimal-pair search is only meant for small scopes.
pub const MC_DIM_LIMIT: usize = 3;

/// Largest supported vertex count per operand (subset masks are u64).
const MAX_POOL: usize = 64;

/// Builds the feasibility system for "hull of r1-picks meets hull of
/// r2-picks": combination weights per side, summing to one, with equal
/// weighted coordinate sums.
fn meet_system(
    p1: &[&Vec<Rat>],
    p2: &[&Vec<Rat>],
    d: usize,
) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n1 = p1.len();
    let n = n1 + p2.len();
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 2);
    let mut row1 = vec![Rat::zero(); n];
    row1[..n1].fill(Rat::one());
    a.push(row1);
    let mut row2 = vec![Rat::zero(); n];
    row2[n1..].fill(Rat::one());
    a.push(row2);
    for c in 0..d {
        let mut row = Vec::with_capacity(n);
        row.extend(p1.iter().map(|p| p[c].clone()));
        row.extend(p2.iter().map(|p| -p[c].clone()));
        a.push(row);
    }
    let mut b = vec![Rat::one(), Rat::one()];
    b.extend(std::iter::repeat_n(Rat::zero(), d));
    (a, b)
}

fn hulls_meet(p1: &[&Vec<Rat>], p2: &[&Vec<Rat>], d: usize) -> bool {
    let (a, b) = meet_system(p1, p2, d);
    simplex::feasible(&a, &b)
}

/// The single point of `hull(p1) ∩ hull(p2)`, when the intersection is a
/// point; `None` when it is larger.
fn singleton_meet(p1: &[&Vec<Rat>], p2: &[&Vec<Rat>], d: usize) -> Option<Vec<Rat>> {
    let (a, b) = meet_system(p1, p2, d);
    let n1 = p1.len();
    let n = n1 + p2.len();
    let mut point = Vec::with_capacity(d);
    for c in 0..d {
        // Coordinate c of the meeting point, through the first hull's weights.
        let mut cost = vec![Rat::zero(); n];
        for (j, p) in p1.iter().enumerate() {
            cost[j] = p[c].clone();
        }
        let lo = match simplex::solve_lp(&a, &b, &cost) {
            LpResult::Optimal { value, .. } => value,
            _ => return None,
        };
        let neg: Vec<Rat> = cost.iter().map(|v| -v).collect();
        let hi = match simplex::solve_lp(&a, &b, &neg) {
            LpResult::Optimal { value, .. } => -value,
            _ => return None,
        };
        if lo != hi {
            return None;
        }
        point.push(lo);
    }
    Some(point)
}

/// Combines two homogeneous vertex representations on the same scope by
/// minimal-pair search. The empty result is the contradiction.
pub fn mc_combine(a: &VPolytope, b: &VPolytope) -> Result<VPolytope, CapacityError> {
    assert_eq!(a.scope(), b.scope(), "operands must be homogeneous on one scope");
    let scope = a.scope().clone();
    let d = scope.len();
    if d > MC_DIM_LIMIT {
        return Err(CapacityError::DimensionTooLarge {
            dim: d,
            limit: MC_DIM_LIMIT,
        });
    }
    if a.is_empty() || b.is_empty() {
        return Ok(VPolytope::empty(scope));
    }
    assert!(
        a.points().len() <= MAX_POOL && b.points().len() <= MAX_POOL,
        "vertex pools exceed the subset-mask width"
    );
    if d == 0 {
        // Both are the one-point frame.
        return Ok(VPolytope::from_points(scope, vec![Vec::new()]));
    }

    let h1 = a.points();
    let h2 = b.points();
    // Any meeting point is already a combination of at most d+1 vertices
    // per side, so minimal pairs never need larger subsets.
    let max_pick = d + 1;
    let masks = |n: usize| -> Vec<u64> {
        (1..=n.min(max_pick))
            .flat_map(|size| {
                (0..n)
                    .combinations(size)
                    .map(|c| c.iter().fold(0u64, |m, i| m | 1 << i))
            })
            .collect()
    };
    let masks1 = masks(h1.len());
    let masks2 = masks(h2.len());

    fn pick(points: &[Vec<Rat>], mask: u64) -> Vec<&Vec<Rat>> {
        points
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, p)| p)
            .collect()
    }

    let mut consistent: HashMap<(u64, u64), bool> = HashMap::new();
    let mut is_consistent = |m1: u64, m2: u64| -> bool {
        if let Some(v) = consistent.get(&(m1, m2)) {
            return *v;
        }
        let v = hulls_meet(&pick(h1, m1), &pick(h2, m2), d);
        consistent.insert((m1, m2), v);
        v
    };

    let mut meeting_points: Vec<Vec<Rat>> = Vec::new();
    for &m1 in &masks1 {
        for &m2 in &masks2 {
            // Minimality first: a consistent strict sub-pair disqualifies
            // this pair and spares the feasibility check (consistency is
            // monotone under inclusion).
            let mut sub_consistent = false;
            for i in 0..h1.len() {
                let sub = m1 & !(1 << i);
                if sub != m1 && sub != 0 && is_consistent(sub, m2) {
                    sub_consistent = true;
                    break;
                }
            }
            if !sub_consistent {
                for j in 0..h2.len() {
                    let sub = m2 & !(1 << j);
                    if sub != m2 && sub != 0 && is_consistent(m1, sub) {
                        sub_consistent = true;
                        break;
                    }
                }
            }
            if sub_consistent || !is_consistent(m1, m2) {
                continue;
            }
            if let Some(p) = singleton_meet(&pick(h1, m1), &pick(h2, m2), d) {
                meeting_points.push(p);
            }
        }
    }
    meeting_points.sort();
    meeting_points.dedup();
    Ok(VPolytope::from_points(scope, meeting_points))
}
