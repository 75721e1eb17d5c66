//! Conversions between the two polytope representations.
//!
//! `vertex_enumerate` intersects every d-subset of the restriction
//! hyperplanes (hypercube facets included) and keeps the feasible solutions;
//! `facet_recovery` goes the other way, recovering restrictions from vertex
//! sets via the affine hull. Both are exact and desk-scale by design; they
//! cross-check the production paths.

use itertools::Itertools;
use num::{BigRational, One, Zero};

use crate::index_set::IndexSet;
use crate::rep::CapacityError;

use super::halfspace::{HalfSpace, LinearForm};
use super::linalg;
use super::vertex::VPolytope;

pub type Rat = BigRational;

/// Default cap on the scope dimension for subset enumeration.
pub const DEFAULT_DIM_LIMIT: usize = 6;

/// Dense rows `coeffs · x <= bound` over `scope`, with the hypercube facets
/// `0 <= x_i <= 1` appended and exact duplicates dropped.
fn dense_rows_with_cube(scope: &IndexSet, halfspaces: &[HalfSpace]) -> Vec<(Vec<Rat>, Rat)> {
    let d = scope.len();
    let mut rows: Vec<(Vec<Rat>, Rat)> = Vec::with_capacity(halfspaces.len() + 2 * d);
    for h in halfspaces {
        rows.push(h.dense_row(scope));
    }
    for i in 0..d {
        let mut upper = vec![Rat::zero(); d];
        upper[i] = Rat::one();
        rows.push((upper, Rat::one()));
        let mut lower = vec![Rat::zero(); d];
        lower[i] = -Rat::one();
        rows.push((lower, Rat::zero()));
    }
    rows.sort();
    rows.dedup();
    rows
}

/// Exact extreme points of the restriction system intersected with the unit
/// hypercube. An infeasible system yields the empty polytope.
pub fn vertex_enumerate(
    scope: &IndexSet,
    halfspaces: &[HalfSpace],
    dim_limit: usize,
) -> Result<VPolytope, CapacityError> {
    let d = scope.len();
    if d > dim_limit {
        return Err(CapacityError::DimensionTooLarge {
            dim: d,
            limit: dim_limit,
        });
    }
    debug_assert!(halfspaces.iter().all(|h| h.scope().is_subset(scope)));
    if d == 0 {
        // No coordinates: the hypercube is a single point and no canonical
        // restriction can mention it.
        return Ok(VPolytope::from_points(scope.clone(), vec![Vec::new()]));
    }

    let rows = dense_rows_with_cube(scope, halfspaces);
    let mut candidates: Vec<Vec<Rat>> = Vec::new();
    for subset in (0..rows.len()).combinations(d) {
        let a: Vec<Vec<Rat>> = subset.iter().map(|i| rows[*i].0.clone()).collect();
        let b: Vec<Rat> = subset.iter().map(|i| rows[*i].1.clone()).collect();
        let Some(point) = linalg::solve_square(&a, &b) else {
            continue; // degenerate subset
        };
        let feasible = rows.iter().all(|(coeffs, bound)| {
            coeffs
                .iter()
                .zip(&point)
                .map(|(c, x)| c * x)
                .sum::<Rat>()
                <= *bound
        });
        if feasible {
            candidates.push(point);
        }
    }
    candidates.sort();
    candidates.dedup();
    Ok(VPolytope::from_points(scope.clone(), candidates))
}

/// Recovers a restriction set denoting exactly `poly` (hypercube facets
/// included, lower-dimensional hulls pinned by equality pairs).
///
/// Candidate facets come from vertex subsets spanning hyperplanes of the
/// polytope's affine hull; a candidate is kept when every vertex lies on one
/// side. Requires a nonempty polytope.
pub fn facet_recovery(poly: &VPolytope) -> Vec<HalfSpace> {
    assert!(!poly.is_empty(), "cannot recover restrictions of the empty polytope");
    let scope = poly.scope().clone();
    let d = scope.len();
    let points = poly.points();
    let base = &points[0];

    let mut out_rows: Vec<(Vec<Rat>, Rat)> = Vec::new();

    // Affine basis of the hull: independent difference vectors.
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let mut reduced = diffs.clone();
    let pivots = linalg::rref(&mut reduced);
    let rank = pivots.len();
    let basis: Vec<Vec<Rat>> = reduced.into_iter().take(rank).collect();

    // Directions orthogonal to the hull become equality pairs.
    for normal in linalg::nullspace(&basis, d) {
        let offset: Rat = normal.iter().zip(base).map(|(n, x)| n * x).sum();
        out_rows.push((normal.clone(), offset.clone()));
        out_rows.push((normal.iter().map(|n| -n).collect(), -offset));
    }

    if rank > 0 {
        // Local coordinates of every vertex within the hull: solve
        // basis^T · y = p - base, one ambient row per coordinate.
        let rows: Vec<Vec<Rat>> = (0..d)
            .map(|i| basis.iter().map(|b| b[i].clone()).collect())
            .collect();
        let locals: Vec<Vec<Rat>> = points
            .iter()
            .map(|p| {
                let rhs: Vec<Rat> = p.iter().zip(base).map(|(a, b)| a - b).collect();
                linalg::solve_any(&rows, &rhs).expect("vertex lies in its own affine hull")
            })
            .collect();

        // Hyperplanes through rank-subsets of local points.
        for subset in (0..locals.len()).combinations(rank) {
            let q0 = &locals[subset[0]];
            let span: Vec<Vec<Rat>> = subset[1..]
                .iter()
                .map(|i| locals[*i].iter().zip(q0).map(|(a, b)| a - b).collect())
                .collect();
            let normals = linalg::nullspace(&span, rank);
            if normals.len() != 1 {
                continue; // subset does not span a hyperplane
            }
            let normal = &normals[0];
            let offset: Rat = normal.iter().zip(q0).map(|(n, x)| n * x).sum();
            let mut any_below = false;
            let mut any_above = false;
            for q in &locals {
                let val: Rat = normal.iter().zip(q).map(|(n, x)| n * x).sum();
                if val < offset {
                    any_below = true;
                } else if val > offset {
                    any_above = true;
                }
            }
            if any_below && any_above {
                continue; // cuts through the hull
            }
            // Map the local inequality back to ambient coordinates:
            // local(x) solves basis_columns · y = x - base.
            let gram: Vec<Vec<Rat>> = basis
                .iter()
                .map(|bi| {
                    basis
                        .iter()
                        .map(|bj| bi.iter().zip(bj).map(|(a, b)| a * b).sum())
                        .collect()
                })
                .collect();
            let g_inv_a = linalg::solve_square(&gram, normal).expect("gram matrix is invertible");
            let ambient: Vec<Rat> = (0..d)
                .map(|i| basis.iter().zip(&g_inv_a).map(|(b, l)| &b[i] * l).sum())
                .collect();
            let shift: Rat = ambient.iter().zip(base).map(|(w, x)| w * x).sum();
            if any_above {
                // Hull on the upper side: flip to keep `<=`.
                out_rows.push((ambient.iter().map(|w| -w).collect(), -(offset.clone() + shift.clone())));
            } else {
                out_rows.push((ambient, offset + shift));
            }
        }
    }

    // Hypercube facets are explicit on the restriction side.
    for i in 0..d {
        let mut upper = vec![Rat::zero(); d];
        upper[i] = Rat::one();
        out_rows.push((upper, Rat::one()));
        let mut lower = vec![Rat::zero(); d];
        lower[i] = -Rat::one();
        out_rows.push((lower, Rat::zero()));
    }

    let mut out = Vec::new();
    for (coeffs, bound) in out_rows {
        match HalfSpace::from_rational_row(&scope, &coeffs, &bound) {
            LinearForm::HalfSpace(h) => out.push(h),
            LinearForm::Trivial => {}
            LinearForm::Infeasible => unreachable!("recovered restriction excludes its own vertex"),
        }
    }
    super::halfspace::prune_parallel(out)
}
