//! Dense exact linear algebra over arbitrary-precision rationals.
//!
//! Desk-scale only: systems here have at most a handful of rows, so plain
//! Gauss-Jordan with exact pivots is the right tool.

use num::{BigRational, Zero};

pub type Rat = BigRational;

/// Reduced row echelon form, in place. Returns the pivot column per row.
pub fn rref(m: &mut [Vec<Rat>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|r| !m[*r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for c in col..cols {
            let v = &m[row][c] / &inv;
            m[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..cols {
                    let v = &m[r][c] - &factor * &m[row][c];
                    m[r][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

/// Solves a square system `a x = b`; `None` when `a` is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, p)| *p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// One solution of a possibly rectangular system `a x = b`, or `None` when
/// inconsistent. Free variables are set to zero.
pub fn solve_any(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    if a.is_empty() {
        return b.iter().all(Zero::is_zero).then(Vec::new);
    }
    let cols = a[0].len();
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // A pivot in the rhs column means 0 = 1 somewhere.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (row, col) in pivots.iter().enumerate() {
        x[*col] = aug[row][cols].clone();
    }
    Some(x)
}

/// Basis of the right nullspace of `m` (an `rows x cols` matrix).
pub fn nullspace(m: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = m.to_vec();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, col) in pivots.iter().enumerate() {
            v[*col] = -work[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

use num::One;
