//! Exact two-phase simplex for small equality-form programs.
//!
//! Solves `min c·x  s.t.  A x = b, x ≥ 0` with Bland's rule, so it always
//! terminates. Used for the convex-combination feasibility questions behind
//! extreme-point filtering and minimal-pair search; systems are tiny, so the
//! dense tableau is fine.

use num::{BigRational, One, Signed, Zero};

type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, solution: Vec<Rat> },
}

struct Tableau {
    // rows[0] is the objective row (reduced costs, rhs = -objective value).
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    ncols: usize, // total variable columns (rhs excluded)
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone();
        for v in &mut self.rows[row] {
            *v = &*v / &inv;
        }
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let factor = self.rows[r][col].clone();
            for c in 0..=self.ncols {
                let v = &self.rows[r][c] - &factor * &self.rows[row][c];
                self.rows[r][c] = v;
            }
        }
        self.basis[row - 1] = col;
    }

    /// Bland's rule: entering column is the lowest index with a negative
    /// reduced cost; leaving row minimizes the ratio, ties by lowest basis
    /// variable. Returns false on unboundedness.
    fn optimize(&mut self, allowed: impl Fn(usize) -> bool) -> bool {
        loop {
            let Some(col) = (0..self.ncols)
                .find(|c| allowed(*c) && self.rows[0][*c].is_negative())
            else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 1..self.rows.len() {
                if !self.rows[r][col].is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][self.ncols] / &self.rows[r][col];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r - 1] < self.basis[lr - 1])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn set_objective(&mut self, costs: &[Rat]) {
        let mut obj = vec![Rat::zero(); self.ncols + 1];
        obj[..costs.len()].clone_from_slice(costs);
        self.rows[0] = obj;
        for r in 1..self.rows.len() {
            let var = self.basis[r - 1];
            if self.rows[0][var].is_zero() {
                continue;
            }
            let factor = self.rows[0][var].clone();
            for c in 0..=self.ncols {
                let v = &self.rows[0][c] - &factor * &self.rows[r][c];
                self.rows[0][c] = v;
            }
        }
    }

    fn objective_value(&self) -> Rat {
        -self.rows[0][self.ncols].clone()
    }

    fn solution(&self, nvars: usize) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); nvars];
        for (r, var) in self.basis.iter().enumerate() {
            if *var < nvars {
                x[*var] = self.rows[r + 1][self.ncols].clone();
            }
        }
        x
    }
}

/// Solves `min c·x  s.t.  A x = b, x ≥ 0` exactly.
pub fn solve_lp(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpResult {
    let m = a.len();
    let n = if m > 0 { a[0].len() } else { c.len() };
    debug_assert!(c.len() == n);

    // Phase 1: artificial variable per row, rhs made non-negative.
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m + 1);
    rows.push(vec![Rat::zero(); ncols + 1]);
    for i in 0..m {
        let mut row = vec![Rat::zero(); ncols + 1];
        let flip = b[i].is_negative();
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Rat::one();
        row[ncols] = if flip { -b[i].clone() } else { b[i].clone() };
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };
    let phase1: Vec<Rat> = (0..ncols)
        .map(|j| if j < n { Rat::zero() } else { Rat::one() })
        .collect();
    t.set_objective(&phase1);
    let bounded = t.optimize(|_| true);
    debug_assert!(bounded, "phase 1 is bounded below by zero");
    if !t.objective_value().is_zero() {
        return LpResult::Infeasible;
    }

    // Drive leftover artificial variables out of the basis; a row where that
    // is impossible is redundant and can be ignored (its rhs is zero).
    for r in 1..t.rows.len() {
        if t.basis[r - 1] < n {
            continue;
        }
        if let Some(col) = (0..n).find(|c| !t.rows[r][*c].is_zero()) {
            t.pivot(r, col);
        }
    }

    // Phase 2 over the original variables only.
    t.set_objective(c);
    if !t.optimize(|col| col < n) {
        return LpResult::Unbounded;
    }
    LpResult::Optimal {
        value: t.objective_value(),
        solution: t.solution(n),
    }
}

/// Is `{x >= 0 : A x = b}` nonempty?
pub fn feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
    let n = if a.is_empty() { 0 } else { a[0].len() };
    !matches!(solve_lp(a, b, &vec![Rat::zero(); n]), LpResult::Infeasible)
}
