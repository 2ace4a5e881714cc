//! Dense two-phase simplex for `min cᵀx` subject to `Ax = b`, `x ≥ 0`.
//!
//! Problem sizes here are at most a few hundred columns, so a full tableau
//! with Bland's anti-cycling rule is plenty.

use thiserror::Error;

const PIVOT_TOL: f64 = 1e-11;
const MAX_ITER: usize = 50_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("LP numerical failure: {0}")]
    NumericalFailure(String),
    #[error("objective unbounded below")]
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, objective: f64 },
    /// Phase one could not push the artificial variables below this sum.
    Infeasible { phase_one: f64 },
}

struct Tableau {
    /// `rows × (cols + 1)`, last column is the right-hand side.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let pv = self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v /= pv;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pr) in row.iter_mut().zip(prow.iter()) {
                    *v -= f * pr;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimize `cost · x` over columns allowed by `allowed`. Bland's rule.
    fn optimize(&mut self, cost: &[f64], allowed: &dyn Fn(usize) -> bool) -> Result<(), LpError> {
        for _ in 0..MAX_ITER {
            let rhs = self.cols;
            let mut entering = None;
            for j in 0..self.cols {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j];
                for (i, row) in self.t.iter().enumerate() {
                    reduced -= cost[self.basis[i]] * row[j];
                }
                if reduced < -1e-12 {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return Ok(()) };
            let mut leave: Option<(usize, f64)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if row[c] > PIVOT_TOL {
                    let ratio = row[rhs] / row[c];
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-14 || (ratio <= lr + 1e-14 && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else { return Err(LpError::Unbounded) };
            self.pivot(r, c);
        }
        Err(LpError::NumericalFailure(format!("no convergence after {MAX_ITER} pivots")))
    }
}

/// Solve `min cost·x` s.t. `a x = b`, `x ≥ 0`. `cost = None` stops after feasibility.
pub fn solve(a: &[Vec<f64>], b: &[f64], cost: Option<&[f64]>, feas_tol: f64) -> Result<LpOutcome, LpError> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(LpError::NumericalFailure("inconsistent LP dimensions".into()));
    }
    let cols = n + m;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let s = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut row = vec![0.0; cols + 1];
        for j in 0..n {
            row[j] = s * a[i][j];
        }
        row[n + i] = 1.0;
        row[cols] = s * b[i];
        t.push(row);
    }
    let mut tab = Tableau { t, basis: (n..n + m).collect(), cols };

    let mut phase1 = vec![0.0; cols];
    for c in phase1.iter_mut().skip(n) {
        *c = 1.0;
    }
    tab.optimize(&phase1, &|_| true)?;
    let infeas: f64 = (0..m).filter(|&i| tab.basis[i] >= n).map(|i| tab.t[i][cols]).sum();
    if infeas > feas_tol {
        return Ok(LpOutcome::Infeasible { phase_one: infeas });
    }

    // Drive zero-level artificials out of the basis; rows where that is impossible are redundant.
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.t[i][j].abs() > 1e-9 && !tab.basis.contains(&j)) {
                tab.pivot(i, j);
            } else {
                tab.t.remove(i);
                tab.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    if let Some(c) = cost {
        let mut full = c.to_vec();
        full.resize(cols, 0.0);
        tab.optimize(&full, &|j| j < n)?;
    }

    let mut x = vec![0.0; n];
    for (i, &bj) in tab.basis.iter().enumerate() {
        if bj < n {
            x[bj] = tab.t[i][cols].max(0.0);
        }
    }
    let objective = cost.map_or(0.0, |c| c.iter().zip(&x).map(|(u, v)| u * v).sum());
    Ok(LpOutcome::Optimal { x, objective })
}
