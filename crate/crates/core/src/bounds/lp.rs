//! Dense simplex for small linear programs.
//!
//! Problems have the form `max cᵀx` subject to `Gx ≤ h` with `x` free. They
//! are solved through the dual `min hᵀy` subject to `Gᵀy = c`, `y ≥ 0`, whose
//! tableau has one row per variable and one column per constraint. That
//! keeps pivots cheap when constraints are added in bulk, as in the cutting
//! plane loops. Pivoting uses Bland's rule, so the method cannot cycle. The
//! tableau is rebuilt from the original data every few dozen pivots, and the
//! primal point is read off as the simplex multipliers of the final basis.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub const LP_TOL: f64 = 1e-9;
const PIVOT_CAP: usize = 200_000;
/// Largest constraint violation accepted in the recovered primal point.
const RECOVERY_TOL: f64 = 1e-7;
const REFACTOR_EVERY: usize = 50;

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    objective: Vec<f64>,
    rows: Vec<Vec<f64>>,
    rhs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    pub pivots: usize,
}

impl LinearProgram {
    /// `max objective · x`.
    pub fn maximize(objective: Vec<f64>) -> LinearProgram {
        LinearProgram { objective, rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    /// `row · x ≤ rhs`.
    pub fn add_le(&mut self, row: Vec<f64>, rhs: f64) {
        assert_eq!(row.len(), self.num_vars(), "constraint width");
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    /// `row · x ≥ rhs`.
    pub fn add_ge(&mut self, row: Vec<f64>, rhs: f64) {
        self.add_le(row.into_iter().map(|v| -v).collect(), -rhs);
    }

    /// `row · x = rhs`, as a pair of inequalities.
    pub fn add_eq(&mut self, row: Vec<f64>, rhs: f64) {
        self.add_le(row.clone(), rhs);
        self.add_ge(row, rhs);
    }

    /// `lo ≤ x_j ≤ hi`.
    pub fn add_bounds(&mut self, j: usize, lo: f64, hi: f64) {
        let mut e = vec![0.0; self.num_vars()];
        e[j] = 1.0;
        self.add_le(e.clone(), hi);
        self.add_ge(e, lo);
    }

    pub fn solve(&self) -> Result<LpSolution> {
        let m = self.num_vars();
        let k = self.rows.len();
        // Columns: k constraint multipliers, then m artificials. Rows are
        // sign-flipped so the right-hand side is nonnegative.
        let width = k + m;
        let signs: Vec<f64> = self.objective.iter().map(|&c| if c < 0.0 { -1.0 } else { 1.0 }).collect();
        let mut a = DMatrix::<f64>::zeros(m, width);
        for i in 0..m {
            for (j, row) in self.rows.iter().enumerate() {
                a[(i, j)] = signs[i] * row[i];
            }
            a[(i, k + i)] = 1.0;
        }
        let rhs = DVector::from_fn(m, |i, _| signs[i] * self.objective[i]);
        let mut tab = Tableau { a, rhs, t: DMatrix::zeros(0, 0), b: DVector::zeros(0), basis: (k..k + m).collect(), pivots: 0 };
        tab.t = tab.a.clone();
        tab.b = tab.rhs.clone();

        let phase1_cost: Vec<f64> = (0..width).map(|j| if j >= k { 1.0 } else { 0.0 }).collect();
        tab.run(&phase1_cost, width)?;
        let infeas: f64 = tab.basis.iter().zip(tab.b.iter()).filter(|(&j, _)| j >= k).map(|(_, v)| v).sum();
        if infeas > LP_TOL * (1.0 + tab.rhs.amax()) {
            return Err(Error::Unbounded);
        }
        // Drive remaining artificials out of the basis where possible.
        for r in 0..m {
            if tab.basis[r] >= k {
                if let Some(j) = (0..k).max_by(|&x, &y| tab.t[(r, x)].abs().total_cmp(&tab.t[(r, y)].abs())) {
                    if tab.t[(r, j)].abs() > LP_TOL {
                        tab.pivot(r, j);
                    }
                }
            }
        }
        let cost: Vec<f64> = (0..width).map(|j| if j < k { self.rhs[j] } else { 0.0 }).collect();
        tab.run(&cost, k)?;

        // Simplex multipliers Bᵀπ = c_B; undoing the row signs gives x.
        let bmat = DMatrix::from_fn(m, m, |r, c| tab.a[(r, tab.basis[c])]);
        let cb = DVector::from_fn(m, |r, _| cost[tab.basis[r]]);
        let pi = bmat.transpose().lu().solve(&cb).ok_or_else(|| Error::invalid("singular optimal basis"))?;
        let x: Vec<f64> = (0..m).map(|i| signs[i] * pi[i]).collect();
        let violation = self
            .rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, h)| row.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - h)
            .fold(0.0f64, f64::max);
        if violation > RECOVERY_TOL {
            return Err(Error::NonConvergence { what: "simplex basis recovery", iterations: tab.pivots });
        }
        let value = x.iter().zip(&self.objective).map(|(a, c)| a * c).sum();
        Ok(LpSolution { x, value, pivots: tab.pivots })
    }
}

/// Tableau of the dual with the original data kept for refactorization.
struct Tableau {
    a: DMatrix<f64>,
    rhs: DVector<f64>,
    t: DMatrix<f64>,
    b: DVector<f64>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let (t, b) = (&mut self.t, &mut self.b);
        let p = t[(r, c)];
        let width = t.ncols();
        for j in 0..width {
            t[(r, j)] /= p;
        }
        b[r] /= p;
        for i in 0..t.nrows() {
            if i == r {
                continue;
            }
            let f = t[(i, c)];
            if f == 0.0 {
                continue;
            }
            for j in 0..width {
                let v = t[(r, j)];
                if v != 0.0 {
                    t[(i, j)] -= f * v;
                }
            }
            b[i] -= f * b[r];
            t[(i, c)] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Recomputes `B⁻¹A` and `B⁻¹c` from the original data.
    fn refactor(&mut self) -> Result<()> {
        let m = self.a.nrows();
        let bmat = DMatrix::from_fn(m, m, |r, c| self.a[(r, self.basis[c])]);
        let lu = bmat.lu();
        let t = lu.solve(&self.a).ok_or_else(|| Error::invalid("singular basis"))?;
        let b = lu.solve(&self.rhs).ok_or_else(|| Error::invalid("singular basis"))?;
        self.t = t;
        self.b = b.map(|v| if v.abs() < 1e-14 { 0.0 } else { v });
        Ok(())
    }

    /// Minimizes `cost·y` with Bland's rule. Only columns `< enter_limit`
    /// may enter. The tableau is refactored periodically and again before
    /// optimality is accepted.
    fn run(&mut self, cost: &[f64], enter_limit: usize) -> Result<()> {
        let m = self.t.nrows();
        let mut since_refactor = 0;
        loop {
            if self.pivots > PIVOT_CAP {
                return Err(Error::NonConvergence { what: "simplex", iterations: self.pivots });
            }
            if since_refactor >= REFACTOR_EVERY {
                self.refactor()?;
                since_refactor = 0;
            }
            let cb: Vec<f64> = self.basis.iter().map(|&j| cost[j]).collect();
            let entering = (0..enter_limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = cost[j] - (0..m).map(|i| cb[i] * self.t[(i, j)]).sum::<f64>();
                reduced < -LP_TOL
            });
            let Some(c) = entering else {
                if since_refactor == 0 {
                    return Ok(());
                }
                self.refactor()?;
                since_refactor = 0;
                continue;
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.t[(i, c)];
                if a > LP_TOL {
                    let ratio = self.b[i].max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - LP_TOL || (ratio <= lr + LP_TOL && self.basis[i] < self.basis[li]) {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            // An unbounded dual direction means the primal is infeasible.
            let Some((r, _)) = leave else { return Err(Error::Infeasible) };
            self.pivot(r, c);
            since_refactor += 1;
        }
    }
}
