//! PPT optimization for the separable τ hiding pair.
//!
//! `M₀` is restricted to the span of the symmetrized invariants: for `n`
//! copies, one operator per size-`n` multiset of `{P_a, P_c, P_d, P_e}`, the
//! sum of all distinct orderings of the tensor product. None of the factors
//! contains `Y`, so every such `M₀` is real symmetric and invariant under
//! partial transposition; only `0 ≤ M₀ ≤ I` has to be enforced.
//!
//! One copy has closed-form eigenvalues `a−2d`, `a−2e` and `α ± β` with
//! `α = a+d+e`, `β = √(8c²+(d−e)²)`, so the problem is a linear program plus
//! one second-order cone, handled by tangent cuts. Two and three copies use
//! eigenvector cuts: after each LP solve the most violated of `v·M₀v ≥ 0` and
//! `v·(I−M₀)v ≥ 0` is added.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::lp::LinearProgram;
use crate::error::{check_cap, Error, Result};
use crate::linalg::{kron, real_part, CMatrix};
use crate::states::{tau_basis, tau_parity_state, TauSymbol, TAU_CAP};
use crate::states::HermitianOperator;

pub const EIG_TOL: f64 = 1e-8;
pub const CUT_CAP: usize = 500;

/// Size-`n` multisets of basis symbols in lexicographic order.
pub fn tau_multisets(n: usize) -> Vec<Vec<TauSymbol>> {
    fn rec(start: usize, left: usize, cur: &mut Vec<TauSymbol>, out: &mut Vec<Vec<TauSymbol>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..4 {
            cur.push(TauSymbol::ALL[i]);
            rec(i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

/// Symmetrized operators in the `(A₁..Aₙ, B₁..Bₙ)` ordering, one per
/// multiset of [`tau_multisets`].
pub fn tau_symmetrized_basis(n: usize) -> Result<Vec<DMatrix<f64>>> {
    check_cap("tau_symmetrized_basis", n, TAU_CAP)?;
    let sets = tau_multisets(n);
    let dim = 1usize << (2 * n);
    let mut out = vec![CMatrix::zeros(dim, dim); sets.len()];
    for word in 0..(1usize << (2 * n)) {
        let symbols: Vec<TauSymbol> = (0..n).map(|j| TauSymbol::ALL[(word >> (2 * (n - 1 - j))) & 3]).collect();
        let mut key = symbols.clone();
        key.sort();
        let slot = sets.iter().position(|s| *s == key).expect("multiset listed");
        let mut term = CMatrix::identity(1, 1);
        for s in &symbols {
            term = kron(&term, &tau_basis(*s));
        }
        out[slot] += term;
    }
    Ok(out
        .into_iter()
        .map(|m| real_part(&crate::states::tau::copies_to_blocks(&m, n)))
        .collect())
}

/// Coefficients of `M₀` over the symmetrized basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauPovmParam {
    pub n: usize,
    pub coeffs: Vec<f64>,
}

impl TauPovmParam {
    /// One copy: `M₀ = aP_a + cP_c + dP_d + eP_e`.
    pub fn single(a: f64, c: f64, d: f64, e: f64) -> TauPovmParam {
        TauPovmParam { n: 1, coeffs: vec![a, c, d, e] }
    }

    pub fn operator(&self) -> Result<HermitianOperator> {
        let basis = tau_symmetrized_basis(self.n)?;
        if basis.len() != self.coeffs.len() {
            return Err(Error::invalid(format!("expected {} coefficients", basis.len())));
        }
        let m = combine(&basis, &self.coeffs);
        HermitianOperator::new(m.map(|v| crate::linalg::c(v, 0.0)), (1 << self.n, 1 << self.n))
    }

    /// Closed-form eigenvalues of a one-copy `M₀`.
    pub fn single_eigenvalues(&self) -> Option<[f64; 4]> {
        if self.n != 1 {
            return None;
        }
        let [a, c, d, e] = [self.coeffs[0], self.coeffs[1], self.coeffs[2], self.coeffs[3]];
        let (alpha, beta) = (a + d + e, (8.0 * c * c + (d - e) * (d - e)).sqrt());
        Some([a - 2.0 * d, a - 2.0 * e, alpha - beta, alpha + beta])
    }
}

fn combine(basis: &[DMatrix<f64>], x: &[f64]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(basis[0].nrows(), basis[0].ncols());
    for (b, &v) in basis.iter().zip(x) {
        if v != 0.0 {
            m += b * v;
        }
    }
    m
}

/// `Tr(S_m τ_b⁽ⁿ⁾)` for each basis operator.
pub fn tau_overlaps(n: usize) -> Result<[Vec<f64>; 2]> {
    let basis = tau_symmetrized_basis(n)?;
    let taus = [real_part(tau_parity_state(0, n)?.matrix()), real_part(tau_parity_state(1, n)?.matrix())];
    Ok(taus.map(|t| basis.iter().map(|b| b.component_mul(&t).sum()).collect()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauSolve {
    pub n: usize,
    /// Outer-approximation optimum, an upper bound on the true value.
    pub upper: f64,
    /// Feasible point after shrinking the relaxed solution into `[0, I]`.
    pub point: TauPovmParam,
    pub p00: f64,
    pub p11: f64,
    /// Spectrum range of the relaxed solution.
    pub min_eig: f64,
    pub max_eig: f64,
    pub iterations: usize,
}

/// Which eigenvector cuts are added after each LP solve.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CutPolicy {
    /// The single most violated eigenvector.
    MostViolated,
    /// Every eigenvector outside `[−tol, 1 + tol]`.
    #[default]
    AllViolated,
}

enum Goal {
    /// `max p00 + p11`.
    Sum,
    /// `max p11` at `p00 = t`.
    P11At(f64),
}

/// The optimization runs over `y_m = s_m x_m` with `Ŝ_m = S_m / s_m` of unit
/// operator norm, which keeps cut rows in `[−1, 1]`.
struct Problem {
    n: usize,
    basis: Vec<DMatrix<f64>>,
    scale: Vec<f64>,
    /// `|y_m| ≤ ‖Ŝ_m‖₁ / ‖Ŝ_m‖₂²`, valid because the basis is orthogonal.
    bound: Vec<f64>,
    /// Overlaps `Tr(Ŝ_m τ_b)`.
    g: [Vec<f64>; 2],
    /// Overlaps `Tr(S_m τ_b)`.
    raw_g: [Vec<f64>; 2],
}

impl Problem {
    fn new(n: usize) -> Result<Problem> {
        let raw = tau_symmetrized_basis(n)?;
        let raw_g = tau_overlaps(n)?;
        let mut basis = Vec::with_capacity(raw.len());
        let mut scale = Vec::with_capacity(raw.len());
        let mut bound = Vec::with_capacity(raw.len());
        for m in raw {
            let ev = SymmetricEigen::new(m.clone()).eigenvalues;
            let s = ev.amax();
            let hat = m / s;
            let trace_norm: f64 = ev.iter().map(|v| v.abs() / s).sum();
            bound.push(trace_norm / hat.norm_squared());
            basis.push(hat);
            scale.push(s);
        }
        let g = [0, 1].map(|b| raw_g[b].iter().zip(&scale).map(|(v, s)| v / s).collect());
        Ok(Problem { n, basis, scale, bound, g, raw_g })
    }

    fn lp(&self, goal: &Goal) -> LinearProgram {
        let (g0, g1) = (&self.g[0], &self.g[1]);
        let objective = match goal {
            Goal::Sum => g0.iter().zip(g1).map(|(a, b)| a - b).collect(),
            Goal::P11At(_) => g1.iter().map(|v| -v).collect(),
        };
        let mut lp = LinearProgram::maximize(objective);
        for (j, &b) in self.bound.iter().enumerate() {
            lp.add_bounds(j, -b, b);
        }
        if let Goal::P11At(t) = goal {
            lp.add_eq(g0.clone(), *t);
        }
        lp
    }

    fn finish(&self, y: &[f64], upper: f64, min_eig: f64, max_eig: f64, iterations: usize) -> TauSolve {
        // (M + εI)/(1 + 2ε) has spectrum inside [0, 1]; the identity is the
        // first basis operator.
        let eps = (-min_eig).max(max_eig - 1.0).max(0.0);
        let mut coeffs: Vec<f64> = y.iter().zip(&self.scale).map(|(v, s)| v / s).collect();
        coeffs[0] += eps;
        for v in &mut coeffs {
            *v /= 1.0 + 2.0 * eps;
        }
        let dot = |g: &[f64]| g.iter().zip(&coeffs).map(|(a, b)| a * b).sum::<f64>();
        let (p00, p11) = (dot(&self.raw_g[0]), 1.0 - dot(&self.raw_g[1]));
        TauSolve { n: self.n, upper, point: TauPovmParam { n: self.n, coeffs }, p00, p11, min_eig, max_eig, iterations }
    }

    /// Cuts found along the way are appended to `pool`; they constrain `M₀`
    /// alone, so they stay valid for every goal.
    fn solve_cuts(&self, goal: &Goal, policy: CutPolicy, pool: &mut Vec<(Vec<f64>, bool)>) -> Result<TauSolve> {
        let mut lp = self.lp(goal);
        for (row, upper) in pool.iter() {
            if *upper {
                lp.add_le(row.clone(), 1.0);
            } else {
                lp.add_ge(row.clone(), 0.0);
            }
        }
        for it in 1..=CUT_CAP {
            let sol = lp.solve()?;
            let m = combine(&self.basis, &sol.x);
            let eig = SymmetricEigen::new(m);
            let ev = &eig.eigenvalues;
            let min_eig = ev.min();
            let max_eig = ev.max();
            if min_eig >= -EIG_TOL && max_eig <= 1.0 + EIG_TOL {
                return Ok(self.finish(&sol.x, 1.0 + sol.value, min_eig, max_eig, it));
            }
            // (eigenvector index, violation, is upper)
            let mut cuts: Vec<(usize, f64, bool)> = Vec::new();
            for i in 0..ev.len() {
                if ev[i] < -EIG_TOL {
                    cuts.push((i, -ev[i], false));
                }
                if ev[i] > 1.0 + EIG_TOL {
                    cuts.push((i, ev[i] - 1.0, true));
                }
            }
            if policy == CutPolicy::MostViolated {
                let worst = cuts.iter().copied().max_by(|x, y| x.1.total_cmp(&y.1)).expect("violated");
                cuts = vec![worst];
            }
            for (col, _, upper) in cuts {
                let v = eig.eigenvectors.column(col);
                let row: Vec<f64> = self.basis.iter().map(|b| v.dot(&(b * v))).collect();
                if upper {
                    lp.add_le(row.clone(), 1.0);
                } else {
                    lp.add_ge(row.clone(), 0.0);
                }
                pool.push((row, upper));
            }
        }
        Err(Error::NonConvergence { what: "tau cutting planes", iterations: CUT_CAP })
    }

    /// One copy through the closed-form spectrum.
    fn solve_single(&self, goal: &Goal) -> Result<TauSolve> {
        let mut lp = self.lp(goal);
        // Rows below are written in the unscaled (a, c, d, e).
        let to_y = |row: [f64; 4]| -> Vec<f64> { row.iter().zip(&self.scale).map(|(r, s)| r / s).collect() };
        // a − 2d and a − 2e in [0, 1].
        for row in [[1.0, 0.0, -2.0, 0.0], [1.0, 0.0, 0.0, -2.0]] {
            lp.add_ge(to_y(row), 0.0);
            lp.add_le(to_y(row), 1.0);
        }
        // β ≤ α and β ≤ 1 − α: seed tangents, then refine at the iterate.
        let add_tangents = |lp: &mut LinearProgram, u: f64, w: f64| {
            // u√8c + w(d−e) ≤ a+d+e and u√8c + w(d−e) ≤ 1 − (a+d+e).
            let s8 = 8f64.sqrt();
            lp.add_le(to_y([-1.0, u * s8, w - 1.0, -w - 1.0]), 0.0);
            lp.add_le(to_y([1.0, u * s8, w + 1.0, -w + 1.0]), 1.0);
        };
        for j in 0..16 {
            let th = std::f64::consts::TAU * j as f64 / 16.0;
            add_tangents(&mut lp, th.cos(), th.sin());
        }
        for it in 1..=CUT_CAP {
            let sol = lp.solve()?;
            let x: Vec<f64> = sol.x.iter().zip(&self.scale).map(|(v, s)| v / s).collect();
            let p = TauPovmParam { n: 1, coeffs: x.clone() };
            let ev = p.single_eigenvalues().expect("one copy");
            let min_eig = ev.iter().copied().fold(f64::INFINITY, f64::min);
            let max_eig = ev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if min_eig >= -EIG_TOL && max_eig <= 1.0 + EIG_TOL {
                return Ok(self.finish(&sol.x, 1.0 + sol.value, min_eig, max_eig, it));
            }
            let [c, d, e] = [x[1], x[2], x[3]];
            let beta = (8.0 * c * c + (d - e) * (d - e)).sqrt();
            add_tangents(&mut lp, 8f64.sqrt() * c / beta, (d - e) / beta);
        }
        Err(Error::NonConvergence { what: "tau tangent cuts", iterations: CUT_CAP })
    }
}

/// Generic eigenvector-cut solve, available for every `n ≤ 3`; one copy
/// normally uses the closed-form route in [`tau_max_sum`].
pub fn tau_max_sum_cutting_plane(n: usize, policy: CutPolicy) -> Result<TauSolve> {
    Problem::new(n)?.solve_cuts(&Goal::Sum, policy, &mut Vec::new())
}

/// Maximum of `p(0|0) + p(1|1)` over PPT measurements in the symmetric span.
pub fn tau_max_sum(n: usize) -> Result<TauSolve> {
    let problem = Problem::new(n)?;
    if n == 1 {
        problem.solve_single(&Goal::Sum)
    } else {
        problem.solve_cuts(&Goal::Sum, CutPolicy::default(), &mut Vec::new())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TauRegionPoint {
    pub p00: f64,
    /// Upper bound on the largest `p(1|1)`.
    pub p11: f64,
    /// `p(1|1)` of the feasible point found, whose own `p(0|0)` may differ
    /// from the grid value by the eigenvalue tolerance.
    pub p11_feasible: f64,
}

/// Boundary of the PPT region for `τ` at each `p(0|0)` in `grid`.
/// Unreachable grid values are skipped.
pub fn tau_ppt_region(n: usize, grid: &[f64]) -> Result<Vec<TauRegionPoint>> {
    let problem = Problem::new(n)?;
    let mut pool = Vec::new();
    let mut out = Vec::with_capacity(grid.len());
    for &t in grid {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::invalid(format!("p00 = {t} outside [0, 1]")));
        }
        let goal = Goal::P11At(t);
        let res = if n == 1 { problem.solve_single(&goal) } else { problem.solve_cuts(&goal, CutPolicy::default(), &mut pool) };
        match res {
            Ok(s) => out.push(TauRegionPoint { p00: t, p11: s.upper.min(1.0), p11_feasible: s.p11 }),
            Err(Error::Infeasible) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `((√3/2)ⁿ, 1/(1 − log₂√3))`: the bound on `|p00 + p11 − 1|` if only
/// parity-of-products measurements were optimal, and the resulting qubit
/// overhead against the Bell-pair scheme.
pub fn tau_repetition_bound(n: usize) -> Result<(f64, f64)> {
    check_cap("tau_repetition_bound", n, 100_000)?;
    let r = 3f64.sqrt() / 2.0;
    Ok((r.powi(n as i32), 1.0 / (1.0 - 3f64.sqrt().log2())))
}

/// `|Oₙ|/4ⁿ = ½(1 − 2⁻ⁿ)` ebits.
pub fn emin_lower_bound(n: usize) -> Result<f64> {
    let (_, odd) = crate::bell::cardinalities(n)?;
    Ok(odd as f64 / 4f64.powi(n as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigenvalues_hermitian;

    #[test]
    fn multiset_counts() {
        assert_eq!(tau_multisets(1).len(), 4);
        assert_eq!(tau_multisets(2).len(), 10);
        assert_eq!(tau_multisets(3).len(), 20);
    }

    #[test]
    fn closed_form_spectrum() {
        let p = TauPovmParam::single(0.4, 0.07, -0.05, 0.11);
        let mut closed = p.single_eigenvalues().unwrap().to_vec();
        closed.sort_by(f64::total_cmp);
        let dense = eigenvalues_hermitian(p.operator().unwrap().matrix());
        for (a, b) in closed.iter().zip(&dense) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn single_copy_optimum() {
        let s = tau_max_sum(1).unwrap();
        assert!((s.upper - 1.0 - 3f64.sqrt() / 2.0).abs() < 1e-6, "{}", s.upper);
    }

    #[test]
    fn emin_values() {
        assert_eq!(emin_lower_bound(1).unwrap(), 0.25);
        assert_eq!(emin_lower_bound(2).unwrap(), 0.375);
    }
}
