//! Single-bit bounds: the Bell-diagonal PPT linear program and the Werner
//! parametrization of the optimal POVM.

use serde::{Deserialize, Serialize};

use super::lp::LinearProgram;
use crate::bell::{cardinalities, BellLabel};
use crate::error::{check_cap, Error, Result};

pub const BELL_LP_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingleBitBound {
    pub n: usize,
    /// `2/(2ⁿ+1)`.
    pub tight: f64,
    /// `2^{−(n−1)}`.
    pub weak: f64,
}

/// Upper bound on `p(0|0) + p(1|1) − 1` for PPT measurements on the hiding
/// states.
pub fn single_bit_bound(n: usize) -> Result<SingleBitBound> {
    check_cap("single_bit_bound", n, 1000)?;
    let tight = 2.0 / (2f64.powi(n as i32) + 1.0);
    let weak = 2f64.powi(1 - n as i32);
    Ok(SingleBitBound { n, tight, weak })
}

/// `M₀ = Σ_s α_s |Φ_s⟩⟨Φ_s|`, `M₁ = I − M₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BellDiagPovm {
    pub n: usize,
    /// Indexed by [`BellLabel::index`].
    pub alpha: Vec<f64>,
}

impl BellDiagPovm {
    pub fn new(n: usize, alpha: Vec<f64>) -> Result<BellDiagPovm> {
        check_cap("BellDiagPovm", n, BELL_LP_CAP)?;
        if alpha.len() != 1 << (2 * n) {
            return Err(Error::invalid(format!("expected {} coefficients, got {}", 1 << (2 * n), alpha.len())));
        }
        if let Some(a) = alpha.iter().find(|a| !(-1e-9..=1.0 + 1e-9).contains(*a)) {
            return Err(Error::invalid(format!("coefficient {a} outside [0, 1]")));
        }
        Ok(BellDiagPovm { n, alpha })
    }

    /// Diagonal of `M₀^Γ` in the Bell basis:
    /// `(1/2ⁿ) Σ_s α_s (−1)^{N₁₁(m⊕s)}`.
    pub fn pt_diagonal(&self) -> Vec<f64> {
        pt_rows(self.n).iter().map(|row| row.iter().zip(&self.alpha).map(|(r, a)| r * a).sum()).collect()
    }

    /// `(p(0|0), p(1|1))` on the hiding states.
    pub fn probabilities(&self) -> (f64, f64) {
        let (even, odd) = cardinalities(self.n).expect("capped");
        let mut p00 = 0.0;
        let mut p11 = 0.0;
        for k in BellLabel::all(self.n) {
            let a = self.alpha[k.index() as usize];
            if k.is_even() {
                p00 += a;
            } else {
                p11 += 1.0 - a;
            }
        }
        (p00 / even as f64, p11 / odd as f64)
    }
}

fn pt_rows(n: usize) -> Vec<Vec<f64>> {
    let scale = 1.0 / (1u64 << n) as f64;
    BellLabel::all(n)
        .map(|m| {
            BellLabel::all(n)
                .map(|s| {
                    let parity = m.xor(&s).expect("same size").n11() % 2;
                    if parity == 0 {
                        scale
                    } else {
                        -scale
                    }
                })
                .collect()
        })
        .collect()
}

/// Weights `w` and constant `k` with `p(0|0) + p(1|1) = w·α + k`.
pub fn sum_objective(n: usize) -> Result<(Vec<f64>, f64)> {
    check_cap("sum_objective", n, BELL_LP_CAP)?;
    let (even, odd) = cardinalities(n)?;
    let w = BellLabel::all(n).map(|k| if k.is_even() { 1.0 / even as f64 } else { -1.0 / odd as f64 }).collect();
    Ok((w, 1.0))
}

/// Maximizes `weights·α` over Bell-diagonal POVMs with both elements PPT.
pub fn bell_diag_lp(n: usize, weights: &[f64]) -> Result<(f64, BellDiagPovm)> {
    check_cap("bell_diag_lp", n, BELL_LP_CAP)?;
    let dim = 1usize << (2 * n);
    if weights.len() != dim {
        return Err(Error::invalid(format!("expected {dim} weights, got {}", weights.len())));
    }
    let mut lp = LinearProgram::maximize(weights.to_vec());
    for j in 0..dim {
        lp.add_bounds(j, 0.0, 1.0);
    }
    for row in pt_rows(n) {
        lp.add_ge(row.clone(), 0.0);
        lp.add_le(row, 1.0);
    }
    let sol = lp.solve()?;
    let alpha = sol.x.iter().map(|a| a.clamp(0.0, 1.0)).collect();
    Ok((sol.value, BellDiagPovm::new(n, alpha)?))
}

/// `M₀ = αI + β·2ⁿHₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WernerPovm {
    pub alpha: f64,
    pub beta: f64,
}

impl WernerPovm {
    /// Both elements positive and PPT.
    pub fn is_valid(&self, n: usize, tol: f64) -> bool {
        let d = 2f64.powi(n as i32);
        let (a, b) = (self.alpha, self.beta);
        let m1 = 1.0 - a;
        [a - b, a + b, a, a + d * b, m1 + b, m1 - b, m1, m1 - d * b].iter().all(|&v| v >= -tol)
    }

    /// `(p(0|0), p(1|1)) = (α + β, 1 − α + β)`, using `Tr(Hₙρ_b) = ±2⁻ⁿ`.
    pub fn probabilities(&self) -> (f64, f64) {
        (self.alpha + self.beta, 1.0 - self.alpha + self.beta)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionPoint {
    pub p00: f64,
    pub p11: f64,
}

/// `p(0|0)` at the kink of the Werner boundary, `2/(2ⁿ+1)`.
pub fn werner_kink(n: usize) -> f64 {
    2.0 / (2f64.powi(n as i32) + 1.0)
}

/// Largest `p(1|1)` at fixed `p(0|0) = t`: `1 − t + 2β` with
/// `β = min(t/2, (1−t)/(2ⁿ−1))`.
pub fn werner_max_p11(n: usize, t: f64) -> Result<(f64, WernerPovm)> {
    if n == 0 || n > 1000 {
        return Err(Error::cap("werner_max_p11", n, 1000));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::invalid(format!("p00 = {t} outside [0, 1]")));
    }
    let d = 2f64.powi(n as i32);
    let beta = (t / 2.0).min((1.0 - t) / (d - 1.0));
    let povm = WernerPovm { alpha: t - beta, beta };
    Ok((povm.probabilities().1, povm))
}

/// Boundary of the PPT-achievable `(p(0|0), p(1|1))` region. The kink
/// `2/(2ⁿ+1)` is merged into the grid so the maximum of `p00 + p11` is
/// always attained by some returned point.
pub fn werner_feasible_region(n: usize, grid: &[f64]) -> Result<Vec<RegionPoint>> {
    let mut ts: Vec<f64> = grid.to_vec();
    ts.push(werner_kink(n));
    ts.sort_by(|a, b| a.total_cmp(b));
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    ts.into_iter()
        .map(|t| werner_max_p11(n, t).map(|(p11, _)| RegionPoint { p00: t, p11 }))
        .collect()
}

/// `points` evenly spaced on `[0, 1]`.
pub fn unit_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|i| i as f64 / (points - 1) as f64).collect(),
    }
}
