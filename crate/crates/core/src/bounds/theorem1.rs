//! Lower bound on LOCC distinguishability of an orthogonal pair by a single
//! bipartite Pauli measurement.

use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::linalg::{c, trace_product, CMatrix};
use crate::pauli::PauliString;
use crate::states::DensityMatrix;

pub const PAULI_EXPANSION_CAP: usize = 2;
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// `a_s = Tr(σ_s ρ)` over all `16ⁿ` strings `σ_s` on the `2n` qubits
/// `(A₁..Aₙ, B₁..Bₙ)`, indexed by [`PauliString::index`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PauliCoeffs {
    pub n: usize,
    pub a: Vec<f64>,
}

impl PauliCoeffs {
    /// `(1/4ⁿ) Σ_s a_s σ_s`.
    pub fn reconstruct(&self) -> CMatrix {
        let q = 2 * self.n;
        let dim = 1usize << q;
        let mut m = CMatrix::zeros(dim, dim);
        for (s, &a) in PauliString::all(q).zip(&self.a) {
            if a != 0.0 {
                m += s.dense() * c(a, 0.0);
            }
        }
        m * c(1.0 / dim as f64, 0.0)
    }

    pub fn get(&self, s: &PauliString) -> f64 {
        self.a[s.index() as usize]
    }
}

fn pair_size(rho: &DensityMatrix) -> Result<usize> {
    let (da, db) = rho.split();
    if da != db || !da.is_power_of_two() {
        return Err(Error::invalid(format!("split {:?} is not n qubits per side", rho.split())));
    }
    let n = da.trailing_zeros() as usize;
    check_cap("pauli_coefficients", n, PAULI_EXPANSION_CAP)?;
    Ok(n)
}

pub fn pauli_coefficients(rho: &DensityMatrix) -> Result<PauliCoeffs> {
    let n = pair_size(rho)?;
    let a = PauliString::all(2 * n).map(|s| trace_product(&s.dense(), rho.matrix()).re).collect();
    Ok(PauliCoeffs { n, a })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PauliDistinguisher {
    pub string: PauliString,
    /// Outcome `+1` is read as bit 1 instead of bit 0.
    pub flipped: bool,
    /// `p(0|0) + p(1|1) − 1 = ½|a₀ₛ − a₁ₛ|`.
    pub achieved: f64,
}

/// Best single-Pauli measurement: maximizes `½|a₀ₛ − a₁ₛ|` over `s ≠ 0`,
/// first maximum in index order.
pub fn best_pauli_distinguisher(rho0: &DensityMatrix, rho1: &DensityMatrix) -> Result<PauliDistinguisher> {
    let n = pair_size(rho0)?;
    if rho1.split() != rho0.split() {
        return Err(Error::invalid("states act on different spaces"));
    }
    let overlap = trace_product(rho0.matrix(), rho1.matrix()).re;
    if overlap > ORTHOGONALITY_TOL {
        return Err(Error::NonOrthogonal(overlap));
    }
    let a0 = pauli_coefficients(rho0)?;
    let a1 = pauli_coefficients(rho1)?;
    let mut best = (1usize, 0.0f64);
    for s in 1..a0.a.len() {
        let v = 0.5 * (a0.a[s] - a1.a[s]);
        if v.abs() > best.1.abs() {
            best = (s, v);
        }
    }
    Ok(PauliDistinguisher {
        string: PauliString::from_index(2 * n, best.0 as u128),
        flipped: best.1 < 0.0,
        achieved: best.1.abs(),
    })
}

/// `√(1+x²)/√(16ⁿ−1)`, the guaranteed `p(0|0)+p(1|1)−1` at `x = p(0|0)−p(1|1)`.
pub fn theorem1_curve(n: usize, x: f64) -> Result<f64> {
    check_cap("theorem1_curve", n, 256)?;
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("x = {x} outside [-1, 1]")));
    }
    Ok((1.0 + x * x).sqrt() / (16f64.powi(n as i32) - 1.0).sqrt())
}
