use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_hermitian, hermitian_function, kron, CMatrix, I, ZERO};

/// Two-qubit concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`, where `λᵢ` are the
/// square roots of the eigenvalues of `√ρ ρ̃ √ρ` in decreasing order and
/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 || rho.split() != (2, 2) {
        return Err(Error::NotAState(format!("concurrence needs a two-qubit state, got dim {}", rho.dim())));
    }
    let y = CMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]);
    let yy = kron(&y, &y);
    let m = rho.matrix();
    let flipped = &yy * m.conjugate() * &yy;
    let sqrt_rho = hermitian_function(m, |x| x.max(0.0).sqrt());
    let r = &sqrt_rho * flipped * &sqrt_rho;
    let r = (&r + r.adjoint()) * crate::linalg::c(0.5, 0.0);
    let mut lambdas: Vec<f64> = eigenvalues_hermitian(&r).into_iter().map(|x| x.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

fn binary_entropy(p: f64) -> f64 {
    let h = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    h(p) + h(1.0 - p)
}

/// Entanglement of formation of a two-qubit state, in ebits.
pub fn wootters_eof(rho: &DensityMatrix) -> Result<f64> {
    let cc = concurrence(rho)?;
    Ok(binary_entropy((1.0 + (1.0 - cc * cc).max(0.0).sqrt()) / 2.0))
}
