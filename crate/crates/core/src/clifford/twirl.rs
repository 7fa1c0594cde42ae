use std::collections::BTreeMap;

use super::{enumerate_group_with_unitaries, CliffordElement};
use crate::error::{Error, Result};
use crate::linalg::{c, kron, max_abs_diff, trace, trace_product, CMatrix};
use crate::pauli::PauliString;
use crate::states::{h_operator, DensityMatrix};

/// `(1/|G|) Σ_c (U_c⊗U_c) m (U_c⊗U_c)†` over a precomputed group.
pub fn twirl_matrix(group: &[(CliffordElement, CMatrix)], m: &CMatrix) -> CMatrix {
    let mut acc = CMatrix::zeros(m.nrows(), m.ncols());
    for (_, u) in group {
        let w = kron(u, u);
        acc += &w * m * w.adjoint();
    }
    acc * c(1.0 / group.len() as f64, 0.0)
}

/// Clifford twirl of a `2ⁿ × 2ⁿ` bipartite state by exhaustive enumeration.
pub fn clifford_twirl_dense(rho: &DensityMatrix, n: usize) -> Result<DensityMatrix> {
    if rho.split() != (1 << n, 1 << n) {
        return Err(Error::invalid(format!("state split {:?} does not match n = {n}", rho.split())));
    }
    let group = enumerate_group_with_unitaries(n)?;
    let out = twirl_matrix(&group, rho.matrix());
    let out = (&out + out.adjoint()) * c(0.5, 0.0);
    DensityMatrix::new(out, rho.split())
}

/// Least-squares decomposition `m ≈ αI + βHₙ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerFit {
    pub alpha: f64,
    pub beta: f64,
    /// `Tr(Hₙ m)`.
    pub h_overlap: f64,
    /// Max-abs distance from `m` to the fitted operator.
    pub defect: f64,
}

pub fn werner_fit(m: &CMatrix, n: usize) -> Result<WernerFit> {
    let h = h_operator(n)?;
    let dim = (1u64 << (2 * n)) as f64;
    let tr = trace(m).re;
    let th = trace_product(h.matrix(), m).re;
    let alpha = (tr - th) / (dim - 1.0);
    let beta = (dim * th - tr) / (dim - 1.0);
    let mut fit = h.matrix() * c(beta, 0.0);
    for i in 0..fit.nrows() {
        fit[(i, i)] += c(alpha, 0.0);
    }
    Ok(WernerFit { alpha, beta, h_overlap: th, defect: max_abs_diff(m, &fit) })
}

/// Tableau-only twirl of a Pauli basis element `P₁⊗P₂`: the coefficients of
/// `(1/|G|) Σ_c (cP₁c†)⊗(cP₂c†)` on unsigned Pauli pairs, zeros dropped.
pub fn clifford_twirl_pauli(
    group: &[CliffordElement],
    p1: &PauliString,
    p2: &PauliString,
) -> Result<Vec<(PauliString, PauliString, f64)>> {
    let mut acc: BTreeMap<(PauliString, PauliString), i64> = BTreeMap::new();
    for g in group {
        let q1 = g.conjugate(p1)?;
        let q2 = g.conjugate(p2)?;
        let s = if q1.is_negative() ^ q2.is_negative() { -1 } else { 1 };
        *acc.entry((q1.unsigned(), q2.unsigned())).or_default() += s;
    }
    let total = group.len() as f64;
    Ok(acc
        .into_iter()
        .filter(|&(_, v)| v != 0)
        .map(|((a, b), v)| (a, b, v as f64 / total))
        .collect())
}
