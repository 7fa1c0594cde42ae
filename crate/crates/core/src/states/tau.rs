use super::{DensityMatrix, HermitianOperator};
use crate::error::{check_cap, Result};
use crate::linalg::{c, interleaved_to_blocks, kron, permute_qubits, CMatrix, CVector, ONE, ZERO};

use super::hiding::check_bit;

pub const TAU_CAP: usize = 3;

/// Labels of the four invariant two-qubit operators
/// `P_a = II`, `P_c = ZI + IZ + XI + IX`, `P_d = ZZ + XX`, `P_e = ZX + XZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TauSymbol {
    A,
    C,
    D,
    E,
}

impl TauSymbol {
    pub const ALL: [TauSymbol; 4] = [TauSymbol::A, TauSymbol::C, TauSymbol::D, TauSymbol::E];
}

fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

/// Dense 4×4 matrix of an invariant basis operator.
pub fn tau_basis(symbol: TauSymbol) -> CMatrix {
    let (x, z, i) = (pauli_x(), pauli_z(), CMatrix::identity(2, 2));
    match symbol {
        TauSymbol::A => CMatrix::identity(4, 4),
        TauSymbol::C => kron(&z, &i) + kron(&i, &z) + kron(&x, &i) + kron(&i, &x),
        TauSymbol::D => kron(&z, &z) + kron(&x, &x),
        TauSymbol::E => kron(&z, &x) + kron(&x, &z),
    }
}

fn ket(re: [f64; 2]) -> CVector {
    CVector::from_vec(vec![c(re[0], 0.0), c(re[1], 0.0)])
}

fn proj(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// `τ₀ = ½(|+⟩⟨+|⊗|0⟩⟨0| + |0⟩⟨0|⊗|+⟩⟨+|)`,
/// `τ₁ = ½(|−⟩⟨−|⊗|−⟩⟨−| + |1⟩⟨1|⊗|1⟩⟨1|)`.
pub fn tau_state(b: u8) -> Result<DensityMatrix> {
    check_bit(b)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (zero, one) = (proj(&ket([1.0, 0.0])), proj(&ket([0.0, 1.0])));
    let (plus, minus) = (proj(&ket([s, s])), proj(&ket([s, -s])));
    let m = if b == 0 {
        kron(&plus, &zero) + kron(&zero, &plus)
    } else {
        kron(&minus, &minus) + kron(&one, &one)
    };
    Ok(DensityMatrix::from_parts(m * c(0.5, 0.0), (2, 2)))
}

/// Per-copy operator tensor power reordered from `(A1, B1, A2, B2, ...)`
/// to the global `(A1..An, B1..Bn)` cut.
pub(crate) fn copies_to_blocks(m: &CMatrix, copies: usize) -> CMatrix {
    permute_qubits(m, &interleaved_to_blocks(copies))
}

/// `τ_b⁽ⁿ⁾ = 2^{1−n} Σ_{b₁⊕…⊕bₙ=b} τ_{b₁}⊗…⊗τ_{bₙ}`.
pub fn tau_parity_state(b: u8, n: usize) -> Result<DensityMatrix> {
    check_bit(b)?;
    check_cap("tau_parity_state", n, TAU_CAP)?;
    let taus = [tau_state(0)?.matrix().clone(), tau_state(1)?.matrix().clone()];
    let dim = 1usize << (2 * n);
    let mut acc = CMatrix::zeros(dim, dim);
    for bits in 0u32..(1 << n) {
        if bits.count_ones() % 2 != b as u32 {
            continue;
        }
        let mut term = CMatrix::identity(1, 1);
        for j in 0..n {
            term = kron(&term, &taus[((bits >> (n - 1 - j)) & 1) as usize]);
        }
        acc += term;
    }
    acc *= c(1.0 / (1u64 << (n - 1)) as f64, 0.0);
    Ok(DensityMatrix::from_parts(copies_to_blocks(&acc, n), (1 << n, 1 << n)))
}

/// The unique POVM that distinguishes `τ₀` from `τ₁` perfectly: the
/// projectors onto their (complementary) supports.
pub fn tau_perfect_povm() -> (HermitianOperator, HermitianOperator) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // Orthonormalize |+0⟩ and |0+⟩.
    let u = kron_vec(&ket([s, s]), &ket([1.0, 0.0]));
    let v = kron_vec(&ket([1.0, 0.0]), &ket([s, s]));
    let overlap = u.dotc(&v);
    let w = &v - &u * overlap;
    let w = &w / c(w.norm(), 0.0);
    let m0 = proj(&u) + proj(&w);
    let m1 = CMatrix::identity(4, 4) - &m0;
    (HermitianOperator::from_parts(m0, (2, 2)), HermitianOperator::from_parts(m1, (2, 2)))
}

fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}
