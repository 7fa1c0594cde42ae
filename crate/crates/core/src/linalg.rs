//! Small dense linear-algebra helpers shared by the state and bound modules.
//!
//! Basis convention: for a register of `q` qubits, qubit 0 is the most
//! significant bit of the basis index, so `kron(A, B)` places `A` on the
//! leading qubits.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn outer(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().sum()
}

/// `Tr(A B)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn eigenvalues_hermitian(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Eigenpairs of a Hermitian matrix, ascending by eigenvalue.
pub fn eigen_hermitian(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), order.len(), |r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}

/// Applies `f` to the spectrum of a Hermitian matrix.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let eig = SymmetricEigen::new(m.clone());
    let d = CMatrix::from_diagonal(&eig.eigenvalues.map(|x| c(f(x), 0.0)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}

/// Reorders the qubits of an operator on `q` qubits. Qubit `i` of the input
/// becomes qubit `perm[i]` of the output.
pub fn permute_qubits(m: &CMatrix, perm: &[usize]) -> CMatrix {
    let q = perm.len();
    let dim = 1usize << q;
    assert_eq!(m.nrows(), dim, "operator does not act on {q} qubits");
    let map: Vec<usize> = (0..dim).map(|idx| permute_index(idx, perm)).collect();
    let mut out = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for col in 0..dim {
            out[(map[r], map[col])] = m[(r, col)];
        }
    }
    out
}

/// Same as [`permute_qubits`] for a state vector.
pub fn permute_vector(v: &CVector, perm: &[usize]) -> CVector {
    let dim = v.len();
    let mut out = CVector::zeros(dim);
    for idx in 0..dim {
        out[permute_index(idx, perm)] = v[idx];
    }
    out
}

fn permute_index(idx: usize, perm: &[usize]) -> usize {
    let q = perm.len();
    let mut out = 0;
    for (i, &target) in perm.iter().enumerate() {
        let bit = (idx >> (q - 1 - i)) & 1;
        out |= bit << (q - 1 - target);
    }
    out
}

/// Permutation taking per-pair ordering `(A1, B1, A2, B2, ...)` to the block
/// ordering `(A1..An, B1..Bn)` used for bipartite operators.
pub fn interleaved_to_blocks(pairs: usize) -> Vec<usize> {
    (0..2 * pairs)
        .map(|i| if i % 2 == 0 { i / 2 } else { pairs + i / 2 })
        .collect()
}

pub fn real_part(m: &CMatrix) -> DMatrix<f64> {
    m.map(|z| z.re)
}
