//! Dense bipartite operators and the states built from them.
//!
//! Every operator carries a bipartite `split = (dim_A, dim_B)`. Multi-pair
//! states keep Alice's qubits as the leading block and Bob's as the trailing
//! block, so the partial transpose is a plain block transpose.

mod eof;
mod hiding;
pub(crate) mod tau;

pub use eof::{concurrence, wootters_eof};
pub use hiding::{
    bell_diagonal, bell_projector, bell_state_vector, h_operator, hiding_state, maximally_mixed,
    recursion_check, recursion_weight, werner_form, werner_form_check,
};
pub use tau::{tau_basis, tau_parity_state, tau_perfect_povm, tau_state, TauSymbol, TAU_CAP};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_hermitian, hermiticity_defect, trace, CMatrix};

/// Hermiticity and trace tolerance for constructed operators.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as nonnegative.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Largest `n` (qubits per side) for dense construction.
pub const CONSTRUCT_CAP: usize = 6;
/// Largest `n` for dense eigensolves.
pub const EIGEN_CAP: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    matrix: CMatrix,
    split: (usize, usize),
}

impl HermitianOperator {
    pub fn new(matrix: CMatrix, split: (usize, usize)) -> Result<HermitianOperator> {
        if !matrix.is_square() || matrix.nrows() != split.0 * split.1 {
            return Err(Error::invalid(format!(
                "{}x{} matrix does not match split {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                split.0,
                split.1
            )));
        }
        let defect = hermiticity_defect(&matrix);
        if defect > ALGEBRAIC_TOL {
            return Err(Error::invalid(format!("operator is not Hermitian (defect {defect:e})")));
        }
        Ok(HermitianOperator { matrix, split })
    }

    /// Symmetric `n`-qubit-per-side split.
    pub fn bipartite(matrix: CMatrix, n: usize) -> Result<HermitianOperator> {
        HermitianOperator::new(matrix, (1 << n, 1 << n))
    }

    pub(crate) fn from_parts(matrix: CMatrix, split: (usize, usize)) -> HermitianOperator {
        debug_assert_eq!(matrix.nrows(), split.0 * split.1);
        HermitianOperator { matrix, split }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn split(&self) -> (usize, usize) {
        self.split
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        trace(&self.matrix).re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        eigenvalues_hermitian(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Transpose of the B factor in the computational basis.
    pub fn partial_transpose(&self) -> HermitianOperator {
        let (da, db) = self.split;
        let m = &self.matrix;
        let out = CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| {
            let (ra, rb) = (r / db, r % db);
            let (ca, cb) = (c / db, c % db);
            m[(ra * db + cb, ca * db + rb)]
        });
        debug_assert_eq!(da * db, m.nrows());
        HermitianOperator { matrix: out, split: self.split }
    }

    pub fn is_ppt(&self, tol: f64) -> bool {
        self.partial_transpose().min_eigenvalue() >= -tol
    }

    pub fn to_record(&self) -> StateRecord {
        let dim = self.dim();
        let mut entries = Vec::new();
        for r in 0..dim {
            for c in r..dim {
                let z = self.matrix[(r, c)];
                if z.re != 0.0 || z.im != 0.0 {
                    entries.push((r, c, z.re, z.im));
                }
            }
        }
        StateRecord { dim, split: [self.split.0, self.split.1], entries }
    }

    pub fn from_record(record: &StateRecord) -> Result<HermitianOperator> {
        let mut m = CMatrix::zeros(record.dim, record.dim);
        for &(r, c, re, im) in &record.entries {
            if r > c || c >= record.dim {
                return Err(Error::Parse(format!("entry ({r}, {c}) is not in the upper triangle")));
            }
            m[(r, c)] = num_complex::Complex64::new(re, im);
            m[(c, r)] = num_complex::Complex64::new(re, -im);
        }
        HermitianOperator::new(m, (record.split[0], record.split[1]))
    }
}

/// Standalone free-function form of [`HermitianOperator::partial_transpose`].
pub fn partial_transpose(m: &HermitianOperator) -> HermitianOperator {
    m.partial_transpose()
}

pub fn is_ppt(m: &HermitianOperator, tol: f64) -> bool {
    m.is_ppt(tol)
}

/// A Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    /// Validates Hermiticity, trace and positivity.
    pub fn new(matrix: CMatrix, split: (usize, usize)) -> Result<DensityMatrix> {
        DensityMatrix::from_operator(HermitianOperator::new(matrix, split)?)
    }

    pub fn from_operator(op: HermitianOperator) -> Result<DensityMatrix> {
        let tr = op.trace();
        if (tr - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotAState(format!("trace is {tr}")));
        }
        let min = op.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::NotAState(format!("eigenvalue {min:e} is negative")));
        }
        Ok(DensityMatrix { op })
    }

    /// Pure state `|v⟩⟨v|` of a unit vector.
    pub fn pure(v: &crate::linalg::CVector, split: (usize, usize)) -> Result<DensityMatrix> {
        let norm = v.norm();
        if (norm - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotAState(format!("vector norm is {norm}")));
        }
        Ok(DensityMatrix { op: HermitianOperator::new(crate::linalg::outer(v), split)? })
    }

    pub(crate) fn from_parts(matrix: CMatrix, split: (usize, usize)) -> DensityMatrix {
        DensityMatrix { op: HermitianOperator::from_parts(matrix, split) }
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn into_operator(self) -> HermitianOperator {
        self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.op.matrix
    }

    pub fn split(&self) -> (usize, usize) {
        self.op.split
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn partial_transpose(&self) -> HermitianOperator {
        self.op.partial_transpose()
    }

    pub fn is_ppt(&self, tol: f64) -> bool {
        self.op.is_ppt(tol)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.op.to_record()).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<DensityMatrix> {
        let record: StateRecord = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        DensityMatrix::from_operator(HermitianOperator::from_record(&record)?)
    }
}

/// Serialized form of an operator: the upper triangle as
/// `(row, col, re, im)` triples, zeros omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub dim: usize,
    pub split: [usize; 2],
    pub entries: Vec<(usize, usize, f64, f64)>,
}
