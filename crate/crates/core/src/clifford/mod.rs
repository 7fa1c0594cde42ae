//! Clifford group elements as signed tableaux.
//!
//! A [`CliffordElement`] on `n` qubits stores the images `aᵢ = c Xᵢ c†` and
//! `bᵢ = c Zᵢ c†`. Two unitaries with the same signed images differ only by a
//! global phase, so the element is the unitary modulo phase.
//!
//! Gates act in time order: applying gate `g` after `c` gives `g·c`, whose
//! images are those of `c` conjugated by `g`. [`compose`](CliffordElement::compose)
//! follows operator order, so `c1.compose(&c2)` runs `c2` first.

mod gates;
mod group;
mod synth;
mod twirl;

pub use gates::{CliffordCircuit, Gate};
pub use group::{
    enumerate_group, enumerate_group_with_unitaries, generators, group_order_mod_phase, log2_group_order_mod_phase,
    random_walk_sample, random_walk_samples, walk_length_policy, WalkOptions,
};
pub use synth::{gate_budget, synthesize_circuit, SYNTH_CONSTANT};
pub use twirl::{clifford_twirl_dense, clifford_twirl_pauli, twirl_matrix, werner_fit, WernerFit};

use crate::error::{Error, Result};
use crate::pauli::{pauli_mul, symplectic, Pauli, PauliString, MAX_QUBITS};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    n: usize,
    images: Vec<PauliString>,
}

impl CliffordElement {
    pub fn identity(n: usize) -> CliffordElement {
        assert!(n >= 1 && n <= MAX_QUBITS);
        let mut images = Vec::with_capacity(2 * n);
        images.extend((0..n).map(|q| PauliString::single(n, q, Pauli::X)));
        images.extend((0..n).map(|q| PauliString::single(n, q, Pauli::Z)));
        CliffordElement { n, images }
    }

    /// Builds an element from `a₁..aₙ` followed by `b₁..bₙ`, checking the
    /// canonical commutation relations.
    pub fn from_images(n: usize, images: Vec<PauliString>) -> Result<CliffordElement> {
        let c = CliffordElement { n, images };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidTableau(format!("qubit count {n}")));
        }
        if self.images.len() != 2 * n {
            return Err(Error::InvalidTableau(format!("expected {} images, got {}", 2 * n, self.images.len())));
        }
        for (i, p) in self.images.iter().enumerate() {
            if p.num_qubits() != n {
                return Err(Error::InvalidTableau(format!("image {i} acts on {} qubits", p.num_qubits())));
            }
            if p.is_identity() {
                return Err(Error::InvalidTableau(format!("image {i} is proportional to the identity")));
            }
        }
        for i in 0..2 * n {
            for j in i + 1..2 * n {
                let expected = u32::from(j == i + n);
                if symplectic(&self.images[i], &self.images[j]) != expected {
                    let rel = if expected == 1 { "anticommute" } else { "commute" };
                    return Err(Error::InvalidTableau(format!("images {i} and {j} must {rel}")));
                }
            }
        }
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[PauliString] {
        &self.images
    }

    /// `c Xᵢ c†`.
    pub fn x_image(&self, i: usize) -> PauliString {
        self.images[i]
    }

    /// `c Zᵢ c†`.
    pub fn z_image(&self, i: usize) -> PauliString {
        self.images[self.n + i]
    }

    pub fn is_identity(&self) -> bool {
        *self == CliffordElement::identity(self.n)
    }

    /// `c p c†`. Writes `p = ±i^{#Y} Πⱼ Xⱼ^{xⱼ} Zⱼ^{zⱼ}` and multiplies the
    /// corresponding images.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        if p.num_qubits() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: p.num_qubits() });
        }
        let mut acc = PauliString::identity(self.n);
        let mut k = (p.x_bits() & p.z_bits()).count_ones() as i64 + if p.is_negative() { 2 } else { 0 };
        for j in 0..self.n {
            for (bit, image) in [(p.x_bits(), self.images[j]), (p.z_bits(), self.images[self.n + j])] {
                if (bit >> j) & 1 == 1 {
                    let (prod, phase) = pauli_mul(&acc, &image)?;
                    acc = prod;
                    k += phase.exponent() as i64;
                }
            }
        }
        match k.rem_euclid(4) {
            0 => Ok(acc),
            2 => Ok(acc.neg()),
            _ => Err(Error::InvalidTableau("conjugate of a Hermitian Pauli is not Hermitian".into())),
        }
    }

    /// `self · other` as operators: `other` acts first.
    pub fn compose(&self, other: &CliffordElement) -> Result<CliffordElement> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        let images = other.images.iter().map(|p| self.conjugate(p)).collect::<Result<Vec<_>>>()?;
        Ok(CliffordElement { n: self.n, images })
    }

    pub fn inverse(&self) -> Result<CliffordElement> {
        // c⁻¹ Q c = P with x_k(P) = ⟨Q, b_k⟩ and z_k(P) = ⟨Q, a_k⟩; the sign
        // is read off from c P c† = ±Q.
        let n = self.n;
        let mut images = Vec::with_capacity(2 * n);
        for q in (0..n).map(|i| PauliString::single(n, i, Pauli::X)).chain((0..n).map(|i| PauliString::single(n, i, Pauli::Z))) {
            let mut x = 0u64;
            let mut z = 0u64;
            for k in 0..n {
                x |= (symplectic(&q, &self.images[n + k]) as u64) << k;
                z |= (symplectic(&q, &self.images[k]) as u64) << k;
            }
            let p = PauliString::new(n, x, z, false)?;
            let back = self.conjugate(&p)?;
            if back.unsigned() != q {
                return Err(Error::InvalidTableau("images do not form a symplectic basis".into()));
            }
            images.push(p.with_sign(back.is_negative()));
        }
        Ok(CliffordElement { n, images })
    }

    /// Left-multiplies by a gate (the gate acts after `self`).
    pub fn apply_gate(&mut self, gate: Gate) {
        for p in &mut self.images {
            gate.conjugate_in_place(p);
        }
    }

    /// Copy with image `i` negated; always another valid element.
    pub fn flip_sign(&self, i: usize) -> CliffordElement {
        let mut c = self.clone();
        c.images[i] = c.images[i].neg();
        c
    }
}
