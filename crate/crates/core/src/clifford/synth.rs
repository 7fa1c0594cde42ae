//! Circuit synthesis by tableau reduction.
//!
//! For each qubit `i` in turn, gates on qubits `≥ i` are applied on the left
//! until `aᵢ = ±Xᵢ` and `bᵢ = ±Zᵢ`:
//!
//! 1. every component of `aᵢ` is turned into `X` (`H` for `Z`, `P†` for `Y`);
//! 2. an `X` is moved onto qubit `i` with `CNOT(k, i)` if needed, then the other
//!    `X`s are cleared with `CNOT(i, k)`;
//! 3. every component of `bᵢ` on `k > i` is turned into `Z` (`H` for `X`,
//!    `P†` then `H` for `Y`) and cleared with `CNOT(k, i)`; a remaining `Y` on
//!    qubit `i` is mapped to `Z` by `H P H`, which fixes `X`.
//!
//! With `m = n − i` the three steps use at most `m`, `m` and `3m` gates, so
//! the reduction costs at most `2.5n² + 2.5n`. What remains is a Pauli
//! operator, realized by `Z = PP`, `X = HPPH` and `Y = ZX`, at most `6n`
//! gates. The total `2.5n² + 8.5n` stays within `3n² + 7n + C` for every
//! `n ≥ 1` once `C = 1`.

use super::{CliffordCircuit, CliffordElement, Gate};
use crate::error::{Error, Result};
use crate::pauli::Pauli;

/// The additive constant `C` in the gate budget `3n² + 7n + C`.
pub const SYNTH_CONSTANT: usize = 1;

pub fn gate_budget(n: usize) -> usize {
    3 * n * n + 7 * n + SYNTH_CONSTANT
}

struct Reducer {
    work: CliffordElement,
    applied: Vec<Gate>,
}

impl Reducer {
    fn apply(&mut self, g: Gate) {
        self.work.apply_gate(g);
        self.applied.push(g);
    }
}

/// A circuit whose action on the identity tableau reproduces `c` exactly,
/// signs included.
pub fn synthesize_circuit(c: &CliffordElement) -> Result<CliffordCircuit> {
    c.validate()?;
    let n = c.num_qubits();
    let mut r = Reducer { work: c.clone(), applied: Vec::new() };
    for i in 0..n {
        let a = r.work.x_image(i);
        for k in i..n {
            match a.get(k) {
                Pauli::Z => r.apply(Gate::H(k)),
                Pauli::Y => r.apply(Gate::Pd(k)),
                _ => {}
            }
        }
        let a = r.work.x_image(i);
        if a.get(i) == Pauli::I {
            let k = (i + 1..n)
                .find(|&k| a.get(k) == Pauli::X)
                .ok_or_else(|| Error::InvalidTableau(format!("image of X{i} has no support on qubits >= {i}")))?;
            r.apply(Gate::Cnot(k, i));
        }
        let a = r.work.x_image(i);
        for k in i + 1..n {
            if a.get(k) == Pauli::X {
                r.apply(Gate::Cnot(i, k));
            }
        }

        let b = r.work.z_image(i);
        for k in i + 1..n {
            match b.get(k) {
                Pauli::X => r.apply(Gate::H(k)),
                Pauli::Y => {
                    r.apply(Gate::Pd(k));
                    r.apply(Gate::H(k));
                }
                _ => {}
            }
            if b.get(k) != Pauli::I {
                r.apply(Gate::Cnot(k, i));
            }
        }
        if r.work.z_image(i).get(i) == Pauli::Y {
            r.apply(Gate::H(i));
            r.apply(Gate::P(i));
            r.apply(Gate::H(i));
        }
        let (a, b) = (r.work.x_image(i), r.work.z_image(i));
        if a.unsigned() != crate::pauli::PauliString::single(n, i, Pauli::X)
            || b.unsigned() != crate::pauli::PauliString::single(n, i, Pauli::Z)
        {
            return Err(Error::InvalidTableau(format!("reduction stalled on qubit {i}")));
        }
    }

    // The reduced element is a Pauli operator Q with c = g₁†…g_m† Q.
    let mut gates = Vec::with_capacity(r.applied.len() + 6 * n);
    for i in 0..n {
        let flip_x = r.work.x_image(i).is_negative();
        let flip_z = r.work.z_image(i).is_negative();
        if flip_x {
            gates.extend([Gate::P(i), Gate::P(i)]);
        }
        if flip_z {
            gates.extend([Gate::H(i), Gate::P(i), Gate::P(i), Gate::H(i)]);
        }
    }
    gates.extend(r.applied.iter().rev().map(|g| g.inverse()));
    CliffordCircuit::from_gates(n, gates)
}
