use std::fmt;

use super::CliffordElement;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, ONE, ZERO};
use crate::pauli::PauliString;

/// One generator: `H`, the phase gate `P = diag(1, i)`, its inverse, or a
/// CNOT with `(control, target)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    P(usize),
    Pd(usize),
    Cnot(usize, usize),
}

impl Gate {
    pub fn inverse(self) -> Gate {
        match self {
            Gate::P(q) => Gate::Pd(q),
            Gate::Pd(q) => Gate::P(q),
            g => g,
        }
    }

    pub fn max_qubit(self) -> usize {
        match self {
            Gate::H(q) | Gate::P(q) | Gate::Pd(q) => q,
            Gate::Cnot(a, b) => a.max(b),
        }
    }

    pub(crate) fn conjugate_in_place(self, p: &mut PauliString) {
        match self {
            Gate::H(q) => p.conj_h(q),
            Gate::P(q) => p.conj_p(q),
            Gate::Pd(q) => p.conj_pdg(q),
            Gate::Cnot(a, b) => p.conj_cnot(a, b),
        }
    }

    /// `g p g†`.
    pub fn conjugate(self, p: &PauliString) -> PauliString {
        let mut out = *p;
        self.conjugate_in_place(&mut out);
        out
    }

    fn check(self, n: usize) -> Result<()> {
        if self.max_qubit() >= n {
            return Err(Error::invalid(format!("gate {self} acts outside {n} qubits")));
        }
        if let Gate::Cnot(a, b) = self {
            if a == b {
                return Err(Error::invalid(format!("CNOT with control = target = {a}")));
            }
        }
        Ok(())
    }

    /// Dense unitary on `n` qubits (qubit 0 is the most significant bit).
    pub fn unitary(self, n: usize) -> CMatrix {
        let dim = 1usize << n;
        let bit = |q: usize| 1usize << (n - 1 - q);
        let mut u = CMatrix::zeros(dim, dim);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for col in 0..dim {
            match self {
                Gate::H(q) => {
                    let b = bit(q);
                    let sign = if col & b != 0 { -s } else { s };
                    u[(col & !b, col)] += c(s, 0.0);
                    u[(col | b, col)] += c(sign, 0.0);
                }
                Gate::P(q) => u[(col, col)] = if col & bit(q) != 0 { c(0.0, 1.0) } else { ONE },
                Gate::Pd(q) => u[(col, col)] = if col & bit(q) != 0 { c(0.0, -1.0) } else { ONE },
                Gate::Cnot(a, b) => {
                    let row = if col & bit(a) != 0 { col ^ bit(b) } else { col };
                    u[(row, col)] = ONE;
                }
            }
        }
        debug_assert!(u.iter().any(|z| *z != ZERO));
        u
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "H {q}"),
            Gate::P(q) => write!(f, "P {q}"),
            Gate::Pd(q) => write!(f, "PD {q}"),
            Gate::Cnot(a, b) => write!(f, "CNOT {a} {b}"),
        }
    }
}

impl std::str::FromStr for Gate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Gate> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let num = |i: usize| -> Result<usize> {
            parts
                .get(i)
                .ok_or_else(|| Error::Parse(format!("missing qubit in {s:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad qubit index in {s:?}")))
        };
        let gate = match parts.first().map(|w| w.to_ascii_uppercase()).as_deref() {
            Some("H") => Gate::H(num(1)?),
            Some("P") => Gate::P(num(1)?),
            Some("PD") => Gate::Pd(num(1)?),
            Some("CNOT") => Gate::Cnot(num(1)?, num(2)?),
            _ => return Err(Error::Parse(format!("unknown gate {s:?}"))),
        };
        let expected = if matches!(gate, Gate::Cnot(..)) { 3 } else { 2 };
        if parts.len() != expected {
            return Err(Error::Parse(format!("wrong operand count in {s:?}")));
        }
        Ok(gate)
    }
}

/// A gate sequence in time order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl CliffordCircuit {
    pub fn new(n: usize) -> CliffordCircuit {
        CliffordCircuit { n, gates: Vec::new() }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<CliffordCircuit> {
        for g in &gates {
            g.check(n)?;
        }
        Ok(CliffordCircuit { n, gates })
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.check(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn inverse(&self) -> CliffordCircuit {
        CliffordCircuit { n: self.n, gates: self.gates.iter().rev().map(|g| g.inverse()).collect() }
    }

    /// The element obtained by running the circuit from the identity.
    pub fn to_element(&self) -> CliffordElement {
        let mut c = CliffordElement::identity(self.n);
        for &g in &self.gates {
            c.apply_gate(g);
        }
        c
    }

    /// Dense unitary, the product of the gate matrices in reverse order.
    pub fn unitary(&self) -> CMatrix {
        let dim = 1usize << self.n;
        self.gates.iter().fold(CMatrix::identity(dim, dim), |acc, g| g.unitary(self.n) * acc)
    }

    /// Parses one gate per line. Blank lines and `#` comments are skipped.
    pub fn parse(n: usize, text: &str) -> Result<CliffordCircuit> {
        let gates = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse)
            .collect::<Result<Vec<Gate>>>()?;
        CliffordCircuit::from_gates(n, gates)
    }
}

impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn text_round_trip() {
        let c = CliffordCircuit::from_gates(3, vec![Gate::H(0), Gate::Cnot(0, 1), Gate::P(2), Gate::Pd(2)]).unwrap();
        let text = c.to_string();
        assert_eq!(text, "H 0\nCNOT 0 1\nP 2\nPD 2\n");
        assert_eq!(CliffordCircuit::parse(3, &text).unwrap(), c);
    }

    #[test]
    fn parse_errors() {
        assert!(CliffordCircuit::parse(2, "H 2").is_err());
        assert!(CliffordCircuit::parse(2, "CNOT 1 1").is_err());
        assert!(CliffordCircuit::parse(2, "T 0").is_err());
        assert!(CliffordCircuit::parse(2, "H 0 1").is_err());
    }

    #[test]
    fn gate_unitaries_match_conjugation() {
        let n = 2;
        let gates = [Gate::H(0), Gate::H(1), Gate::P(0), Gate::Pd(1), Gate::Cnot(0, 1), Gate::Cnot(1, 0)];
        for g in gates {
            let u = g.unitary(n);
            for p in PauliString::all(n) {
                let lhs = &u * p.dense() * u.adjoint();
                assert!(max_abs_diff(&lhs, &g.conjugate(&p).dense()) < 1e-14, "{g} on {p}");
            }
        }
    }
}
