//! Hermitian Pauli strings in bit-packed symplectic form.
//!
//! A [`PauliString`] on `n` qubits is `±⊗ⱼ σ(xⱼ, zⱼ)` with `σ(0,0) = I`,
//! `σ(1,0) = X`, `σ(0,1) = Z` and `σ(1,1) = Y` (the Hermitian matrix, so
//! `Y = iXZ`). Signs are restricted to ±1, so these values are exactly the
//! Hermitian elements of the Pauli group. Products of two strings may pick up a
//! factor of ±i, which [`pauli_mul`] reports separately as a [`Phase`].
//!
//! Bit `q` of `x`/`z` refers to qubit `q`. In text and dense form qubit 0 is
//! the leftmost tensor factor.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, ZERO};

pub const MAX_QUBITS: usize = 64;

/// A fourth root of unity, `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        match self.0 {
            0 => c(1.0, 0.0),
            1 => c(0.0, 1.0),
            2 => c(-1.0, 0.0),
            _ => c(0.0, -1.0),
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        })
    }
}

/// Single-qubit Pauli label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    negative: bool,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n: usize) -> PauliString {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits");
        PauliString { n, x: 0, z: 0, negative: false }
    }

    pub fn new(n: usize, x: u64, z: u64, negative: bool) -> Result<PauliString> {
        if n > MAX_QUBITS {
            return Err(Error::cap("PauliString", n, MAX_QUBITS));
        }
        if (x | z) & !mask(n) != 0 {
            return Err(Error::invalid(format!("bits outside of {n} qubits")));
        }
        Ok(PauliString { n, x, z, negative })
    }

    /// The Pauli `p` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, p: Pauli) -> PauliString {
        assert!(q < n, "qubit {q} out of range for {n} qubits");
        let (x, z) = p.bits();
        PauliString { n, x: (x as u64) << q, z: (z as u64) << q, negative: false }
    }

    /// Unsigned string number `index` in `0..4^n`: the low `n` bits are the
    /// X part, the next `n` bits the Z part.
    pub fn from_index(n: usize, index: u128) -> PauliString {
        let m = mask(n) as u128;
        PauliString {
            n,
            x: (index & m) as u64,
            z: ((index >> n) & m) as u64,
            negative: false,
        }
    }

    pub fn index(&self) -> u128 {
        (self.x as u128) | ((self.z as u128) << self.n)
    }

    /// All `4^n` unsigned strings in index order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        assert!(n <= 16, "enumerating 4^{n} strings");
        (0..(1u128 << (2 * n))).map(move |i| PauliString::from_index(n, i))
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits((self.x >> q) & 1 == 1, (self.z >> q) & 1 == 1)
    }

    pub fn neg(mut self) -> PauliString {
        self.negative = !self.negative;
        self
    }

    pub fn with_sign(mut self, negative: bool) -> PauliString {
        self.negative = negative;
        self
    }

    pub fn unsigned(self) -> PauliString {
        self.with_sign(false)
    }

    /// True for `±I`.
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &PauliString) -> Result<PauliString> {
        let n = self.n + other.n;
        if n > MAX_QUBITS {
            return Err(Error::cap("PauliString", n, MAX_QUBITS));
        }
        Ok(PauliString {
            n,
            x: self.x | (other.x << self.n),
            z: self.z | (other.z << self.n),
            negative: self.negative ^ other.negative,
        })
    }

    /// Action on a computational basis state: `P|m⟩ = phase · |m'⟩`, where
    /// `m` is a basis index with qubit 0 as the most significant bit.
    pub fn apply_to_basis(&self, m: usize) -> (usize, Phase) {
        let xm = self.basis_mask(self.x);
        let zm = self.basis_mask(self.z);
        let mut k = (self.x & self.z).count_ones() as i64;
        if (zm & m as u64).count_ones() % 2 == 1 {
            k += 2;
        }
        if self.negative {
            k += 2;
        }
        (m ^ xm as usize, Phase::from_exponent(k))
    }

    fn basis_mask(&self, bits: u64) -> u64 {
        let mut out = 0;
        for q in 0..self.n {
            if (bits >> q) & 1 == 1 {
                out |= 1 << (self.n - 1 - q);
            }
        }
        out
    }

    /// Dense `2^n × 2^n` matrix.
    pub fn dense(&self) -> CMatrix {
        assert!(self.n <= 12, "dense Pauli on {} qubits", self.n);
        let dim = 1usize << self.n;
        let mut m = CMatrix::from_element(dim, dim, ZERO);
        for col in 0..dim {
            let (row, phase) = self.apply_to_basis(col);
            m[(row, col)] = phase.to_complex();
        }
        m
    }

    // Tableau updates: conjugation P ↦ g P g† by one generator.

    pub(crate) fn conj_h(&mut self, q: usize) {
        let xb = (self.x >> q) & 1;
        let zb = (self.z >> q) & 1;
        if xb & zb == 1 {
            self.negative = !self.negative;
        }
        self.x = (self.x & !(1 << q)) | (zb << q);
        self.z = (self.z & !(1 << q)) | (xb << q);
    }

    pub(crate) fn conj_p(&mut self, q: usize) {
        let xb = (self.x >> q) & 1;
        let zb = (self.z >> q) & 1;
        if xb & zb == 1 {
            self.negative = !self.negative;
        }
        self.z ^= xb << q;
    }

    pub(crate) fn conj_pdg(&mut self, q: usize) {
        let xb = (self.x >> q) & 1;
        let zb = (self.z >> q) & 1;
        if xb == 1 && zb == 0 {
            self.negative = !self.negative;
        }
        self.z ^= xb << q;
    }

    pub(crate) fn conj_cnot(&mut self, control: usize, target: usize) {
        let xc = (self.x >> control) & 1;
        let zc = (self.z >> control) & 1;
        let xt = (self.x >> target) & 1;
        let zt = (self.z >> target) & 1;
        if xc & zt & (xt ^ zc ^ 1) == 1 {
            self.negative = !self.negative;
        }
        self.x ^= xc << target;
        self.z ^= zt << control;
    }
}

/// `p · q = phase · result`, with `result` carrying a `+` sign.
pub fn pauli_mul(p: &PauliString, q: &PauliString) -> Result<(PauliString, Phase)> {
    if p.n != q.n {
        return Err(Error::SizeMismatch { left: p.n, right: q.n });
    }
    let (x1, z1, x2, z2) = (p.x, p.z, q.x, q.z);
    let y1 = x1 & z1;
    let xo1 = x1 & !z1;
    let zo1 = !x1 & z1;
    let y2 = x2 & z2;
    let xo2 = x2 & !z2;
    let zo2 = !x2 & z2;
    // Cyclic products (XY = iZ, YZ = iX, ZX = iY) contribute +1 to the
    // exponent of i, anti-cyclic ones -1.
    let plus = ((xo1 & y2) | (y1 & zo2) | (zo1 & xo2)).count_ones() as i64;
    let minus = ((y1 & xo2) | (xo1 & zo2) | (zo1 & y2)).count_ones() as i64;
    let mut k = plus - minus;
    if p.negative ^ q.negative {
        k += 2;
    }
    let result = PauliString { n: p.n, x: x1 ^ x2, z: z1 ^ z2, negative: false };
    Ok((result, Phase::from_exponent(k)))
}

/// Whether the two strings commute (symplectic product zero).
pub fn commutes(p: &PauliString, q: &PauliString) -> Result<bool> {
    if p.n != q.n {
        return Err(Error::SizeMismatch { left: p.n, right: q.n });
    }
    Ok(symplectic(p, q) == 0)
}

pub(crate) fn symplectic(p: &PauliString, q: &PauliString) -> u32 {
    ((p.x & q.z) ^ (p.z & q.x)).count_ones() % 2
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q).letter())?;
        }
        Ok(())
    }
}

impl serde::Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses `"+XZIY"` style text. The sign is optional and defaults to `+`.
    fn from_str(s: &str) -> Result<PauliString> {
        let s = s.trim();
        let (negative, body) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') => (true, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string {s:?}")));
        }
        let n = body.chars().count();
        if n > MAX_QUBITS {
            return Err(Error::cap("PauliString", n, MAX_QUBITS));
        }
        let mut p = PauliString::identity(n);
        for (q, ch) in body.chars().enumerate() {
            let pauli = match ch.to_ascii_uppercase() {
                'I' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(Error::Parse(format!("unexpected {other:?} in Pauli string"))),
            };
            let (xb, zb) = pauli.bits();
            p.x |= (xb as u64) << q;
            p.z |= (zb as u64) << q;
        }
        p.negative = negative;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kron, max_abs_diff};

    fn ps(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_x_is_identity() {
        let (r, ph) = pauli_mul(&ps("X"), &ps("X")).unwrap();
        assert!(r.is_identity());
        assert_eq!(ph, Phase::ONE);
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let (r, ph) = pauli_mul(&ps("X"), &ps("Z")).unwrap();
        assert_eq!(r, ps("Y"));
        assert_eq!(ph, Phase::MINUS_I);
    }

    #[test]
    fn disjoint_supports_multiply_trivially() {
        let (r, ph) = pauli_mul(&ps("XI"), &ps("IZ")).unwrap();
        assert_eq!(r, ps("XZ"));
        assert_eq!(ph, Phase::ONE);
    }

    #[test]
    fn commutation_examples() {
        assert!(commutes(&ps("X"), &ps("X")).unwrap());
        assert!(!commutes(&ps("X"), &ps("Z")).unwrap());
        assert!(commutes(&ps("XZ"), &ps("ZX")).unwrap());
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(matches!(pauli_mul(&ps("X"), &ps("XX")), Err(Error::SizeMismatch { .. })));
        assert!(commutes(&ps("X"), &ps("XX")).is_err());
    }

    #[test]
    fn dense_y_is_hermitian_y() {
        let y = ps("Y").dense();
        assert_eq!(y[(0, 1)], c(0.0, -1.0));
        assert_eq!(y[(1, 0)], c(0.0, 1.0));
    }

    #[test]
    fn dense_uses_leading_qubit_as_first_factor() {
        let xz = ps("XZ").dense();
        let expected = kron(&ps("X").dense(), &ps("Z").dense());
        assert!(max_abs_diff(&xz, &expected) < 1e-15);
    }

    #[test]
    fn text_round_trip() {
        for s in ["+XZIY", "-IIII", "+Y"] {
            assert_eq!(ps(s).to_string(), s);
        }
        assert_eq!(ps("xz").to_string(), "+XZ");
        assert!("+XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn index_round_trip() {
        for p in PauliString::all(3) {
            assert_eq!(PauliString::from_index(3, p.index()), p);
        }
    }
}
