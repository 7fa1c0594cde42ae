//! Bell labels: `2n`-bit names for tensor products of Bell pairs.
//!
//! Each pair carries an amplitude bit `k₁` and a phase bit `k₂`:
//!
//! | `k₁k₂` | state |
//! |---|---|
//! | `00` | `(|00⟩+|11⟩)/√2` |
//! | `01` | `(|00⟩−|11⟩)/√2` |
//! | `10` | `(|01⟩+|10⟩)/√2` |
//! | `11` | `(|01⟩−|10⟩)/√2`, the singlet |
//!
//! Equivalently `|w_k⟩ = (σ_k ⊗ I)|w_00⟩` up to sign, where `σ_k` has X bit
//! `k₁` and Z bit `k₂`. Pair `j` is stored at bit `j` of `amp` and `phase`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pauli::PauliString;

pub const MAX_PAIRS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BellLabel {
    n: usize,
    amp: u64,
    phase: u64,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl BellLabel {
    pub fn new(n: usize, amp: u64, phase: u64) -> Result<BellLabel> {
        if n > MAX_PAIRS {
            return Err(Error::cap("BellLabel", n, MAX_PAIRS));
        }
        if (amp | phase) & !mask(n) != 0 {
            return Err(Error::invalid(format!("bits outside of {n} pairs")));
        }
        Ok(BellLabel { n, amp, phase })
    }

    /// `n` copies of `|Φ⁺⟩`.
    pub fn phi_plus(n: usize) -> BellLabel {
        BellLabel { n, amp: 0, phase: 0 }
    }

    /// `n` singlets.
    pub fn singlets(n: usize) -> BellLabel {
        BellLabel { n, amp: mask(n), phase: mask(n) }
    }

    /// Label number `index` in `0..4^n`. Pair 0 occupies the two most
    /// significant bits, matching the order of the text form.
    pub fn from_index(n: usize, index: u128) -> BellLabel {
        let mut amp = 0;
        let mut phase = 0;
        for j in 0..n {
            let pair = (index >> (2 * (n - 1 - j))) & 3;
            amp |= ((pair >> 1) as u64) << j;
            phase |= ((pair & 1) as u64) << j;
        }
        BellLabel { n, amp, phase }
    }

    pub fn index(&self) -> u128 {
        (0..self.n).fold(0u128, |acc, j| (acc << 2) | self.pair(j) as u128)
    }

    /// All `4^n` labels in index order.
    pub fn all(n: usize) -> impl Iterator<Item = BellLabel> {
        assert!(n <= 16, "enumerating 4^{n} labels");
        (0..(1u128 << (2 * n))).map(move |i| BellLabel::from_index(n, i))
    }

    pub fn num_pairs(&self) -> usize {
        self.n
    }

    pub fn amp_bits(&self) -> u64 {
        self.amp
    }

    pub fn phase_bits(&self) -> u64 {
        self.phase
    }

    /// Two-bit value `k₁k₂` of pair `j`.
    pub fn pair(&self, j: usize) -> u8 {
        ((((self.amp >> j) & 1) << 1) | ((self.phase >> j) & 1)) as u8
    }

    pub fn with_pair(mut self, j: usize, value: u8) -> BellLabel {
        assert!(j < self.n && value < 4);
        self.amp = (self.amp & !(1 << j)) | (((value >> 1) as u64 & 1) << j);
        self.phase = (self.phase & !(1 << j)) | ((value as u64 & 1) << j);
        self
    }

    /// Number of singlet pairs.
    pub fn n11(&self) -> u32 {
        (self.amp & self.phase).count_ones()
    }

    pub fn is_even(&self) -> bool {
        self.n11() % 2 == 0
    }

    /// Pairwise XOR, which is how Pauli errors compose on Bell labels.
    pub fn xor(&self, other: &BellLabel) -> Result<BellLabel> {
        if self.n != other.n {
            return Err(Error::SizeMismatch { left: self.n, right: other.n });
        }
        Ok(BellLabel { n: self.n, amp: self.amp ^ other.amp, phase: self.phase ^ other.phase })
    }

    /// Concatenation, `self` first.
    pub fn concat(&self, other: &BellLabel) -> Result<BellLabel> {
        let n = self.n + other.n;
        if n > MAX_PAIRS {
            return Err(Error::cap("BellLabel", n, MAX_PAIRS));
        }
        Ok(BellLabel {
            n,
            amp: self.amp | (other.amp << self.n),
            phase: self.phase | (other.phase << self.n),
        })
    }

    /// The Pauli string on Alice's side that maps `Φ⁺^{⊗n}` to this label.
    pub fn pauli(&self) -> PauliString {
        PauliString::new(self.n, self.amp, self.phase, false).expect("label fits")
    }

    /// Eigenvalue of the bilateral parity `σ_c ⊗ conj(σ_c)` (product over
    /// pairs) on this label, where `check` supplies the per-pair `c`.
    pub fn parity_sign(&self, check: &PauliString) -> Result<i8> {
        if self.n != check.num_qubits() {
            return Err(Error::SizeMismatch { left: self.n, right: check.num_qubits() });
        }
        let odd = ((self.amp & check.z_bits()) ^ (self.phase & check.x_bits())).count_ones() % 2;
        Ok(if odd == 1 { -1 } else { 1 })
    }
}

/// Sign picked up by the Bell state `k` under the bilateral Pauli labelled
/// `c`, i.e. `(−1)^(k₁c₂ ⊕ k₂c₁)`. Both arguments are two-bit values with the
/// first bit (X / amplitude) in the high position.
pub fn bell_phase_action(c: u8, k: u8) -> i8 {
    let (c1, c2) = ((c >> 1) & 1, c & 1);
    let (k1, k2) = ((k >> 1) & 1, k & 1);
    if (k1 & c2) ^ (k2 & c1) == 1 {
        -1
    } else {
        1
    }
}

/// `(|Eₙ|, |Oₙ|)`: counts of labels with an even / odd number of singlets.
pub fn cardinalities(n: usize) -> Result<(u128, u128)> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let four_n = 1u128.checked_shl(2 * n as u32).filter(|_| 2 * n < 128).ok_or(Error::Overflow("4^n"))?;
    let two_n = 1u128 << n;
    Ok(((four_n + two_n) / 2, (four_n - two_n) / 2))
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n {
            if j > 0 {
                f.write_str(".")?;
            }
            let p = self.pair(j);
            write!(f, "{}{}", p >> 1, p & 1)?;
        }
        Ok(())
    }
}

impl serde::Serialize for BellLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for BellLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for BellLabel {
    type Err = Error;

    /// Parses `"11.01"`; dots are optional (`"1101"` is the same label).
    fn from_str(s: &str) -> Result<BellLabel> {
        let bits: Vec<u8> = s
            .trim()
            .chars()
            .filter(|&ch| ch != '.')
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::Parse(format!("unexpected {other:?} in Bell label"))),
            })
            .collect::<Result<_>>()?;
        if bits.is_empty() || bits.len() % 2 != 0 {
            return Err(Error::Parse(format!("Bell label {s:?} needs an even, nonzero bit count")));
        }
        let n = bits.len() / 2;
        if n > MAX_PAIRS {
            return Err(Error::cap("BellLabel", n, MAX_PAIRS));
        }
        let mut label = BellLabel::phi_plus(n);
        for j in 0..n {
            label = label.with_pair(j, (bits[2 * j] << 1) | bits[2 * j + 1]);
        }
        Ok(label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_examples() {
        assert_eq!(cardinalities(1).unwrap(), (3, 1));
        assert_eq!(cardinalities(2).unwrap(), (10, 6));
        assert_eq!(cardinalities(3).unwrap(), (36, 28));
        assert!(cardinalities(0).is_err());
        assert!(cardinalities(63).is_ok());
        assert_eq!(cardinalities(64), Err(Error::Overflow("4^n")));
    }

    #[test]
    fn phase_action_examples() {
        for k in 0..4 {
            assert_eq!(bell_phase_action(0, k), 1);
        }
        assert_eq!(bell_phase_action(0b10, 0b11), -1);
        assert_eq!(bell_phase_action(0b11, 0b11), 1);
    }

    #[test]
    fn text_round_trip() {
        let l: BellLabel = "11.01".parse().unwrap();
        assert_eq!(l.pair(0), 3);
        assert_eq!(l.pair(1), 1);
        assert_eq!(l.to_string(), "11.01");
        assert_eq!(l.n11(), 1);
        assert!(!l.is_even());
        assert!("1".parse::<BellLabel>().is_err());
        assert!("1x".parse::<BellLabel>().is_err());
    }

    #[test]
    fn index_matches_text_order() {
        let l = BellLabel::from_index(2, 0b1101);
        assert_eq!(l.to_string(), "11.01");
        assert_eq!(l.index(), 0b1101);
    }

    #[test]
    fn parity_sign_agrees_with_pairwise_action() {
        for l in BellLabel::all(2) {
            for c in PauliString::all(2) {
                let expected: i8 = (0..2)
                    .map(|j| {
                        let p = c.get(j).bits();
                        bell_phase_action(((p.0 as u8) << 1) | p.1 as u8, l.pair(j))
                    })
                    .product();
                assert_eq!(l.parity_sign(&c).unwrap(), expected);
            }
        }
    }
}
