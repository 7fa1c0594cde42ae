use nalgebra::DMatrix;

use super::{DensityMatrix, HermitianOperator, CONSTRUCT_CAP, EIGEN_CAP};
use crate::bell::{cardinalities, BellLabel};
use crate::error::{check_cap, Error, Result};
use crate::linalg::{c, kron, max_abs_diff, permute_qubits, CMatrix, CVector};
use crate::pauli::PauliString;

/// Basis index of a qubit bitmask: qubit `j` is bit `n-1-j` of the index.
pub(crate) fn qubits_to_index(bits: u64, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (bits.reverse_bits() >> (64 - n)) as usize
}

pub(crate) fn check_bit(b: u8) -> Result<()> {
    if b > 1 {
        return Err(Error::invalid(format!("hidden bit must be 0 or 1, got {b}")));
    }
    Ok(())
}

/// Nonzero amplitudes of `|w_k⟩` as `(index, ±1)`, to be scaled by `2^{-n/2}`.
fn bell_support(k: &BellLabel) -> impl Iterator<Item = (usize, f64)> + '_ {
    let n = k.num_pairs();
    (0..1u64 << n).map(move |a| {
        let b = a ^ k.amp_bits();
        let sign = if (k.phase_bits() & a).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        ((qubits_to_index(a, n) << n) | qubits_to_index(b, n), sign)
    })
}

/// `|w_k⟩` with Alice's `n` qubits first, then Bob's `n`.
pub fn bell_state_vector(k: &BellLabel) -> CVector {
    let n = k.num_pairs();
    assert!(n <= CONSTRUCT_CAP, "dense Bell vector on {n} pairs");
    let scale = (0.5f64).powf(n as f64 / 2.0);
    let mut v = CVector::zeros(1 << (2 * n));
    for (idx, sign) in bell_support(k) {
        v[idx] = c(sign * scale, 0.0);
    }
    v
}

pub fn bell_projector(k: &BellLabel) -> HermitianOperator {
    let v = bell_state_vector(k);
    let n = k.num_pairs();
    HermitianOperator::from_parts(&v * v.adjoint(), (1 << n, 1 << n))
}

/// `Σ_k w(k) |w_k⟩⟨w_k|` for real weights indexed by [`BellLabel::index`].
pub fn bell_diagonal(n: usize, weights: &[f64]) -> Result<HermitianOperator> {
    check_cap("bell_diagonal", n, CONSTRUCT_CAP)?;
    if weights.len() != 1 << (2 * n) {
        return Err(Error::invalid(format!("expected {} weights, got {}", 1 << (2 * n), weights.len())));
    }
    let dim = 1usize << (2 * n);
    let scale = (0.5f64).powi(n as i32);
    let mut acc = DMatrix::<f64>::zeros(dim, dim);
    let mut support = Vec::with_capacity(1 << n);
    for (i, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let k = BellLabel::from_index(n, i as u128);
        support.clear();
        support.extend(bell_support(&k));
        for &(r, sr) in &support {
            for &(col, sc) in &support {
                acc[(r, col)] += w * scale * sr * sc;
            }
        }
    }
    Ok(HermitianOperator::from_parts(acc.map(|x| c(x, 0.0)), (1 << n, 1 << n)))
}

/// `ρ_b⁽ⁿ⁾`: the uniform mixture of Bell labels with an even (`b = 0`) or
/// odd (`b = 1`) number of singlets.
pub fn hiding_state(b: u8, n: usize) -> Result<DensityMatrix> {
    check_bit(b)?;
    check_cap("hiding_state", n, CONSTRUCT_CAP)?;
    let (even, odd) = cardinalities(n)?;
    let size = if b == 0 { even } else { odd } as f64;
    let weights: Vec<f64> = BellLabel::all(n)
        .map(|k| if k.is_even() == (b == 0) { 1.0 / size } else { 0.0 })
        .collect();
    let op = bell_diagonal(n, &weights)?;
    Ok(DensityMatrix::from_parts(op.into_matrix(), (1 << n, 1 << n)))
}

/// `Hₙ = 4⁻ⁿ Σ_P P ⊗ P` over the `4ⁿ` unsigned Pauli strings.
pub fn h_operator(n: usize) -> Result<HermitianOperator> {
    check_cap("h_operator", n, CONSTRUCT_CAP)?;
    let side = 1usize << n;
    let dim = side * side;
    let scale = (0.25f64).powi(n as i32);
    let mut acc = DMatrix::<f64>::zeros(dim, dim);
    for p in PauliString::all(n) {
        // P|m⟩ = phase(m)|m ^ flip⟩; the i^{#Y} factors square to (−1)^{#Y}.
        let flip = qubits_to_index(p.x_bits(), n);
        let zmask = qubits_to_index(p.z_bits(), n);
        let y_sign = if (p.x_bits() & p.z_bits()).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        for a in 0..side {
            let sa = if (zmask & a).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            for b in 0..side {
                let sb = if (zmask & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
                acc[((a ^ flip) * side + (b ^ flip), a * side + b)] += scale * y_sign * sa * sb;
            }
        }
    }
    Ok(HermitianOperator::from_parts(acc.map(|x| c(x, 0.0)), (side, side)))
}

/// `(I ± 2ⁿHₙ) / (2ⁿ(2ⁿ ± 1))`, the Werner form of `ρ_b⁽ⁿ⁾`.
pub fn werner_form(b: u8, n: usize) -> Result<DensityMatrix> {
    check_bit(b)?;
    let h = h_operator(n)?;
    let two_n = (1u64 << n) as f64;
    let s = if b == 0 { 1.0 } else { -1.0 };
    let norm = two_n * (two_n + s);
    let mut m = h.into_matrix() * c(s * two_n / norm, 0.0);
    for i in 0..m.nrows() {
        m[(i, i)] += c(1.0 / norm, 0.0);
    }
    Ok(DensityMatrix::from_parts(m, (1 << n, 1 << n)))
}

/// Max-abs deviation between `ρ_b⁽ⁿ⁾` and its Werner form.
pub fn werner_form_check(b: u8, n: usize) -> Result<f64> {
    check_cap("werner_form_check", n, EIGEN_CAP)?;
    Ok(max_abs_diff(hiding_state(b, n)?.matrix(), werner_form(b, n)?.matrix()))
}

/// `q_n` (for `b = 0`) or `p_n` (for `b = 1`): the weight of the branch
/// that places a singlet on the last pair.
pub fn recursion_weight(b: u8, n: usize) -> f64 {
    let half = 2f64.powi(n as i32 - 1);
    let two_n = 2.0 * half;
    if b == 0 {
        (half - 1.0) / (2.0 * (two_n + 1.0))
    } else {
        (half + 1.0) / (2.0 * (two_n - 1.0))
    }
}

/// Deviation of `ρ_b⁽ⁿ⁾` from its `(n−1, 1)` recursive decomposition
///
/// ```text
/// ρ₀⁽ⁿ⁾ = q_n ρ₁⁽ⁿ⁻¹⁾⊗ρ₁⁽¹⁾ + (1−q_n) ρ₀⁽ⁿ⁻¹⁾⊗ρ₀⁽¹⁾
/// ρ₁⁽ⁿ⁾ = p_n ρ₀⁽ⁿ⁻¹⁾⊗ρ₁⁽¹⁾ + (1−p_n) ρ₁⁽ⁿ⁻¹⁾⊗ρ₀⁽¹⁾
/// ```
///
/// with the tensor legs reordered to the global A/B cut.
pub fn recursion_check(b: u8, n: usize) -> Result<f64> {
    check_bit(b)?;
    if !(2..=4).contains(&n) {
        return Err(Error::invalid(format!("recursion_check needs 2 <= n <= 4, got {n}")));
    }
    let w = recursion_weight(b, n);
    let singlet = hiding_state(1, 1)?;
    let rest = hiding_state(0, 1)?;
    let (with_singlet, without) = if b == 0 { (1, 0) } else { (0, 1) };
    let first = kron(hiding_state(with_singlet, n - 1)?.matrix(), singlet.matrix());
    let second = kron(hiding_state(without, n - 1)?.matrix(), rest.matrix());
    let mixed = first * c(w, 0.0) + second * c(1.0 - w, 0.0);
    // Factor order (A1..A_{n-1}, B1..B_{n-1}, A_n, B_n) to (A1..A_n, B1..B_n).
    let perm: Vec<usize> = (0..2 * n)
        .map(|i| match i {
            i if i < n - 1 => i,
            i if i < 2 * n - 2 => i + 1,
            i if i == 2 * n - 2 => n - 1,
            _ => 2 * n - 1,
        })
        .collect();
    let reordered = permute_qubits(&mixed, &perm);
    Ok(max_abs_diff(hiding_state(b, n)?.matrix(), &reordered))
}

/// `I / 4ⁿ`.
pub fn maximally_mixed(n: usize) -> Result<DensityMatrix> {
    check_cap("maximally_mixed", n, CONSTRUCT_CAP)?;
    let dim = 1usize << (2 * n);
    Ok(DensityMatrix::from_parts(CMatrix::identity(dim, dim) * c(1.0 / dim as f64, 0.0), (1 << n, 1 << n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{interleaved_to_blocks, permute_vector, trace};

    fn bell_pair(k: u8) -> CVector {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = match k {
            0 => [s, 0.0, 0.0, s],
            1 => [s, 0.0, 0.0, -s],
            2 => [0.0, s, s, 0.0],
            _ => [0.0, s, -s, 0.0],
        };
        CVector::from_iterator(4, v.iter().map(|&x| c(x, 0.0)))
    }

    #[test]
    fn bell_vectors_match_tensor_products() {
        for k in BellLabel::all(3) {
            let mut v = bell_pair(k.pair(0));
            for j in 1..3 {
                v = v.kronecker(&bell_pair(k.pair(j)));
            }
            let expected = permute_vector(&v, &interleaved_to_blocks(3));
            assert!((bell_state_vector(&k) - expected).norm() < 1e-14, "{k}");
        }
    }

    #[test]
    fn recursion_weights() {
        assert!((recursion_weight(0, 2) - 0.1).abs() < 1e-15);
        assert!((recursion_weight(1, 2) - 0.5).abs() < 1e-15);
        assert!((recursion_weight(1, 3) - 5.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn h_trace_identities() {
        for n in 1..=3 {
            let h = h_operator(n).unwrap();
            assert!((h.trace() - 1.0).abs() < 1e-12);
            assert!((trace(&(h.matrix() * h.matrix())).re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn hiding_caps() {
        assert!(matches!(hiding_state(0, 7), Err(Error::DimensionCap { .. })));
        assert!(hiding_state(2, 1).is_err());
        assert!(recursion_check(0, 1).is_err());
    }
}
