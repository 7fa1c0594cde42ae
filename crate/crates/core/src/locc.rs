//! LOCC protocols: the pairwise Bell attack, the adaptive protocol for the
//! `τ` pair, and preparation procedures for `ρ₀⁽ⁿ⁾` and `ρ₁⁽ⁿ⁾`.

use rand::Rng;
use serde::Serialize;

use crate::bell::{BellLabel, MAX_PAIRS};
use crate::clifford::{
    enumerate_group_with_unitaries, random_walk_sample, random_walk_samples, synthesize_circuit, CliffordCircuit,
    CliffordElement, WalkOptions,
};
use crate::error::{check_cap, Error, Result};
use crate::linalg::{c, kron, trace_product, CMatrix, CVector};
use crate::rng::{run_blocks, stream_rng};
use crate::states::{bell_state_vector, recursion_weight, tau_state, DensityMatrix};

/// Dense preparation checks stay at or below this many qubits per side.
pub const PREPARE_DENSE_CAP: usize = 4;
const EXACT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CondProbs {
    pub p00: f64,
    pub p11: f64,
}

impl CondProbs {
    /// `p00 + p11 − 1`.
    pub fn advantage(&self) -> f64 {
        self.p00 + self.p11 - 1.0
    }
}

fn check_pairs(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    check_cap("pairs", n, MAX_PAIRS)
}

// ---------------------------------------------------------------------------
// Pairwise attack

/// Probability that computational-basis outcomes disagree on each Bell pair
/// value `k₁k₂`. `Φ±` are supported on `|00⟩, |11⟩`, `Ψ±` on `|01⟩, |10⟩`.
pub const PAIR_DISAGREEMENT: [f64; 4] = [0.0, 0.0, 1.0, 1.0];

/// Disagreement probability of one pair computed from its amplitudes.
pub fn dense_pair_disagreement(value: u8) -> f64 {
    let v = bell_state_vector(&BellLabel::phi_plus(1).with_pair(0, value));
    v[1].norm_sqr() + v[2].norm_sqr()
}

/// Closed form `((2ⁿ+2)/(2(2ⁿ+1)), 2ⁿ/(2(2ⁿ−1)))`, cross-checked against the
/// one-pair-at-a-time recursion.
pub fn pairwise_attack_exact(n: usize) -> Result<CondProbs> {
    check_pairs(n)?;
    let t = 2f64.powi(n as i32);
    let closed = CondProbs { p00: (t + 2.0) / (2.0 * (t + 1.0)), p11: t / (2.0 * (t - 1.0)) };
    let rec = pairwise_attack_recursion(n)?;
    let gap = (closed.p00 - rec.p00).abs().max((closed.p11 - rec.p11).abs());
    if gap > EXACT_TOL {
        return Err(Error::invalid(format!("pairwise attack closed form and recursion differ by {gap:e} at n = {n}")));
    }
    Ok(closed)
}

/// `p_{i|j}⁽ⁿ⁾` by peeling off the last pair: `ρ₀⁽ⁿ⁾` splits into
/// `ρ₀⁽ⁿ⁻¹⁾⊗ρ₀⁽¹⁾` and `ρ₁⁽ⁿ⁻¹⁾⊗ρ₁⁽¹⁾`, and the decoded parity XORs.
pub fn pairwise_attack_recursion(n: usize) -> Result<CondProbs> {
    check_pairs(n)?;
    let one = CondProbs { p00: 2.0 / 3.0, p11: 1.0 };
    let mut cur = one;
    for m in 2..=n {
        let (q, p) = (recursion_weight(0, m), recursion_weight(1, m));
        let (a00, a11) = (one.p00, one.p11);
        let (a10, a01) = (1.0 - a00, 1.0 - a11);
        let (c00, c11) = (cur.p00, cur.p11);
        let (c10, c01) = (1.0 - c00, 1.0 - c11);
        cur = CondProbs {
            p00: (1.0 - q) * (a00 * c00 + a10 * c10) + q * (a01 * c01 + a11 * c11),
            p11: (1.0 - p) * (a00 * c11 + a10 * c01) + p * (a01 * c10 + a11 * c00),
        };
    }
    Ok(cur)
}

/// One run of the attack.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub b: u8,
    /// `(Alice, Bob)` computational-basis results per pair.
    pub outcomes: Vec<(u8, u8)>,
    pub decoded: u8,
    pub seed: u64,
    /// Position of the trial in the run.
    pub trial: u64,
}

/// Parity of the number of pairs whose results disagree.
pub fn decode_outcomes(outcomes: &[(u8, u8)]) -> u8 {
    (outcomes.iter().filter(|(a, b)| a != b).count() % 2) as u8
}

/// Uniform label from `Eₙ` (`b = 0`) or `Oₙ` (`b = 1`) by rejection.
pub fn sample_label<R: Rng + ?Sized>(n: usize, b: u8, rng: &mut R) -> BellLabel {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    loop {
        let amp = rng.random::<u64>() & mask;
        let phase = rng.random::<u64>() & mask;
        if ((amp & phase).count_ones() % 2) as u8 == b {
            return BellLabel::new(n, amp, phase).expect("masked bits");
        }
    }
}

fn measure_pairs<R: Rng + ?Sized>(label: &BellLabel, rng: &mut R) -> Vec<(u8, u8)> {
    (0..label.num_pairs())
        .map(|j| {
            let a = rng.random::<bool>() as u8;
            let flip = rng.random::<f64>() < PAIR_DISAGREEMENT[label.pair(j) as usize];
            (a, a ^ flip as u8)
        })
        .collect()
}

fn check_bit(b: u8) -> Result<()> {
    if b > 1 {
        return Err(Error::invalid(format!("hidden bit must be 0 or 1, got {b}")));
    }
    Ok(())
}

fn attack_domain(b: u8) -> &'static str {
    if b == 0 {
        "attack-b0"
    } else {
        "attack-b1"
    }
}

/// Full records for `trials` runs with hidden bit `b`. The trials are the
/// same ones counted by [`pairwise_attack_mc`] for this seed.
pub fn pairwise_attack_records(n: usize, b: u8, trials: u64, seed: u64) -> Result<Vec<TrialRecord>> {
    check_pairs(n)?;
    check_bit(b)?;
    let blocks = run_blocks(trials, seed, attack_domain(b), |rng, count| {
        (0..count)
            .map(|_| {
                let label = sample_label(n, b, rng);
                let outcomes = measure_pairs(&label, rng);
                let decoded = decode_outcomes(&outcomes);
                (outcomes, decoded)
            })
            .collect::<Vec<_>>()
    });
    Ok(blocks
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(i, (outcomes, decoded))| TrialRecord { b, outcomes, decoded, seed, trial: i as u64 })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AttackEstimate {
    pub p00: f64,
    pub p11: f64,
    pub se00: f64,
    pub se11: f64,
    /// Trials per hidden bit value.
    pub trials: u64,
}

fn correct_count(n: usize, b: u8, trials: u64, seed: u64) -> u64 {
    run_blocks(trials, seed, attack_domain(b), |rng, count| {
        (0..count)
            .filter(|_| {
                let label = sample_label(n, b, rng);
                decode_outcomes(&measure_pairs(&label, rng)) == b
            })
            .count() as u64
    })
    .into_iter()
    .sum()
}

/// Monte Carlo estimate of the attack with `trials` runs for each bit value.
pub fn pairwise_attack_mc(n: usize, trials: u64, seed: u64) -> Result<AttackEstimate> {
    check_pairs(n)?;
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let t = trials as f64;
    let p00 = correct_count(n, 0, trials, seed) as f64 / t;
    let p11 = correct_count(n, 1, trials, seed) as f64 / t;
    let se = |p: f64| (p * (1.0 - p) / t).sqrt();
    Ok(AttackEstimate { p00, p11, se00: se(p00), se11: se(p11), trials })
}

// ---------------------------------------------------------------------------
// Adaptive protocol for τ

fn bloch(x: f64, z: f64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.5 * (1.0 + z), 0.0), c(0.5 * x, 0.0), c(0.5 * x, 0.0), c(0.5 * (1.0 - z), 0.0)])
}

/// `(M₀, M₁)` of the two-step protocol: Alice measures along `(−X+Z)/√2`,
/// then Bob measures along a direction tilted from `X` or `Z` depending on
/// her result.
pub fn tau_protocol_povm() -> (CMatrix, CMatrix) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let r3 = 3f64.sqrt();
    let (cos_a, sin_a) = ((1.0 + s) / r3, (1.0 - s) / r3);
    let eta_p = bloch(-s, s);
    let eta_m = bloch(s, -s);
    let eta_pp = bloch(cos_a, sin_a);
    let eta_mp = bloch(sin_a, cos_a);
    let m0 = kron(&eta_p, &eta_pp) + kron(&eta_m, &eta_mp);
    let m1 = CMatrix::identity(4, 4) - &m0;
    (m0, m1)
}

/// `¼(M + SMS + H₂MH₂ + SH₂MH₂S)` with `S` the swap and `H₂ = H⊗H`.
pub fn tau_symmetrize(m: &CMatrix) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
    let h2 = kron(&h, &h);
    let mut swap = CMatrix::zeros(4, 4);
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        swap[(i, j)] = c(1.0, 0.0);
    }
    let sh = &swap * &h2;
    let terms = [m.clone(), &swap * m * &swap, &h2 * m * &h2, &sh * m * sh.adjoint()];
    terms.iter().fold(CMatrix::zeros(4, 4), |acc, t| acc + t) * c(0.25, 0.0)
}

fn tau_probs(m0: &CMatrix, m1: &CMatrix) -> Result<CondProbs> {
    Ok(CondProbs {
        p00: trace_product(m0, tau_state(0)?.matrix()).re,
        p11: trace_product(m1, tau_state(1)?.matrix()).re,
    })
}

/// `Tr(M_b τ_b)` for the two-step protocol.
pub fn tau_protocol_exact() -> Result<CondProbs> {
    let (m0, m1) = tau_protocol_povm();
    tau_probs(&m0, &m1)
}

/// The same probabilities from the symmetrized POVM.
pub fn tau_protocol_symmetrized() -> Result<CondProbs> {
    let (m0, m1) = tau_protocol_povm();
    tau_probs(&tau_symmetrize(&m0), &tau_symmetrize(&m1))
}

// ---------------------------------------------------------------------------
// Preparation

/// A sampled circuit `c`; applying `c⊗c` to `|0…0⟩⊗|0…0⟩` and forgetting
/// which `c` was used yields `ρ₀⁽ⁿ⁾` on average.
#[derive(Clone, Debug, PartialEq)]
pub struct Rho0Preparation {
    pub n: usize,
    pub seed: u64,
    pub steps: u64,
    pub element: CliffordElement,
    pub circuit: CliffordCircuit,
}

pub fn prepare_rho0(n: usize, seed: u64, steps: u64) -> Result<Rho0Preparation> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let element = random_walk_sample(n, steps, seed, WalkOptions::default())?;
    let circuit = synthesize_circuit(&element)?;
    Ok(Rho0Preparation { n, seed, steps, element, circuit })
}

/// `(U⊗U)|0…0⟩` for a one-side unitary `U` on `n` qubits.
pub fn bilateral_zero_state(u: &CMatrix) -> Result<DensityMatrix> {
    let side = u.nrows();
    let n = side.trailing_zeros() as usize;
    check_cap("bilateral_zero_state", n, PREPARE_DENSE_CAP)?;
    let mut zero = CVector::zeros(side);
    zero[0] = c(1.0, 0.0);
    let col = u * zero;
    let v = col.kronecker(&col);
    DensityMatrix::pure(&v, (side, side))
}

/// Exact average of `(U⊗U)|0…0⟩⟨0…0|(U⊗U)†` over the whole Clifford group.
pub fn rho0_group_average(n: usize) -> Result<CMatrix> {
    let group = enumerate_group_with_unitaries(n)?;
    let dim = 1usize << (2 * n);
    let mut acc = CMatrix::zeros(dim, dim);
    for (_, u) in &group {
        acc += bilateral_zero_state(u)?.matrix();
    }
    Ok(acc * c(1.0 / group.len() as f64, 0.0))
}

/// Average of `count` walk-sampled preparations, each run through the
/// synthesized circuit.
pub fn rho0_walk_average(n: usize, count: u64, steps: u64, seed: u64) -> Result<CMatrix> {
    check_cap("rho0_walk_average", n, PREPARE_DENSE_CAP)?;
    if count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    let dim = 1usize << (2 * n);
    let mut acc = CMatrix::zeros(dim, dim);
    for element in random_walk_samples(n, steps, count, seed, WalkOptions::default())? {
        let u = synthesize_circuit(&element)?.unitary();
        acc += bilateral_zero_state(&u)?.matrix();
    }
    Ok(acc * c(1.0 / count as f64, 0.0))
}

/// A `ρ₁⁽ⁿ⁾` label together with the number of singlets it consumed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Rho1Sample {
    pub label: BellLabel,
    pub singlets_used: u32,
}

/// Recursive sampler: with probability `p_m` append a singlet to a
/// `ρ₀⁽ᵐ⁻¹⁾` sample and stop, otherwise append a `ρ₀⁽¹⁾` pair and recurse.
pub fn sample_rho1<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Rho1Sample> {
    check_pairs(n)?;
    let singlet = BellLabel::singlets(1);
    // Pairs appended on the way down, innermost last.
    let mut tail: Vec<BellLabel> = Vec::new();
    let mut m = n;
    let head = loop {
        if m == 1 {
            break singlet;
        }
        if rng.random::<f64>() < recursion_weight(1, m) {
            break sample_label(m - 1, 0, rng).concat(&singlet)?;
        }
        tail.push(sample_label(1, 0, rng));
        m -= 1;
    };
    let mut label = head;
    for pair in tail.iter().rev() {
        label = label.concat(pair)?;
    }
    Ok(Rho1Sample { label, singlets_used: 1 })
}

/// One `ρ₁⁽ⁿ⁾` label from its own seed.
pub fn prepare_rho1_sample(n: usize, seed: u64) -> Result<BellLabel> {
    Ok(sample_rho1(n, &mut stream_rng(seed, "rho1", 0))?.label)
}

/// `count` labels, reproducible for any thread count.
pub fn prepare_rho1_samples(n: usize, count: u64, seed: u64) -> Result<Vec<BellLabel>> {
    check_pairs(n)?;
    let blocks = run_blocks(count, seed, "rho1-batch", |rng, m| {
        (0..m).map(|_| sample_rho1(n, rng).map(|s| s.label)).collect::<Result<Vec<_>>>()
    });
    Ok(blocks.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect())
}
