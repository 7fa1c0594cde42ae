use std::collections::{HashMap, VecDeque};

use rand::Rng;

use super::synth::SYNTH_CONSTANT;
use super::{CliffordElement, Gate};
use crate::error::{check_cap, Error, Result};
use crate::linalg::CMatrix;
use crate::rng::{run_blocks, stream_rng};

pub const ENUMERATION_CAP: usize = 2;

/// The generating set `{Hᵢ, Pᵢ, P†ᵢ, CNOTⱼₖ}`, `n² + 2n` gates.
pub fn generators(n: usize) -> Vec<Gate> {
    let mut g = Vec::with_capacity(n * n + 2 * n);
    for q in 0..n {
        g.push(Gate::H(q));
        g.push(Gate::P(q));
        g.push(Gate::Pd(q));
    }
    for a in 0..n {
        for b in 0..n {
            if a != b {
                g.push(Gate::Cnot(a, b));
            }
        }
    }
    g
}

/// `|Cₙ|` modulo global phase: `2^{n²} Πⱼ(4ʲ − 1) · 4ⁿ`. `None` on overflow.
pub fn group_order_mod_phase(n: usize) -> Option<u128> {
    let mut order: u128 = 1u128.checked_shl((n * n + 2 * n) as u32).filter(|_| n * n + 2 * n < 128)?;
    for j in 1..=n {
        order = order.checked_mul((1u128 << (2 * j)) - 1)?;
    }
    Some(order)
}

pub fn log2_group_order_mod_phase(n: usize) -> f64 {
    let nf = n as f64;
    nf * nf + 2.0 * nf + (1..=n).map(|j| (4f64.powi(j as i32) - 1.0).log2()).sum::<f64>()
}

/// All elements modulo phase by breadth-first closure from the identity.
pub fn enumerate_group(n: usize) -> Result<Vec<CliffordElement>> {
    Ok(enumerate_group_with_unitaries(n)?.into_iter().map(|(c, _)| c).collect())
}

/// Same as [`enumerate_group`], paired with one dense unitary per element.
pub fn enumerate_group_with_unitaries(n: usize) -> Result<Vec<(CliffordElement, CMatrix)>> {
    check_cap("enumerate_group", n, ENUMERATION_CAP)?;
    let gens: Vec<(Gate, CMatrix)> = generators(n).into_iter().map(|g| (g, g.unitary(n))).collect();
    let dim = 1usize << n;
    let start = CliffordElement::identity(n);
    let mut index: HashMap<CliffordElement, usize> = HashMap::new();
    let mut found = vec![(start.clone(), CMatrix::identity(dim, dim))];
    index.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, gu) in &gens {
            let mut next = found[i].0.clone();
            next.apply_gate(*g);
            if !index.contains_key(&next) {
                let u = gu * &found[i].1;
                index.insert(next.clone(), found.len());
                queue.push_back(found.len());
                found.push((next, u));
            }
        }
    }
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkOptions {
    /// Stay put with probability ½ at every step.
    pub lazy: bool,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions { lazy: true }
    }
}

fn walk<R: Rng>(n: usize, steps: u64, gens: &[Gate], rng: &mut R, opts: WalkOptions) -> CliffordElement {
    let mut c = CliffordElement::identity(n);
    for _ in 0..steps {
        if opts.lazy && rng.random::<bool>() {
            continue;
        }
        c.apply_gate(gens[rng.random_range(0..gens.len())]);
    }
    c
}

/// One walk of `steps` steps on the Cayley graph of the generators.
pub fn random_walk_sample(n: usize, steps: u64, seed: u64, opts: WalkOptions) -> Result<CliffordElement> {
    check_cap("random_walk_sample", n, crate::pauli::MAX_QUBITS)?;
    let gens = generators(n);
    Ok(walk(n, steps, &gens, &mut stream_rng(seed, "clifford-walk", 0), opts))
}

/// `count` independent walks, reproducible for any thread count.
pub fn random_walk_samples(n: usize, steps: u64, count: u64, seed: u64, opts: WalkOptions) -> Result<Vec<CliffordElement>> {
    check_cap("random_walk_samples", n, crate::pauli::MAX_QUBITS)?;
    let gens = generators(n);
    let blocks = run_blocks(count, seed, "clifford-walks", |rng, m| {
        (0..m).map(|_| walk(n, steps, &gens, rng, opts)).collect::<Vec<_>>()
    });
    Ok(blocks.into_iter().flatten().collect())
}

/// Smallest `k` with `√|Cₙ| (1 − η/d²)^k ≤ ε`, where `η = 1/(2(n²+2n))` is the
/// probability of a given generator in the lazy walk and `d = 3n² + 7n + C`
/// is the diameter bound certified by [`synthesize_circuit`](super::synthesize_circuit).
pub fn walk_length_policy(n: usize, epsilon: f64) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!("epsilon must lie in (0, 1), got {epsilon}")));
    }
    let nf = n as f64;
    let eta = 1.0 / (2.0 * (nf * nf + 2.0 * nf));
    let d = 3.0 * nf * nf + 7.0 * nf + SYNTH_CONSTANT as f64;
    let gap = eta / (d * d);
    let ln_size = 0.5 * log2_group_order_mod_phase(n) * std::f64::consts::LN_2;
    let k = (ln_size - epsilon.ln()) / -(1.0 - gap).ln();
    Ok(k.ceil().max(0.0) as u64)
}
