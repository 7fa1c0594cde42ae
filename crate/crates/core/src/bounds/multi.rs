//! Bounds for hiding `k` bits in `n` Bell pairs per bit.
//!
//! The coefficients `L_p` are exact big integers, computed both by the
//! downward recursion and by the Stirling closed form. Δ is summed in `log₂`
//! space so that large `n` does not underflow.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{check_cap, Error, Result};

pub const MULTI_K_CAP: usize = 16;
pub const MULTI_N_CAP: usize = 4096;

#[derive(Clone, Debug, PartialEq)]
pub struct MultiBitBound {
    pub n: usize,
    pub k: usize,
    /// `L_0..L_k`.
    pub l: Vec<BigInt>,
    /// `U_0..U_k`.
    pub u: Vec<BigInt>,
    pub delta: f64,
    pub log2_delta: f64,
    /// `(2ᵏ/ln 2)·Δ` bits.
    pub info_bound: f64,
    pub log2_info_bound: f64,
}

fn binomial(n: usize, r: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Stirling numbers of the second kind `S(m, l)` for `0 ≤ l ≤ m ≤ max`.
pub fn stirling2_table(max: usize) -> Vec<Vec<BigUint>> {
    let mut s = vec![vec![BigUint::zero(); max + 1]; max + 1];
    s[0][0] = BigUint::one();
    for m in 1..=max {
        for l in 1..=m {
            s[m][l] = BigUint::from(l) * &s[m - 1][l] + &s[m - 1][l - 1];
        }
    }
    s
}

/// `(L, U)` from `L_k = 0`, `U_k = 1`,
/// `L_p = −Σ_{p<l≤k} U_l C(k−p, l−p)` and `U_p = −(2ᵏ−1)L_p`.
pub fn l_recursion(k: usize) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    check_cap("l_recursion", k, MULTI_K_CAP)?;
    let m = BigInt::from((1u64 << k) - 1);
    let mut l = vec![BigInt::zero(); k + 1];
    let mut u = vec![BigInt::zero(); k + 1];
    u[k] = BigInt::one();
    for p in (0..k).rev() {
        let mut acc = BigInt::zero();
        for j in p + 1..=k {
            acc += &u[j] * BigInt::from(binomial(k - p, j - p));
        }
        l[p] = -acc;
        u[p] = -(&m * &l[p]);
    }
    Ok((l, u))
}

/// `L_p = −Σ_{l=1}^{k−p} (2ᵏ−1)^{l−1} l! S(k−p, l)`, with `L_k = 0`.
pub fn l_stirling(k: usize) -> Result<Vec<BigInt>> {
    check_cap("l_stirling", k, MULTI_K_CAP)?;
    let s = stirling2_table(k);
    let m = BigUint::from((1u64 << k) - 1);
    let mut out = Vec::with_capacity(k + 1);
    for p in 0..=k {
        let mut acc = BigUint::zero();
        let mut power = BigUint::one();
        for j in 1..=k - p {
            acc += &power * factorial(j) * &s[k - p][j];
            power *= &m;
        }
        out.push(-BigInt::from(acc));
    }
    Ok(out)
}

fn log2_big(x: &BigInt) -> f64 {
    x.magnitude().to_f64().expect("finite").log2()
}

pub fn multi_bit_bound(n: usize, k: usize) -> Result<MultiBitBound> {
    check_cap("multi_bit_bound", n, MULTI_N_CAP)?;
    let (l, u) = l_recursion(k)?;
    let closed = l_stirling(k)?;
    if closed != l {
        return Err(Error::invalid(format!("L_p recursion and closed form disagree at k = {k}")));
    }
    // log₂ of each term of (2ᵏ−1) Σ_p C(k, k−p) |L_p| / 2^{n(k−p)}.
    let logs: Vec<f64> = (0..k)
        .map(|p| {
            let c = binomial(k, k - p).to_f64().expect("finite").log2();
            c + log2_big(&l[p]) - (n * (k - p)) as f64
        })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = logs.iter().map(|v| (v - top).exp2()).sum();
    let log2_delta = (((1u64 << k) - 1) as f64).log2() + top + sum.log2();
    let log2_info_bound = k as f64 - std::f64::consts::LN_2.log2() + log2_delta;
    Ok(MultiBitBound {
        n,
        k,
        l,
        u,
        delta: log2_delta.exp2(),
        log2_delta,
        info_bound: log2_info_bound.exp2(),
        log2_info_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContourPoint {
    pub n: usize,
    pub k: usize,
    pub log2_info_bound: f64,
}

/// `log₂` of the information bound on an `(n, k)` grid, `n` varying fastest.
pub fn multi_bit_contours(ns: &[usize], ks: &[usize]) -> Result<Vec<ContourPoint>> {
    let mut out = Vec::with_capacity(ns.len() * ks.len());
    for &k in ks {
        for &n in ns {
            let b = multi_bit_bound(n, k)?;
            out.push(ContourPoint { n, k, log2_info_bound: b.log2_info_bound });
        }
    }
    Ok(out)
}

/// Smallest `n` whose information bound is at most `eps` bits.
pub fn required_n(k: usize, eps: f64) -> Result<usize> {
    if !(eps > 0.0) {
        return Err(Error::invalid(format!("eps = {eps} must be positive")));
    }
    let target = eps.log2();
    // The bound is decreasing in n; bisect on [1, cap].
    let ok = |n: usize| multi_bit_bound(n, k).map(|b| b.log2_info_bound <= target);
    if !ok(MULTI_N_CAP)? {
        return Err(Error::cap("required_n", MULTI_N_CAP + 1, MULTI_N_CAP));
    }
    let (mut lo, mut hi) = (1usize, MULTI_N_CAP);
    if ok(lo)? {
        return Ok(lo);
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Large-`k` growth `2k + log k + log log e + log(1/ε)`, logs base 2.
pub fn asymptotic_n(k: usize, eps: f64) -> f64 {
    let k = k as f64;
    2.0 * k + k.log2() + std::f64::consts::LOG2_E.log2() - eps.log2()
}
