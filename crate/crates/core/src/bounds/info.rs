//! Mutual information of a bit sent through a measurement with bounded
//! decoding advantage.
//!
//! A channel is a list of rows, one per input `x`, each a distribution over
//! outcomes `y`.

use serde::Serialize;

use crate::error::{Error, Result};

const DIST_TOL: f64 = 1e-12;

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p].iter().filter(|&&q| q > 0.0).map(|q| -q * q.log2()).sum()
}

fn check_prior(prior: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&prior) {
        return Err(Error::invalid(format!("prior {prior} outside [0, 1]")));
    }
    Ok(())
}

fn check_channel(channel: &[Vec<f64>]) -> Result<usize> {
    let width = channel.first().map(Vec::len).unwrap_or(0);
    if width == 0 {
        return Err(Error::invalid("empty channel"));
    }
    for (x, row) in channel.iter().enumerate() {
        if row.len() != width {
            return Err(Error::invalid(format!("row {x} has {} outcomes, expected {width}", row.len())));
        }
        if row.iter().any(|&p| !(p >= -DIST_TOL)) || (row.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!("row {x} is not a probability vector")));
        }
    }
    Ok(width)
}

/// Shannon `I(X:Y)` in bits.
pub fn channel_mutual_info(prior: &[f64], channel: &[Vec<f64>]) -> Result<f64> {
    let width = check_channel(channel)?;
    if prior.len() != channel.len() || (prior.iter().sum::<f64>() - 1.0).abs() > 1e-9 || prior.iter().any(|&p| p < 0.0) {
        return Err(Error::invalid("prior does not match the channel"));
    }
    let mut info = 0.0;
    for y in 0..width {
        let py: f64 = prior.iter().zip(channel).map(|(px, row)| px * row[y]).sum();
        for (px, row) in prior.iter().zip(channel) {
            let joint = px * row[y];
            if joint > 0.0 {
                info += joint * (row[y] / py).log2();
            }
        }
    }
    Ok(info)
}

/// Binary-input `I(X:Y)` as `Σ_j f(p_{j0}, p_{j1})` with
/// `f = Σ_x p_x p_{jx} log(p_{jx} / (p₀p_{j0} + p₁p_{j1}))`.
pub fn channel_mutual_info_by_outcome(prior0: f64, channel: &[Vec<f64>]) -> Result<f64> {
    check_prior(prior0)?;
    if channel.len() != 2 {
        return Err(Error::invalid("binary input expected"));
    }
    check_channel(channel)?;
    let x = [prior0, 1.0 - prior0];
    let f = |p0: f64, p1: f64| {
        let mix = x[0] * p0 + x[1] * p1;
        [(x[0], p0), (x[1], p1)].iter().filter(|(w, p)| w * p > 0.0).map(|(w, p)| w * p * (p / mix).log2()).sum::<f64>()
    };
    Ok((0..channel[0].len()).map(|j| f(channel[0][j], channel[1][j])).sum())
}

/// Best `p(Z=0|X=0) + p(Z=1|X=1) − 1` over decodings `Z = g(Y)`:
/// `Σ_j max(p_{j0}, p_{j1}) − 1`.
pub fn decoding_advantage(channel: &[Vec<f64>]) -> Result<f64> {
    if channel.len() != 2 {
        return Err(Error::invalid("binary input expected"));
    }
    check_channel(channel)?;
    Ok(channel[0].iter().zip(&channel[1]).map(|(a, b)| a.max(*b)).sum::<f64>() - 1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfoCap {
    pub bits: f64,
    /// "certainly 0", "certainly 1", "don't know".
    pub channel: Vec<Vec<f64>>,
}

/// `δ·H(X)` and the three-outcome channel attaining it.
pub fn mutual_info_cap(delta: f64, prior0: f64) -> Result<InfoCap> {
    check_prior(prior0)?;
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::invalid(format!("delta {delta} outside [0, 1]")));
    }
    Ok(InfoCap {
        bits: delta * binary_entropy(prior0),
        channel: vec![vec![delta, 0.0, 1.0 - delta], vec![0.0, delta, 1.0 - delta]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_channels() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!((channel_mutual_info(&[0.5, 0.5], &id).unwrap() - 1.0).abs() < 1e-15);
        let flat = vec![vec![0.3, 0.7], vec![0.3, 0.7]];
        assert!(channel_mutual_info(&[0.5, 0.5], &flat).unwrap().abs() < 1e-15);
    }

    #[test]
    fn cap_is_attained() {
        for &(d, p) in &[(1.0, 0.5), (0.0, 0.5), (0.25, 0.5), (0.3, 0.2)] {
            let cap = mutual_info_cap(d, p).unwrap();
            let i = channel_mutual_info(&[p, 1.0 - p], &cap.channel).unwrap();
            assert!((i - cap.bits).abs() < 1e-12, "{d} {p}");
            assert!((decoding_advantage(&cap.channel).unwrap() - d).abs() < 1e-15);
        }
    }

    #[test]
    fn malformed_rejected() {
        assert!(channel_mutual_info(&[0.5, 0.5], &[vec![0.5, 0.6], vec![1.0, 0.0]]).is_err());
        assert!(mutual_info_cap(1.2, 0.5).is_err());
    }
}
