//! Mutual information and channel capacity.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::bell::ALPHABET;
use crate::channel::{ChannelMatrix, Prior};
use crate::error::{Error, Result};

const LN_2: f64 = core::f64::consts::LN_2;

/// log2(5), the five-symbol ceiling.
pub fn log2_5() -> f64 {
    libm::log2(5.0)
}

/// Mutual information in bits for an arbitrary conditional matrix
/// (`rows[x][y] = p(y|x)`), with `0·log` terms treated as zero.
pub fn mutual_information_of(prior: &[f64], rows: &[Vec<f64>]) -> f64 {
    let n_out = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut marginal = vec![0.0f64; n_out];
    for (x, row) in rows.iter().enumerate() {
        for (m, pyx) in marginal.iter_mut().zip(row) {
            *m += prior[x] * pyx;
        }
    }
    let mut bits = 0.0;
    for (x, row) in rows.iter().enumerate() {
        if prior[x] == 0.0 {
            continue;
        }
        for (pyx, m) in row.iter().zip(&marginal) {
            if *pyx > 0.0 {
                bits += prior[x] * pyx * libm::log2(pyx / m);
            }
        }
    }
    bits
}

/// Mutual information between the five input symbols and the six decode
/// outcomes:
/// `Σ_y Σ_x p(x) p(y|x) log2[p(y|x) / Σ_x' p(x') p(y|x')]`.
pub fn mutual_information(prior: &Prior, channel: &ChannelMatrix) -> f64 {
    let rows: Vec<Vec<f64>> = channel.rows().iter().map(|r| r.to_vec()).collect();
    mutual_information_of(prior.probabilities(), &rows)
}

/// Shannon entropy of a distribution in bits.
pub fn entropy_bits(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * libm::log2(p))
        .sum()
}

/// Capacity search result over an arbitrary input alphabet.
#[derive(Clone, Debug)]
pub struct CapacitySearch {
    pub capacity_bits: f64,
    pub prior: Vec<f64>,
    pub iterations: usize,
    /// Final (lower, upper) capacity bracket in bits.
    pub bracket: (f64, f64),
}

/// Capacity search result for the five-symbol channel.
#[derive(Clone, Debug)]
pub struct CapacityResult {
    pub capacity_bits: f64,
    pub prior: Prior,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

const MAX_ITERATIONS: usize = 200_000;

/// Alternating maximization of mutual information over input priors for an
/// arbitrary conditional matrix.
///
/// Each round brackets the capacity between `ln Z` and `max_x D_x`;
/// iteration stops when the bracket is narrower than `tol` bits. The
/// returned capacity is the best lower bracket edge, which dominates the
/// mutual information of the uniform prior.
pub fn capacity_of(rows: &[Vec<f64>], tol: f64) -> Result<CapacitySearch> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidParameter {
            name: "tol",
            detail: format!("{tol} must be a positive width in bits"),
        });
    }
    let n_in = rows.len();
    let n_out = rows.first().map(|r| r.len()).unwrap_or(0);
    if n_in == 0 || n_out == 0 {
        return Err(Error::InvalidParameter {
            name: "channel",
            detail: "empty conditional matrix".to_string(),
        });
    }
    let mut r = vec![1.0 / n_in as f64; n_in];
    let mut best_lower = f64::NEG_INFINITY;
    let mut best_prior = r.clone();
    let mut last = (f64::NEG_INFINITY, f64::INFINITY);
    for iteration in 1..=MAX_ITERATIONS {
        let mut marginal = vec![0.0f64; n_out];
        for (rx, row) in r.iter().zip(rows) {
            for (m, pyx) in marginal.iter_mut().zip(row) {
                *m += rx * pyx;
            }
        }
        // D_x = KL(p(.|x) || marginal) in nats
        let mut d = vec![0.0f64; n_in];
        for (dx, row) in d.iter_mut().zip(rows) {
            for (pyx, m) in row.iter().zip(&marginal) {
                if *pyx > 0.0 {
                    *dx += pyx * libm::log(pyx / m);
                }
            }
        }
        let upper = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = r.iter().zip(&d).map(|(rx, dx)| rx * libm::exp(*dx)).sum();
        let lower = libm::log(z);
        for (rx, dx) in r.iter_mut().zip(&d) {
            *rx *= libm::exp(dx - lower);
        }
        let total: f64 = r.iter().sum();
        for rx in r.iter_mut() {
            *rx /= total;
        }
        if lower > best_lower {
            best_lower = lower;
            best_prior = r.clone();
        }
        last = (lower / LN_2, upper / LN_2);
        if (upper - lower) / LN_2 < tol {
            return Ok(CapacitySearch {
                capacity_bits: best_lower / LN_2,
                prior: best_prior,
                iterations: iteration,
                bracket: last,
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: MAX_ITERATIONS,
        lower_bits: last.0,
        upper_bits: last.1,
    })
}

/// [`capacity_of`] specialized to the five-symbol channel matrix.
pub fn capacity_blahut_arimoto(channel: &ChannelMatrix, tol: f64) -> Result<CapacityResult> {
    let rows: Vec<Vec<f64>> = channel.rows().iter().map(|r| r.to_vec()).collect();
    let search = capacity_of(&rows, tol)?;
    let mut prior = [0.0; ALPHABET];
    prior.copy_from_slice(&search.prior);
    // clean tiny negative noise from the exponential updates
    let total: f64 = prior.iter().map(|p| p.max(0.0)).sum();
    for p in prior.iter_mut() {
        *p = p.max(0.0) / total;
    }
    Ok(CapacityResult {
        capacity_bits: search.capacity_bits,
        prior: Prior::new(prior)?,
        iterations: search.iterations,
        bracket: search.bracket,
    })
}

/// The three comparison constants quoted with every capacity report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceLimits {
    /// Qubit-pair superdense coding ceiling.
    pub qubit_sdc: f64,
    /// One bare ququart: log2(4).
    pub single_ququart: f64,
    /// Five-state alphabet ceiling: log2(5).
    pub five_state: f64,
}

pub fn reference_limits() -> ReferenceLimits {
    ReferenceLimits {
        qubit_sdc: 2.0,
        single_ququart: 2.0,
        five_state: log2_5(),
    }
}
