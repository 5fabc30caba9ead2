//! Poisson bootstrap error bars for the mutual information.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::bell::ALPHABET;
use crate::channel::{ChannelMatrix, CountsTable, Prior, N_OUTCOMES};
use crate::error::{Error, Result};
use crate::info::mutual_information;
use crate::rng::stream;

const BOOT_TAG: u64 = 0x626f6f74;

/// Uniform-prior mutual information of one Poisson resample of the counts.
/// Stream `(seed, resample)` makes the value independent of scheduling.
pub fn resample_mi(counts: &CountsTable, seed: u64, resample: u64) -> f64 {
    let mut rng = stream(seed, &[BOOT_TAG, resample]);
    let mut rows = [[0.0f64; N_OUTCOMES]; ALPHABET];
    for (x, row) in counts.cells().iter().enumerate() {
        let mut drawn = [0.0f64; N_OUTCOMES];
        let mut total = 0.0;
        for (y, &c) in row.iter().enumerate() {
            let v = rng.poisson(c as f64) as f64;
            drawn[y] = v;
            total += v;
        }
        if total == 0.0 {
            // a fully empty resampled row carries no evidence; keep it flat
            drawn = [1.0 / N_OUTCOMES as f64; N_OUTCOMES];
            total = 1.0;
        }
        for (cell, v) in rows[x].iter_mut().zip(drawn) {
            *cell = v / total;
        }
    }
    let channel = ChannelMatrix::from_rows(rows).expect("renormalized rows are a channel");
    mutual_information(&Prior::uniform(), &channel)
}

/// Sample standard deviation of a set of resampled values.
pub fn sample_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    libm::sqrt(var)
}

/// Poisson-bootstrap standard deviation of the uniform-prior mutual
/// information: each cell is resampled as Poisson(count), rows are
/// renormalized, and the MI recomputed per resample.
pub fn bootstrap_error(counts: &CountsTable, resamples: usize, seed: u64) -> Result<f64> {
    if resamples < 100 {
        return Err(Error::InvalidParameter {
            name: "resamples",
            detail: "at least 100 resamples are required".to_string(),
        });
    }
    if counts.total() == 0 {
        return Err(Error::InvalidParameter {
            name: "counts",
            detail: "counts table is empty".to_string(),
        });
    }
    let values: Vec<f64> = (0..resamples as u64)
        .map(|r| resample_mi(counts, seed, r))
        .collect();
    Ok(sample_std(&values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{confusion_from_sim, AnalyzerModel, NoiseModel, SimMode};

    fn calibrated_counts(per_symbol: u64) -> CountsTable {
        let model = AnalyzerModel::bundled().unwrap();
        let ch = confusion_from_sim(&model, &NoiseModel::calibrated(), SimMode::Exact).unwrap();
        CountsTable::from_channel(&ch, per_symbol)
    }

    #[test]
    fn sigma_is_small_but_nonzero_at_the_experimental_count_rate() {
        let counts = calibrated_counts(20_000);
        let sigma = bootstrap_error(&counts, 300, 4).unwrap();
        assert!(sigma > 1e-3 && sigma < 0.03, "sigma = {sigma}");
    }

    #[test]
    fn sigma_scales_inversely_with_sqrt_counts() {
        let small = bootstrap_error(&calibrated_counts(20_000), 300, 4).unwrap();
        let large = bootstrap_error(&calibrated_counts(2_000_000), 300, 4).unwrap();
        let ratio = small / large;
        assert!(ratio > 6.0 && ratio < 16.0, "ratio = {ratio}");
    }

    #[test]
    fn fixed_seed_is_bit_reproducible() {
        let counts = calibrated_counts(20_000);
        let a = bootstrap_error(&counts, 150, 7).unwrap();
        let b = bootstrap_error(&counts, 150, 7).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn preconditions_are_enforced() {
        let counts = calibrated_counts(20_000);
        assert!(bootstrap_error(&counts, 99, 1).is_err());
        let empty = CountsTable::new([[0; N_OUTCOMES]; ALPHABET]);
        assert!(bootstrap_error(&empty, 200, 1).is_err());
    }
}
