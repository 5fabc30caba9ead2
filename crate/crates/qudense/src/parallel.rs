//! Deterministic worker pools.
//!
//! Work is always split over fixed logical units (Monte Carlo blocks,
//! pixels, resamples) that carry their own RNG streams, so any thread count
//! produces byte-identical results; threads only change wall time.

use qudense_core::bell::ALPHABET;
use qudense_core::bootstrap::{resample_mi, sample_std};
use qudense_core::channel::{
    blocks_for, mc_block_counts, AnalyzerModel, ChannelMatrix, CountsTable, InconclusivePolicy,
    NoiseModel, N_OUTCOMES,
};
use qudense_core::image::{
    assemble_transmission, expected_trials_per_pixel, transmit_pixel, PalettedImage, PixelResult,
    TransmissionReport,
};
use qudense_core::Result;

/// Map `f` over `0..n`, sharded across `threads` workers, collecting results
/// in index order.
pub fn run_indexed<T, F>(n: usize, threads: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let threads = threads.max(1).min(n.max(1));
    if threads == 1 {
        return (0..n).map(f).collect();
    }
    let mut slots: Vec<Option<T>> = Vec::with_capacity(n);
    slots.resize_with(n, || None);
    let chunk = n.div_ceil(threads);
    std::thread::scope(|scope| {
        for (worker, piece) in slots.chunks_mut(chunk).enumerate() {
            let f = &f;
            scope.spawn(move || {
                let base = worker * chunk;
                for (k, slot) in piece.iter_mut().enumerate() {
                    *slot = Some(f(base + k));
                }
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("worker filled every slot"))
        .collect()
}

/// Monte Carlo channel estimation sharded over fixed shot blocks.
pub fn confusion_mc(
    model: &AnalyzerModel,
    noise: &NoiseModel,
    shots: u64,
    seed: u64,
    threads: usize,
) -> Result<ChannelMatrix> {
    let mut rows = [[0.0; N_OUTCOMES]; ALPHABET];
    for symbol in 0..ALPHABET as u8 {
        let blocks: Vec<(u64, u64)> = blocks_for(shots).collect();
        let results = run_indexed(blocks.len(), threads, |k| {
            let (block, len) = blocks[k];
            mc_block_counts(model, noise, symbol, seed, block, len)
        });
        let mut counts = [0u64; N_OUTCOMES];
        for r in results {
            for (acc, v) in counts.iter_mut().zip(r?) {
                *acc += v;
            }
        }
        for (y, &c) in counts.iter().enumerate() {
            rows[symbol as usize][y] = c as f64 / shots as f64;
        }
    }
    ChannelMatrix::from_rows(rows)
}

/// Bootstrap standard deviation sharded over resamples.
pub fn bootstrap_mc(
    counts: &CountsTable,
    resamples: usize,
    seed: u64,
    threads: usize,
) -> Result<f64> {
    if resamples < 100 {
        return Err(qudense_core::Error::InvalidParameter {
            name: "resamples",
            detail: "at least 100 resamples are required".into(),
        });
    }
    let values = run_indexed(resamples, threads, |r| resample_mi(counts, seed, r as u64));
    Ok(sample_std(&values))
}

/// Image transmission sharded over pixels.
pub fn transmit_mc(
    image: &PalettedImage,
    model: &AnalyzerModel,
    noise: &NoiseModel,
    policy: InconclusivePolicy,
    seed: u64,
    threads: usize,
) -> Result<(PalettedImage, TransmissionReport)> {
    noise.validate()?;
    let pixels = image.pixels();
    let results: Vec<Result<PixelResult>> = run_indexed(pixels.len(), threads, |k| {
        transmit_pixel(model, noise, policy, seed, k as u64, pixels[k])
    });
    let results: Result<Vec<PixelResult>> = results.into_iter().collect();
    let expected = expected_trials_per_pixel(model, noise, policy, image)?;
    assemble_transmission(image, &results?, expected, seed)
}
