//! Deterministic random-number streams.
//!
//! Every stochastic routine draws from a stream derived from `(seed, tags)`,
//! where the tags identify the logical unit of work (symbol and shot block,
//! pixel index, resample index). Results are therefore independent of how
//! units are sharded across worker threads.

use rand_core::RngCore;
use rand_pcg::Pcg64Mcg;

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer; used to hash seeds and tags into stream states.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A PCG stream keyed by a seed and a list of tags.
pub fn stream(seed: u64, tags: &[u64]) -> Stream {
    let mut h = splitmix64(seed);
    for &t in tags {
        h = splitmix64(h ^ splitmix64(t));
    }
    let lo = splitmix64(h);
    let hi = splitmix64(lo);
    Stream {
        rng: Pcg64Mcg::new(((hi as u128) << 64) | lo as u128),
    }
}

pub struct Stream {
    rng: Pcg64Mcg,
}

impl Stream {
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    pub fn f64(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [0, 1); never exactly zero.
    pub fn f64_open(&mut self) -> f64 {
        loop {
            let u = self.f64();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Uniform integer in 0..n.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        // rejection to avoid modulo bias
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.rng.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Standard normal via Box-Muller (one value per two uniforms).
    pub fn gaussian(&mut self) -> f64 {
        let u1 = self.f64_open();
        let u2 = self.f64();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
    }

    /// Poisson sample. Knuth multiplication below mean 30, transformed
    /// rejection (PTRS) above it.
    pub fn poisson(&mut self, mean: f64) -> u64 {
        if mean <= 0.0 {
            return 0;
        }
        if mean < 30.0 {
            let limit = libm::exp(-mean);
            let mut k = 0u64;
            let mut prod = self.f64();
            while prod > limit {
                k += 1;
                prod *= self.f64();
            }
            k
        } else {
            self.poisson_ptrs(mean)
        }
    }

    // W. Hörmann's PTRS sampler for large means.
    fn poisson_ptrs(&mut self, mean: f64) -> u64 {
        let slam = libm::sqrt(mean);
        let loglam = libm::log(mean);
        let b = 0.931 + 2.53 * slam;
        let a = -0.059 + 0.02483 * b;
        let inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        let vr = 0.9277 - 3.6224 / (b - 2.0);
        loop {
            let u = self.f64() - 0.5;
            let v = self.f64_open();
            let us = 0.5 - libm::fabs(u);
            let k = libm::floor((2.0 * a / us + b) * u + mean + 0.43);
            if us >= 0.07 && v <= vr {
                return k as u64;
            }
            if k < 0.0 || (us < 0.013 && v > us) {
                continue;
            }
            let lhs = libm::log(v * inv_alpha / (a / (us * us) + b));
            let rhs = -mean + k * loglam - libm::lgamma(k + 1.0);
            if lhs <= rhs {
                return k as u64;
            }
        }
    }

    /// Number of Bernoulli(p) trials up to and including the first success.
    pub fn geometric(&mut self, p: f64) -> u64 {
        debug_assert!(p > 0.0 && p <= 1.0);
        if p >= 1.0 {
            return 1;
        }
        let u = self.f64_open();
        1 + libm::floor(libm::log(u) / libm::log(1.0 - p)) as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_tag_separated() {
        let mut a = stream(7, &[1, 2]);
        let mut b = stream(7, &[1, 2]);
        let mut c = stream(7, &[2, 1]);
        let xs: [u64; 4] = core::array::from_fn(|_| a.next_u64());
        let ys: [u64; 4] = core::array::from_fn(|_| b.next_u64());
        let zs: [u64; 4] = core::array::from_fn(|_| c.next_u64());
        assert_eq!(xs, ys);
        assert_ne!(xs, zs);
    }

    #[test]
    fn poisson_moments_are_sane() {
        for &mean in &[3.0, 250.0, 19000.0] {
            let mut s = stream(11, &[mean as u64]);
            let n = 4000;
            let samples: alloc::vec::Vec<f64> = (0..n).map(|_| s.poisson(mean) as f64).collect();
            let avg = samples.iter().sum::<f64>() / n as f64;
            let var = samples.iter().map(|x| (x - avg) * (x - avg)).sum::<f64>() / n as f64;
            let sd = libm::sqrt(mean / n as f64);
            assert!((avg - mean).abs() < 6.0 * sd, "mean {mean}: avg {avg}");
            assert!((var / mean - 1.0).abs() < 0.15, "mean {mean}: var {var}");
        }
    }

    #[test]
    fn gaussian_moments_are_sane() {
        let mut s = stream(13, &[]);
        let n = 20000;
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..n {
            let g = s.gaussian();
            sum += g;
            sq += g * g;
        }
        assert!((sum / n as f64).abs() < 0.05);
        assert!((sq / n as f64 - 1.0).abs() < 0.05);
    }

    #[test]
    fn geometric_mean_matches_inverse_p() {
        let mut s = stream(17, &[]);
        let p = 0.109;
        let n = 20000;
        let avg = (0..n).map(|_| s.geometric(p) as f64).sum::<f64>() / n as f64;
        assert!((avg - 1.0 / p).abs() < 0.4);
    }
}
