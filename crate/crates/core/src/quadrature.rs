//! Gauss-Hermite quadrature for Gaussian phase-jitter averages.

use alloc::vec::Vec;

/// Nodes and weights for `∫ e^{−t²} f(t) dt ≈ Σ w_k f(t_k)`.
///
/// Computed by Newton iteration on the physicists' Hermite recurrence,
/// walking roots from the outside in.
pub fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
    assert!((1..=64).contains(&n));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(n);
    let sqrt_pi = libm::sqrt(core::f64::consts::PI);
    // largest root initial guess, then successive roots from each predecessor
    let mut x =
        libm::sqrt(2.0 * n as f64 + 1.0) - 1.85575 * libm::pow(2.0 * n as f64 + 1.0, -1.0 / 6.0);
    for k in 0..n.div_ceil(2) {
        if k == 1 {
            x -= 1.14 * libm::pow(n as f64, 0.426) / x;
        } else if k == 2 {
            x = 1.86 * x - 0.86 * out[0].0;
        } else if k == 3 {
            x = 1.91 * x - 0.91 * out[1].0;
        } else if k > 3 {
            x = 2.0 * x - out[k - 2].0;
        }
        // Newton on H_n(x) with the derivative H_n' = 2n·H_{n−1}
        let mut dpn = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, 0.0f64);
            for j in 1..=n {
                let p2 = p1;
                p1 = p0;
                p0 = 2.0 * x * p1 - 2.0 * (j as f64 - 1.0) * p2;
            }
            dpn = 2.0 * n as f64 * p1;
            let dx = p0 / dpn;
            x -= dx;
            if libm::fabs(dx) < 1e-15 * (1.0 + libm::fabs(x)) {
                break;
            }
        }
        // weight via H_{n−1}(x): w = 2^{n−1} n! √π / (n² H_{n−1}²)
        // computed stably from the derivative: w = 2^{n+1} n! √π / (H_n')²
        let mut log_w = (n as f64 + 1.0) * libm::log(2.0) + libm::lgamma(n as f64 + 1.0);
        log_w += libm::log(sqrt_pi) - 2.0 * libm::log(libm::fabs(dpn));
        let w = libm::exp(log_w);
        out.push((x, w));
    }
    // mirror to the negative half (and keep the zero node once for odd n)
    let mut full = Vec::with_capacity(n);
    for &(t, w) in out.iter() {
        full.push((t, w));
    }
    for &(t, w) in out.iter().rev() {
        if t > 1e-14 {
            full.push((-t, w));
        }
    }
    full.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    full
}

/// Nodes and weights for averaging `f(δ)` over `δ ~ N(0, σ²)`:
/// `E[f] ≈ Σ w_k f(δ_k)` with the weights summing to one.
pub fn gaussian_average_nodes(sigma: f64, n: usize) -> Vec<(f64, f64)> {
    let inv_sqrt_pi = 1.0 / libm::sqrt(core::f64::consts::PI);
    gauss_hermite(n)
        .into_iter()
        .map(|(t, w)| (core::f64::consts::SQRT_2 * sigma * t, w * inv_sqrt_pi))
        .collect()
}
