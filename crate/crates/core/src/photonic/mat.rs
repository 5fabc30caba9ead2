//! Small dense complex matrices for mode maps and pair amplitudes.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub n: usize,
    a: Vec<Complex64>,
}

impl Mat {
    pub fn zeros(n: usize) -> Mat {
        Mat {
            n,
            a: vec![Complex64::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n);
        for k in 0..n {
            m[(k, k)] = Complex64::ONE;
        }
        m
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Mat::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let x = self[(r, k)];
                if x == Complex64::ZERO {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += x * rhs[(k, c)];
                }
            }
        }
        out
    }

    /// `U · T · Uᵀ`, the evolution of a two-photon amplitude matrix when
    /// each photon's modes transform by `U`.
    pub fn sandwich(&self, t: &Mat) -> Mat {
        let ut = self.mul(t);
        let n = self.n;
        let mut out = Mat::zeros(n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::ZERO;
                for k in 0..n {
                    acc += ut[(r, k)] * self[(c, k)];
                }
                out[(r, c)] = acc;
            }
        }
        out
    }

    /// Max-abs deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::ZERO;
                for k in 0..n {
                    acc += self[(k, r)].conj() * self[(k, c)];
                }
                let expect = if r == c {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                worst = worst.max((acc - expect).norm());
            }
        }
        worst
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.a[r * self.n + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.a[r * self.n + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_matches_explicit_sum() {
        let mut u = Mat::zeros(2);
        let s = core::f64::consts::FRAC_1_SQRT_2;
        u[(0, 0)] = Complex64::new(s, 0.0);
        u[(0, 1)] = Complex64::new(s, 0.0);
        u[(1, 0)] = Complex64::new(s, 0.0);
        u[(1, 1)] = Complex64::new(-s, 0.0);
        let mut t = Mat::zeros(2);
        t[(0, 1)] = Complex64::ONE;
        t[(1, 0)] = Complex64::ONE;
        let out = u.sandwich(&t);
        // (H+V)(H−V) keeps only the diagonal after symmetrization
        assert!((out[(0, 0)] - Complex64::ONE).norm() < 1e-12);
        assert!((out[(1, 1)] + Complex64::ONE).norm() < 1e-12);
        assert!(out[(0, 1)].norm() < 1e-12);
        assert!(u.unitarity_defect() < 1e-12);
    }
}
