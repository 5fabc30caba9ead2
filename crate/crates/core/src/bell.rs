//! The two-ququart Bell basis.
//!
//! A ququart is a four-level system; here each photon's joint path (two
//! rails) x polarization (H/V) state. The 16 maximally entangled two-ququart
//! states `Ψ_ij` (i, j in 1..=4) form an orthonormal basis of the 16
//! dimensional two-photon space:
//!
//! ```text
//! Ψ_ij = 1/2 · Σ_m  s_j(m) |m⟩|m ⊕ (i−1)⟩,     m = 0..3,
//! ```
//!
//! where `⊕` is bitwise XOR on two bits and the sign pattern `s_j(m)` is
//! `(−1)^(m·b0 + ⌊m/2⌋·b1)` with `(b0, b1)` the bits of `j − 1`. The five
//! states `Ψ11, Ψ12, Ψ13, Ψ14, Ψ23` are the transmission alphabet.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Levels of a single ququart.
pub const DIM: usize = 4;
/// Dimension of the two-ququart space.
pub const PAIR_DIM: usize = 16;
/// Size of the transmission alphabet.
pub const ALPHABET: usize = 5;

/// Index pair naming one of the 16 Bell states `Ψ_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BellLabel {
    i: u8,
    j: u8,
}

impl BellLabel {
    /// Both indices must be in 1..=4.
    pub fn new(i: u8, j: u8) -> Result<Self> {
        if (1..=4).contains(&i) && (1..=4).contains(&j) {
            Ok(BellLabel { i, j })
        } else {
            Err(Error::InvalidLabel { i, j })
        }
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    /// All 16 labels, row-major in (i, j).
    pub fn all() -> impl Iterator<Item = BellLabel> {
        (1..=4u8).flat_map(|i| (1..=4u8).map(move |j| BellLabel { i, j }))
    }

    /// Flat index 0..16, row-major in (i, j).
    pub fn index(&self) -> usize {
        (self.i as usize - 1) * DIM + (self.j as usize - 1)
    }
}

impl core::fmt::Display for BellLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Psi{}{}", self.i, self.j)
    }
}

/// Pure state of two ququarts: 16 complex amplitudes over the logical
/// product basis `|mn⟩`, with `m` Alice's level and `n` Bob's.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQuquartState {
    amps: [Complex64; PAIR_DIM],
}

impl TwoQuquartState {
    pub fn from_amplitudes(amps: [Complex64; PAIR_DIM]) -> Self {
        TwoQuquartState { amps }
    }

    /// The product basis ket `|mn⟩`.
    pub fn basis_ket(m: usize, n: usize) -> Self {
        assert!(m < DIM && n < DIM);
        let mut amps = [Complex64::ZERO; PAIR_DIM];
        amps[m * DIM + n] = Complex64::ONE;
        TwoQuquartState { amps }
    }

    /// Amplitude of `|mn⟩`.
    pub fn amplitude(&self, m: usize, n: usize) -> Complex64 {
        self.amps[m * DIM + n]
    }

    pub fn amplitudes(&self) -> &[Complex64; PAIR_DIM] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Equality up to one global phase: there is a unit-modulus `g` with
    /// `other = g · self` within `tol` per amplitude.
    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        let Some(k) = (0..PAIR_DIM).max_by(|&a, &b| {
            self.amps[a]
                .norm_sqr()
                .partial_cmp(&self.amps[b].norm_sqr())
                .unwrap()
        }) else {
            return false;
        };
        if self.amps[k].norm() < tol {
            // zero state equals zero state only
            return other.amps.iter().all(|a| a.norm() < tol);
        }
        let g = other.amps[k] / self.amps[k];
        if (g.norm() - 1.0).abs() > tol {
            return false;
        }
        self.amps
            .iter()
            .zip(other.amps.iter())
            .all(|(a, b)| (b - g * a).norm() <= tol)
    }
}

/// The Bell state `Ψ_ij`: four amplitudes of magnitude 1/2 with the sign
/// pattern described in the module docs.
pub fn bell_state(label: BellLabel) -> TwoQuquartState {
    let shift = (label.i - 1) as usize;
    let b0 = ((label.j - 1) & 1) as usize;
    let b1 = ((label.j - 1) >> 1) as usize;
    let mut amps = [Complex64::ZERO; PAIR_DIM];
    for m in 0..DIM {
        let n = m ^ shift;
        let exponent = (m & 1) * b0 + (m >> 1) * b1;
        let sign = if exponent.is_multiple_of(2) {
            0.5
        } else {
            -0.5
        };
        amps[m * DIM + n] = Complex64::new(sign, 0.0);
    }
    TwoQuquartState { amps }
}

/// `⟨a|b⟩`, conjugate-linear in the first argument.
pub fn inner_product(a: &TwoQuquartState, b: &TwoQuquartState) -> Complex64 {
    a.amps
        .iter()
        .zip(b.amps.iter())
        .map(|(x, y)| x.conj() * y)
        .sum()
}

/// Alphabet symbol to Bell label: 0→Ψ11, 1→Ψ12, 2→Ψ13, 3→Ψ14, 4→Ψ23.
pub fn symbol_to_bell(symbol: u8) -> Result<BellLabel> {
    match symbol {
        0 => BellLabel::new(1, 1),
        1 => BellLabel::new(1, 2),
        2 => BellLabel::new(1, 3),
        3 => BellLabel::new(1, 4),
        4 => BellLabel::new(2, 3),
        _ => Err(Error::InvalidSymbol { symbol, max: 4 }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn psi_11_amplitudes() {
        let s = bell_state(BellLabel::new(1, 1).unwrap());
        for m in 0..4 {
            for n in 0..4 {
                let expect = if m == n { re(0.5) } else { Complex64::ZERO };
                assert_eq!(s.amplitude(m, n), expect);
            }
        }
    }

    #[test]
    fn psi_23_amplitudes() {
        // 1/2 on |01⟩,|10⟩ and −1/2 on |23⟩,|32⟩
        let s = bell_state(BellLabel::new(2, 3).unwrap());
        assert_eq!(s.amplitude(0, 1), re(0.5));
        assert_eq!(s.amplitude(1, 0), re(0.5));
        assert_eq!(s.amplitude(2, 3), re(-0.5));
        assert_eq!(s.amplitude(3, 2), re(-0.5));
        assert_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn psi_43_amplitudes() {
        // 1/2 on |03⟩,|12⟩ and −1/2 on |21⟩,|30⟩
        let s = bell_state(BellLabel::new(4, 3).unwrap());
        assert_eq!(s.amplitude(0, 3), re(0.5));
        assert_eq!(s.amplitude(1, 2), re(0.5));
        assert_eq!(s.amplitude(2, 1), re(-0.5));
        assert_eq!(s.amplitude(3, 0), re(-0.5));
    }

    #[test]
    fn orthonormal_basis() {
        for a in BellLabel::all() {
            for b in BellLabel::all() {
                let ip = inner_product(&bell_state(a), &bell_state(b));
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((ip - re(expect)).norm() < TOL, "⟨{a}|{b}⟩ = {ip}");
            }
        }
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_first_argument() {
        let phase = Complex64::from_polar(1.0, 0.7);
        let a = bell_state(BellLabel::new(2, 4).unwrap());
        let mut scaled = a.clone();
        for amp in scaled.amps.iter_mut() {
            *amp *= phase;
        }
        let b = bell_state(BellLabel::new(2, 4).unwrap());
        let ip = inner_product(&scaled, &b);
        assert!((ip - phase.conj()).norm() < TOL);
    }

    #[test]
    fn symbol_map_is_the_documented_bijection() {
        let expect = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 3)];
        for (sym, (i, j)) in expect.iter().enumerate() {
            let label = symbol_to_bell(sym as u8).unwrap();
            assert_eq!((label.i(), label.j()), (*i, *j));
        }
        assert_eq!(
            symbol_to_bell(5),
            Err(Error::InvalidSymbol { symbol: 5, max: 4 })
        );
    }

    #[test]
    fn label_range_is_enforced() {
        assert!(BellLabel::new(0, 1).is_err());
        assert!(BellLabel::new(1, 5).is_err());
        assert_eq!(BellLabel::all().count(), 16);
    }

    #[test]
    fn equal_up_to_phase_detects_global_phase_only() {
        let a = bell_state(BellLabel::new(1, 3).unwrap());
        let mut b = a.clone();
        for amp in b.amps.iter_mut() {
            *amp *= Complex64::from_polar(1.0, -1.3);
        }
        assert!(a.equal_up_to_phase(&b, TOL));
        let c = bell_state(BellLabel::new(1, 4).unwrap());
        assert!(!a.equal_up_to_phase(&c, TOL));
    }
}
