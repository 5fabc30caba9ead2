//! Alice's encoding unitaries.
//!
//! Alice holds one ququart of the shared `Ψ11` pair and steers it with four
//! voltage-controlled phase retarders (LCs), modeled here at the logical
//! level. Writing the ququart as rail ⊗ polarization (`|0⟩=1H, |1⟩=1V,
//! |2⟩=2H, |3⟩=2V`), the four retardances enter as
//!
//! ```text
//! E(φ1..φ4) = L1(φ1) · L2(φ2) · L3(φ3) · L4(φ4)
//!
//! L1(φ)  45°-axis retarder across both rails (φ=π swaps H↔V)
//! L2(φ)  diag(1, e^{iφ}, 1, e^{iφ})      V phase, both rails
//! L3(φ)  diag(1, e^{iφ}, 1, 1)           V phase, rail 1
//! L4(φ)  diag(1, 1, e^{iφ}, 1)           H phase, rail 2
//! ```
//!
//! The six canonical settings (five phase patterns plus the swap gate route)
//! map `Ψ11` onto the alphabet states and `Ψ43`.

use num_complex::Complex64;

use crate::bell::{TwoQuquartState, DIM, PAIR_DIM};
use crate::error::{Error, Result};

/// A 4x4 unitary acting on Alice's ququart.
#[derive(Clone, Debug, PartialEq)]
pub struct LogicalUnitary {
    m: [[Complex64; DIM]; DIM],
}

impl LogicalUnitary {
    pub fn identity() -> Self {
        let mut m = [[Complex64::ZERO; DIM]; DIM];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = Complex64::ONE;
        }
        LogicalUnitary { m }
    }

    pub fn from_rows(m: [[Complex64; DIM]; DIM]) -> Self {
        LogicalUnitary { m }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &LogicalUnitary) -> LogicalUnitary {
        let mut out = [[Complex64::ZERO; DIM]; DIM];
        for (r, out_row) in out.iter_mut().enumerate() {
            for (c, cell) in out_row.iter_mut().enumerate() {
                let mut acc = Complex64::ZERO;
                for k in 0..DIM {
                    acc += self.m[r][k] * rhs.m[k][c];
                }
                *cell = acc;
            }
        }
        LogicalUnitary { m: out }
    }

    /// Max-abs deviation of `U·U†` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..DIM {
            for c in 0..DIM {
                let mut acc = Complex64::ZERO;
                for k in 0..DIM {
                    acc += self.m[r][k] * self.m[c][k].conj();
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

/// The rail-swapping gate: antidiagonal ones, `|k⟩ → |3−k⟩`. Involution.
pub fn u_gate() -> LogicalUnitary {
    let mut m = [[Complex64::ZERO; DIM]; DIM];
    for (k, row) in m.iter_mut().enumerate() {
        row[DIM - 1 - k] = Complex64::ONE;
    }
    LogicalUnitary { m }
}

/// One encoder configuration: which symbol it realizes, the four retarder
/// phases, and whether the swap-gate section is active.
///
/// Canonical settings use phases of exactly 0 or π; arbitrary angles are
/// accepted for jitter studies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EncoderSetting {
    pub symbol: u8,
    pub phases: [f64; 4],
    pub use_u_gate: bool,
}

impl EncoderSetting {
    /// The canonical setting for an alphabet symbol 0..=5.
    ///
    /// Symbols 0..=4 are the five-state alphabet; symbol 5 is the extended
    /// route (Ψ13 phases followed by the swap gate, landing on Ψ43).
    pub fn canonical(symbol: u8) -> Result<Self> {
        use core::f64::consts::PI;
        let (phases, use_u_gate) = match symbol {
            0 => ([0.0, 0.0, 0.0, 0.0], false),
            1 => ([0.0, PI, 0.0, 0.0], false),
            2 => ([0.0, PI, PI, PI], false),
            3 => ([0.0, 0.0, PI, PI], false),
            4 => ([PI, PI, PI, PI], false),
            5 => ([0.0, PI, PI, PI], true),
            _ => return Err(Error::InvalidSymbol { symbol, max: 5 }),
        };
        Ok(EncoderSetting {
            symbol,
            phases,
            use_u_gate,
        })
    }
}

fn phase(radians: f64) -> Complex64 {
    Complex64::from_polar(1.0, radians)
}

/// 45°-axis retarder Jones block, applied to both rail subspaces.
fn l1(radians: f64) -> LogicalUnitary {
    let e = phase(radians);
    let d = (Complex64::ONE + e) * 0.5;
    let x = (Complex64::ONE - e) * 0.5;
    let z = Complex64::ZERO;
    LogicalUnitary::from_rows([[d, x, z, z], [x, d, z, z], [z, z, d, x], [z, z, x, d]])
}

fn diag(d: [Complex64; DIM]) -> LogicalUnitary {
    let mut m = [[Complex64::ZERO; DIM]; DIM];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = d[k];
    }
    LogicalUnitary { m }
}

/// The logical unitary realized by an encoder setting.
pub fn encoder_unitary(setting: &EncoderSetting) -> LogicalUnitary {
    let [p1, p2, p3, p4] = setting.phases;
    let one = Complex64::ONE;
    let l2 = diag([one, phase(p2), one, phase(p2)]);
    let l3 = diag([one, phase(p3), one, one]);
    let l4 = diag([one, one, phase(p4), one]);
    let e = l1(p1).mul(&l2).mul(&l3).mul(&l4);
    if setting.use_u_gate {
        u_gate().mul(&e)
    } else {
        e
    }
}

/// `(u ⊗ 1) · state`: Alice's local operation on the shared pair.
pub fn apply_alice(state: &TwoQuquartState, u: &LogicalUnitary) -> TwoQuquartState {
    let mut out = [Complex64::ZERO; PAIR_DIM];
    for m in 0..DIM {
        for n in 0..DIM {
            let mut acc = Complex64::ZERO;
            for k in 0..DIM {
                acc += u.entry(m, k) * state.amplitude(k, n);
            }
            out[m * DIM + n] = acc;
        }
    }
    TwoQuquartState::from_amplitudes(out)
}

/// The alphabet state produced by a canonical setting, starting from `Ψ11`.
pub fn encode_symbol(symbol: u8) -> Result<TwoQuquartState> {
    let setting = EncoderSetting::canonical(symbol)?;
    let u = encoder_unitary(&setting);
    let initial = crate::bell::bell_state(crate::bell::BellLabel::new(1, 1)?);
    Ok(apply_alice(&initial, &u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::{bell_state, symbol_to_bell, BellLabel};

    const TOL: f64 = 1e-12;

    #[test]
    fn identity_setting_leaves_psi11() {
        let s = encode_symbol(0).unwrap();
        assert!(s.equal_up_to_phase(&bell_state(BellLabel::new(1, 1).unwrap()), TOL));
    }

    #[test]
    fn symbol_1_is_the_diagonal_sign_flip() {
        let setting = EncoderSetting::canonical(1).unwrap();
        let u = encoder_unitary(&setting);
        let expect = [1.0, -1.0, 1.0, -1.0];
        for (k, want) in expect.iter().enumerate() {
            assert!((u.entry(k, k) - Complex64::new(*want, 0.0)).norm() < TOL);
        }
        let s = encode_symbol(1).unwrap();
        assert!(s.equal_up_to_phase(&bell_state(BellLabel::new(1, 2).unwrap()), TOL));
    }

    #[test]
    fn symbol_4_swaps_rails_with_sign() {
        // block anti-diagonal: swap of {|0⟩,|1⟩}, sign-flipped swap of {|2⟩,|3⟩}
        let u = encoder_unitary(&EncoderSetting::canonical(4).unwrap());
        let one = Complex64::ONE;
        assert!((u.entry(0, 1) - one).norm() < TOL);
        assert!((u.entry(1, 0) - one).norm() < TOL);
        assert!((u.entry(2, 3) + one).norm() < TOL);
        assert!((u.entry(3, 2) + one).norm() < TOL);
        for k in 0..4 {
            assert!(u.entry(k, k).norm() < TOL);
        }
    }

    #[test]
    fn canonical_settings_reach_the_alphabet() {
        for symbol in 0..5u8 {
            let got = encode_symbol(symbol).unwrap();
            let want = bell_state(symbol_to_bell(symbol).unwrap());
            assert!(got.equal_up_to_phase(&want, TOL), "symbol {symbol}");
            assert!((got.norm_sqr() - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn u_gate_route_reaches_psi43() {
        let got = encode_symbol(5).unwrap();
        let want = bell_state(BellLabel::new(4, 3).unwrap());
        assert!(got.equal_up_to_phase(&want, TOL));
    }

    #[test]
    fn u_gate_after_psi13_is_minus_psi43() {
        // applying the swap gate to Ψ13 lands on −Ψ43 exactly
        let psi13 = bell_state(BellLabel::new(1, 3).unwrap());
        let got = apply_alice(&psi13, &u_gate());
        let want = bell_state(BellLabel::new(4, 3).unwrap());
        for m in 0..4 {
            for n in 0..4 {
                assert!((got.amplitude(m, n) + want.amplitude(m, n)).norm() < TOL);
            }
        }
    }

    #[test]
    fn u_gate_is_an_involution() {
        let uu = u_gate().mul(&u_gate());
        let id = LogicalUnitary::identity();
        for r in 0..4 {
            for c in 0..4 {
                assert!((uu.entry(r, c) - id.entry(r, c)).norm() < TOL);
            }
        }
    }

    #[test]
    fn canonical_unitaries_are_signed_permutations() {
        for symbol in 0..6u8 {
            let u = encoder_unitary(&EncoderSetting::canonical(symbol).unwrap());
            for r in 0..4 {
                let row_hits = (0..4).filter(|&c| u.entry(r, c).norm() > TOL).count();
                let col_hits = (0..4).filter(|&c| u.entry(c, r).norm() > TOL).count();
                assert_eq!((row_hits, col_hits), (1, 1), "symbol {symbol} row {r}");
                for c in 0..4 {
                    let m = u.entry(r, c).norm();
                    assert!(m < TOL || (m - 1.0).abs() < TOL);
                }
            }
        }
    }

    #[test]
    fn arbitrary_phases_stay_unitary() {
        let setting = EncoderSetting {
            symbol: 0,
            phases: [0.3, -1.2, 2.9, 0.77],
            use_u_gate: false,
        };
        assert!(encoder_unitary(&setting).unitarity_defect() < TOL);
    }

    #[test]
    fn symbol_range_is_enforced() {
        assert!(EncoderSetting::canonical(6).is_err());
    }
}
