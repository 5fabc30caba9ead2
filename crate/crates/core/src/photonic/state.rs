//! Two-photon states over optical modes.
//!
//! A state is a complex amplitude map over mode pairs. In the
//! `Indistinguishable` sector the pair is unordered and a doubly occupied
//! mode `{μ,μ}` denotes the normalized two-photon number state, so a state
//! written `(1/√8)·Σ ±|μμ⟩` over eight distinct modes yields probability 1/8
//! per same-detector event. In the `Distinguishable` sector the pair is
//! ordered (photon one, photon two) and exchange interference is absent.
//!
//! Both sectors propagate through a mode unitary `U` as `T → U·T·Uᵀ` on the
//! pair-amplitude matrix; they differ only in symmetrization and in how
//! final probabilities are read out.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::mat::Mat;
use super::mode::{Mode, Pol};
use crate::bell::{TwoQuquartState, DIM};

pub const SQRT_2: f64 = core::f64::consts::SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Indistinguishable,
    Distinguishable,
}

/// Amplitudes over mode pairs. Keys are ordered `(lo, hi)` with `lo <= hi`
/// in the indistinguishable sector; in the distinguishable sector the key
/// order is (photon one, photon two).
#[derive(Clone, Debug, PartialEq)]
pub struct PhotonicState {
    pub sector: Sector,
    amps: BTreeMap<(Mode, Mode), Complex64>,
}

impl PhotonicState {
    pub fn new(sector: Sector) -> Self {
        PhotonicState {
            sector,
            amps: BTreeMap::new(),
        }
    }

    /// Add amplitude on a pair. Indistinguishable keys are normalized to
    /// `(lo, hi)` order.
    pub fn add(&mut self, a: Mode, b: Mode, amp: Complex64) {
        let key = match self.sector {
            Sector::Indistinguishable => {
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            Sector::Distinguishable => (a, b),
        };
        *self.amps.entry(key).or_insert(Complex64::ZERO) += amp;
    }

    pub fn amplitude(&self, a: &Mode, b: &Mode) -> Complex64 {
        let key = match self.sector {
            Sector::Indistinguishable => {
                if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                }
            }
            Sector::Distinguishable => (a.clone(), b.clone()),
        };
        self.amps.get(&key).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(Mode, Mode), &Complex64)> {
        self.amps.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    /// Modes carrying any amplitude.
    pub fn modes(&self) -> Vec<Mode> {
        let mut set: alloc::collections::BTreeSet<Mode> = alloc::collections::BTreeSet::new();
        for (a, b) in self.amps.keys() {
            set.insert(a.clone());
            set.insert(b.clone());
        }
        set.into_iter().collect()
    }

    /// Drop terms below `tol` in magnitude.
    pub fn prune(&mut self, tol: f64) {
        self.amps.retain(|_, amp| amp.norm() > tol);
    }

    /// Equality up to one global phase, per amplitude tolerance `tol`.
    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        if self.sector != other.sector {
            return false;
        }
        let mut best: Option<(&(Mode, Mode), f64)> = None;
        for (k, amp) in &self.amps {
            let n = amp.norm();
            if best.map(|(_, bn)| n > bn).unwrap_or(true) {
                best = Some((k, n));
            }
        }
        let Some((anchor, n)) = best else {
            return other.amps.values().all(|a| a.norm() <= tol);
        };
        if n <= tol {
            return other.amps.values().all(|a| a.norm() <= tol);
        }
        let g = other.amps.get(anchor).copied().unwrap_or(Complex64::ZERO) / self.amps[anchor];
        if (g.norm() - 1.0).abs() > tol {
            return false;
        }
        let keys: alloc::collections::BTreeSet<&(Mode, Mode)> =
            self.amps.keys().chain(other.amps.keys()).collect();
        keys.into_iter().all(|k| {
            let a = self.amps.get(k).copied().unwrap_or(Complex64::ZERO);
            let b = other.amps.get(k).copied().unwrap_or(Complex64::ZERO);
            (b - g * a).norm() <= tol
        })
    }

    /// Pair-amplitude matrix over `universe` (see module docs):
    /// indistinguishable states become symmetric `T` with
    /// `T[μ,ν] = T[ν,μ] = amp` and `T[μ,μ] = amp·√2`; distinguishable states
    /// are laid out directly.
    pub(crate) fn to_matrix(&self, universe: &[Mode]) -> Mat {
        let index: BTreeMap<&Mode, usize> =
            universe.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let mut t = Mat::zeros(universe.len());
        for ((a, b), amp) in &self.amps {
            let i = index[a];
            let j = index[b];
            match self.sector {
                Sector::Indistinguishable => {
                    if i == j {
                        t[(i, i)] = amp * SQRT_2;
                    } else {
                        t[(i, j)] = *amp;
                        t[(j, i)] = *amp;
                    }
                }
                Sector::Distinguishable => {
                    t[(i, j)] = *amp;
                }
            }
        }
        t
    }

    pub(crate) fn from_matrix(t: &Mat, universe: &[Mode], sector: Sector, tol: f64) -> Self {
        let mut out = PhotonicState::new(sector);
        for i in 0..universe.len() {
            let j_range = match sector {
                Sector::Indistinguishable => i..universe.len(),
                Sector::Distinguishable => 0..universe.len(),
            };
            for j in j_range {
                let amp = if sector == Sector::Indistinguishable && i == j {
                    t[(i, i)] / SQRT_2
                } else {
                    t[(i, j)]
                };
                if amp.norm() > tol {
                    out.add(universe[i].clone(), universe[j].clone(), amp);
                }
            }
        }
        out
    }
}

/// Alice's logical level `m` as an optical mode at the input line.
pub fn alice_mode(m: usize) -> Mode {
    debug_assert!(m < DIM);
    let rail = if m < 2 { "a1" } else { "a2" };
    let pol = if m.is_multiple_of(2) { Pol::H } else { Pol::V };
    Mode::new(rail, pol)
}

/// Bob's logical level `n` as an optical mode at the input line.
pub fn bob_mode(n: usize) -> Mode {
    debug_assert!(n < DIM);
    let rail = if n < 2 { "a3" } else { "a4" };
    let pol = if n.is_multiple_of(2) { Pol::H } else { Pol::V };
    Mode::new(rail, pol)
}

/// Embed a logical two-ququart state at the analyzer input line: logical
/// `|mn⟩` becomes one photon in Alice's mode for `m` and one in Bob's mode
/// for `n`.
pub fn embed(state: &TwoQuquartState) -> PhotonicState {
    let mut out = PhotonicState::new(Sector::Indistinguishable);
    for m in 0..DIM {
        for n in 0..DIM {
            let amp = state.amplitude(m, n);
            if amp != Complex64::ZERO {
                out.add(alice_mode(m), bob_mode(n), amp);
            }
        }
    }
    out
}

/// The ordered (photon one = Alice, photon two = Bob) distinguishable-sector
/// counterpart of an input-line state. Pairs are keyed `(lo, hi)` with the
/// first mode treated as photon one, which at the input line is Alice's
/// because her rails sort first.
pub fn to_distinguishable(state: &PhotonicState) -> PhotonicState {
    let mut out = PhotonicState::new(Sector::Distinguishable);
    for ((a, b), amp) in state.pairs() {
        out.add(a.clone(), b.clone(), *amp);
    }
    out
}
