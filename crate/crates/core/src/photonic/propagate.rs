//! Two-photon propagation through the analyzer.
//!
//! `run_network` models partial photon indistinguishability as a two-point
//! mixture: with weight `λ` the symmetrized pair interferes fully, with
//! weight `1 − λ` the photons are fully distinguishable and only exchange
//! interference is lost (each photon still interferes with itself, and the
//! pair's path entanglement stays coherent). The simulated two-photon
//! visibility then equals `λ` exactly.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::mat::Mat;
use super::mode::{CoincidenceEvent, Mode, Pol};
use super::netlist::{compile_stage, Netlist, Stage};
use super::state::{to_distinguishable, PhotonicState, Sector};
use crate::error::{Error, Result};

const PRUNE_TOL: f64 = 1e-14;

/// A probability distribution over coincidence events.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct EventDistribution {
    probs: BTreeMap<CoincidenceEvent, f64>,
}

impl EventDistribution {
    pub fn prob(&self, event: CoincidenceEvent) -> f64 {
        self.probs.get(&event).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CoincidenceEvent, &f64)> {
        self.probs.iter()
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Events with probability above `tol`.
    pub fn support(&self, tol: f64) -> Vec<CoincidenceEvent> {
        self.probs
            .iter()
            .filter(|(_, &p)| p > tol)
            .map(|(e, _)| *e)
            .collect()
    }

    pub fn insert(&mut self, event: CoincidenceEvent, p: f64) {
        if p != 0.0 {
            *self.probs.entry(event).or_insert(0.0) += p;
        }
    }

    /// Convex mixture `w·self + (1−w)·other`.
    pub fn mix(&self, other: &EventDistribution, w: f64) -> EventDistribution {
        let mut out = EventDistribution::default();
        for (e, p) in &self.probs {
            out.insert(*e, w * p);
        }
        for (e, p) in &other.probs {
            out.insert(*e, (1.0 - w) * p);
        }
        out.probs.retain(|_, p| *p > 0.0);
        out
    }

    /// Cumulative table for categorical sampling.
    pub fn cdf(&self) -> Vec<(CoincidenceEvent, f64)> {
        let mut acc = 0.0;
        self.probs
            .iter()
            .map(|(e, p)| {
                acc += p;
                (*e, acc)
            })
            .collect()
    }
}

fn check_rails(state: &PhotonicState, stage: &Stage) -> Result<()> {
    let fresh = stage.fresh_targets();
    for mode in state.modes() {
        if fresh.contains(&mode) {
            return Err(Error::RailMismatch {
                detail: format!(
                    "state occupies {mode}, which stage `{}` produces",
                    stage.name
                ),
            });
        }
    }
    Ok(())
}

/// Send a state through one stage. The state's rails must be inputs of the
/// stage (or untouched by it), never its outputs.
pub fn apply_stage(state: &PhotonicState, stage: &Stage) -> Result<PhotonicState> {
    check_rails(state, stage)?;
    let mut universe: alloc::collections::BTreeSet<Mode> = state.modes().into_iter().collect();
    for el in &stage.elements {
        for m in el_modes(el) {
            universe.insert(m);
        }
    }
    let universe: Vec<Mode> = universe.into_iter().collect();
    let u = compile_stage(stage, &universe)?;
    let t = state.to_matrix(&universe);
    let t = u.sandwich(&t);
    let mut out = PhotonicState::from_matrix(&t, &universe, state.sector, PRUNE_TOL);
    out.prune(PRUNE_TOL);
    Ok(out)
}

fn el_modes(el: &super::netlist::Element) -> Vec<Mode> {
    use super::netlist::Element;
    match el {
        Element::Hwp { rail, .. } => alloc::vec![
            Mode {
                rail: rail.clone(),
                pol: Pol::H
            },
            Mode {
                rail: rail.clone(),
                pol: Pol::V
            },
        ],
        Element::Pbs {
            in1,
            in2,
            out1,
            out2,
        } => {
            let mut v = Vec::new();
            for r in [in1, in2, out1, out2] {
                v.push(Mode {
                    rail: r.clone(),
                    pol: Pol::H,
                });
                v.push(Mode {
                    rail: r.clone(),
                    pol: Pol::V,
                });
            }
            v
        }
        Element::Bd { input, out } => alloc::vec![
            input.clone(),
            Mode {
                rail: out.clone(),
                pol: input.pol
            },
        ],
        Element::Phase { mode, .. } => alloc::vec![mode.clone()],
    }
}

/// The state after composing stages up to (and including) the named line.
/// Line `a` is the input itself.
pub fn trace_at_line(
    state: &PhotonicState,
    netlist: &Netlist,
    line: &str,
) -> Result<PhotonicState> {
    if line == "a" && netlist.stage("a").is_none() {
        return Ok(state.clone());
    }
    let mut current = state.clone();
    let mut found = false;
    for stage in netlist.stages() {
        current = apply_stage(&current, stage)?;
        if stage.name == line {
            found = true;
            break;
        }
    }
    if !found {
        return Err(Error::InvalidParameter {
            name: "line",
            detail: format!("netlist has no line `{line}`"),
        });
    }
    Ok(current)
}

fn propagate_matrix(netlist: &Netlist, universe: &[Mode], t0: Mat) -> Result<Mat> {
    let mut t = t0;
    for stage in netlist.stages() {
        let u = compile_stage(stage, universe)?;
        t = u.sandwich(&t);
    }
    Ok(t)
}

fn read_out(
    t: &Mat,
    universe: &[Mode],
    detectors: &BTreeMap<Mode, super::mode::Detector>,
    sector: Sector,
) -> Result<EventDistribution> {
    let mut dist = EventDistribution::default();
    let mut stray = 0.0f64;
    let det_of = |k: usize| detectors.get(&universe[k]).copied();
    for i in 0..universe.len() {
        for j in 0..universe.len() {
            let amp = t[(i, j)];
            if amp.norm_sqr() < 1e-28 {
                continue;
            }
            let (Some(da), Some(db)) = (det_of(i), det_of(j)) else {
                stray += amp.norm_sqr();
                continue;
            };
            let event = CoincidenceEvent::new(da, db);
            match sector {
                Sector::Indistinguishable => {
                    // symmetric T: count each unordered pair once, halve doubles
                    if i < j {
                        dist.insert(event, amp.norm_sqr());
                    } else if i == j {
                        dist.insert(event, 0.5 * amp.norm_sqr());
                    }
                }
                Sector::Distinguishable => {
                    dist.insert(event, amp.norm_sqr());
                }
            }
        }
    }
    if stray > 1e-9 {
        return Err(Error::NetlistValidation {
            detail: format!("amplitude {stray:.3e} stranded on non-detector modes"),
        });
    }
    Ok(dist)
}

/// Propagate one sector of an input-line state all the way to the detectors.
/// The input must be the unordered (indistinguishable-keyed) embedding; the
/// distinguishable propagation is derived from it by ordering each pair.
pub fn sector_distribution(
    input: &PhotonicState,
    netlist: &Netlist,
    sector: Sector,
) -> Result<EventDistribution> {
    if input.sector != Sector::Indistinguishable {
        return Err(Error::InvalidParameter {
            name: "input",
            detail: "pass the unordered input-line state; sectors are derived from it".into(),
        });
    }
    let universe = netlist.universe(&input.modes());
    let detectors = netlist.detector_map();
    let t0 = match sector {
        Sector::Indistinguishable => input.to_matrix(&universe),
        Sector::Distinguishable => to_distinguishable(input).to_matrix(&universe),
    };
    let t = propagate_matrix(netlist, &universe, t0)?;
    read_out(&t, &universe, &detectors, sector)
}

/// Coincidence distribution of an input-line state under partial
/// indistinguishability `lambda`.
pub fn run_network(
    input: &PhotonicState,
    netlist: &Netlist,
    lambda: f64,
) -> Result<EventDistribution> {
    if !(0.0..=1.0).contains(&lambda) || !lambda.is_finite() {
        return Err(Error::InvalidParameter {
            name: "lambda",
            detail: format!("{lambda} outside [0, 1]"),
        });
    }
    let ind = sector_distribution(input, netlist, Sector::Indistinguishable)?;
    if lambda == 1.0 {
        return Ok(ind);
    }
    let dist = sector_distribution(input, netlist, Sector::Distinguishable)?;
    Ok(ind.mix(&dist, lambda))
}

/// Two-photon interference visibility the propagator exhibits at a given
/// `lambda`, measured on a two-mode bench: photons enter one rail in H and
/// V, a 22.5° plate mixes them, and the cross-polarized coincidence is
/// compared against the fully distinguishable baseline.
pub fn hom_visibility(lambda: f64) -> Result<f64> {
    let netlist = Netlist::parse("STAGE out\nHWP x 22.5\n")?;
    let mut input = PhotonicState::new(Sector::Indistinguishable);
    input.add(
        Mode::new("x", Pol::H),
        Mode::new("x", Pol::V),
        Complex64::ONE,
    );
    let coincidence = CoincidenceEvent::of(1, 2);
    let at = |l: f64| -> Result<f64> { Ok(run_network(&input, &netlist, l)?.prob(coincidence)) };
    let baseline = at(0.0)?;
    Ok(1.0 - at(lambda)? / baseline)
}
