//! Netlist-driven description of the analyzer.
//!
//! The wiring is data, not code: a line-oriented text format lists optical
//! elements grouped into named stages. Supported elements:
//!
//! ```text
//! STAGE <name>                      stage separator
//! HWP <rail> <angle_degrees>        half-wave plate on one rail
//! PBS <in1> <in2> <out1> <out2>     polarizing beam splitter (H transmits,
//!                                   V reflects, phase-free convention)
//! BD <in_rail>:<pol> -> <out_rail>  beam displacer routing one polarization
//! PHASE <rail> <pol> <radians>      phase retarder on one mode
//! ```
//!
//! `#` starts a comment. The input line is called `a`; each stage name labels
//! the line reached after that stage. After the final stage, rail `k` (in
//! sorted rail order) feeds detectors `D(2k−1)` (H) and `D(2k)` (V).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use num_complex::Complex64;

use super::mat::Mat;
use super::mode::{Detector, Mode, Pol, Rail};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum Element {
    Hwp {
        rail: Rail,
        angle_deg: f64,
    },
    Pbs {
        in1: Rail,
        in2: Rail,
        out1: Rail,
        out2: Rail,
    },
    Bd {
        input: Mode,
        out: Rail,
    },
    Phase {
        mode: Mode,
        radians: f64,
    },
}

impl Element {
    /// Modes this element consumes, in application order.
    fn sources(&self) -> Vec<Mode> {
        match self {
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
            Element::Pbs { in1, in2, .. } => alloc::vec![
                Mode {
                    rail: in1.clone(),
                    pol: Pol::H
                },
                Mode {
                    rail: in1.clone(),
                    pol: Pol::V
                },
                Mode {
                    rail: in2.clone(),
                    pol: Pol::H
                },
                Mode {
                    rail: in2.clone(),
                    pol: Pol::V
                },
            ],
            Element::Bd { input, .. } => alloc::vec![input.clone()],
            Element::Phase { mode, .. } => alloc::vec![mode.clone()],
        }
    }

    /// Modes this element produces, matching `sources` order where routing.
    fn targets(&self) -> Vec<Mode> {
        match self {
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
                let _ = (in1, in2);
                alloc::vec![
                    Mode {
                        rail: out1.clone(),
                        pol: Pol::H
                    },
                    Mode {
                        rail: out2.clone(),
                        pol: Pol::V
                    },
                    Mode {
                        rail: out2.clone(),
                        pol: Pol::H
                    },
                    Mode {
                        rail: out1.clone(),
                        pol: Pol::V
                    },
                ]
            }
            Element::Bd { input, out } => {
                alloc::vec![Mode {
                    rail: out.clone(),
                    pol: input.pol
                }]
            }
            Element::Phase { mode, .. } => alloc::vec![mode.clone()],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub name: String,
    pub elements: Vec<Element>,
}

impl Stage {
    /// Modes the stage produces that it did not first consume. A state fed
    /// into the stage must not already occupy these.
    pub fn fresh_targets(&self) -> BTreeSet<Mode> {
        let mut consumed_first: BTreeSet<Mode> = BTreeSet::new();
        let mut produced: BTreeSet<Mode> = BTreeSet::new();
        for el in &self.elements {
            for s in el.sources() {
                if !produced.contains(&s) {
                    consumed_first.insert(s);
                }
            }
            for t in el.targets() {
                produced.insert(t);
            }
        }
        produced.difference(&consumed_first).cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Netlist {
    stages: Vec<Stage>,
}

/// The analyzer wiring shipped with the crate (see `fig_a1.netlist` at the
/// repository root).
pub const BUNDLED_NETLIST: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fig_a1.netlist"));

impl Netlist {
    pub fn parse(text: &str) -> Result<Netlist> {
        let mut stages: Vec<Stage> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let err = |detail: String| Error::NetlistParse {
                line: lineno,
                detail,
            };
            match tokens[0] {
                "STAGE" => {
                    if tokens.len() != 2 {
                        return Err(err("expected: STAGE <name>".to_string()));
                    }
                    if tokens[1] == "a" {
                        return Err(err(
                            "stage name `a` is reserved for the input line".to_string()
                        ));
                    }
                    if stages.iter().any(|s| s.name == tokens[1]) {
                        return Err(err(format!("duplicate stage name `{}`", tokens[1])));
                    }
                    stages.push(Stage {
                        name: tokens[1].to_string(),
                        elements: Vec::new(),
                    });
                }
                kind @ ("HWP" | "PBS" | "BD" | "PHASE") => {
                    let stage = stages.last_mut().ok_or_else(|| Error::NetlistParse {
                        line: lineno,
                        detail: "element before any STAGE line".to_string(),
                    })?;
                    let element = match kind {
                        "HWP" => {
                            if tokens.len() != 3 {
                                return Err(
                                    err("expected: HWP <rail> <angle_degrees>".to_string()),
                                );
                            }
                            let angle_deg: f64 = tokens[2]
                                .parse()
                                .map_err(|_| err(format!("bad angle `{}`", tokens[2])))?;
                            Element::Hwp {
                                rail: Rail::new(tokens[1]),
                                angle_deg,
                            }
                        }
                        "PBS" => {
                            if tokens.len() != 5 {
                                return Err(err(
                                    "expected: PBS <in1> <in2> <out1> <out2>".to_string()
                                ));
                            }
                            Element::Pbs {
                                in1: Rail::new(tokens[1]),
                                in2: Rail::new(tokens[2]),
                                out1: Rail::new(tokens[3]),
                                out2: Rail::new(tokens[4]),
                            }
                        }
                        "BD" => {
                            if tokens.len() != 4 || tokens[2] != "->" {
                                return Err(err(
                                    "expected: BD <in_rail>:<pol> -> <out_rail>".to_string()
                                ));
                            }
                            let (rail, pol) = tokens[1]
                                .split_once(':')
                                .ok_or_else(|| err(format!("bad mode `{}`", tokens[1])))?;
                            let pol = Pol::parse(pol)
                                .ok_or_else(|| err(format!("bad polarization `{pol}`")))?;
                            Element::Bd {
                                input: Mode {
                                    rail: Rail::new(rail),
                                    pol,
                                },
                                out: Rail::new(tokens[3]),
                            }
                        }
                        "PHASE" => {
                            if tokens.len() != 4 {
                                return Err(err(
                                    "expected: PHASE <rail> <pol> <radians>".to_string()
                                ));
                            }
                            let pol = Pol::parse(tokens[2])
                                .ok_or_else(|| err(format!("bad polarization `{}`", tokens[2])))?;
                            let radians: f64 = tokens[3]
                                .parse()
                                .map_err(|_| err(format!("bad phase `{}`", tokens[3])))?;
                            Element::Phase {
                                mode: Mode {
                                    rail: Rail::new(tokens[1]),
                                    pol,
                                },
                                radians,
                            }
                        }
                        _ => unreachable!(),
                    };
                    stage.elements.push(element);
                }
                other => {
                    return Err(err(format!("unknown element `{other}`")));
                }
            }
        }
        if stages.is_empty() {
            return Err(Error::NetlistParse {
                line: 0,
                detail: "no stages defined".to_string(),
            });
        }
        Ok(Netlist { stages })
    }

    /// The validated default analyzer.
    pub fn bundled() -> Netlist {
        Netlist::parse(BUNDLED_NETLIST).expect("bundled netlist parses")
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// Line names in order: the input line `a`, then one per stage.
    pub fn line_names(&self) -> Vec<&str> {
        let mut names = alloc::vec!["a"];
        names.extend(self.stages.iter().map(|s| s.name.as_str()));
        names
    }

    /// All modes mentioned anywhere, plus `extra`, sorted and deduplicated.
    pub(crate) fn universe(&self, extra: &[Mode]) -> Vec<Mode> {
        let mut set: BTreeSet<Mode> = extra.iter().cloned().collect();
        for stage in &self.stages {
            for el in &stage.elements {
                set.extend(el.sources());
                set.extend(el.targets());
            }
        }
        set.into_iter().collect()
    }

    /// Modes consumed by some element before any element produces them;
    /// these are the network inputs.
    pub fn input_modes(&self) -> BTreeSet<Mode> {
        let mut produced: BTreeSet<Mode> = BTreeSet::new();
        let mut inputs: BTreeSet<Mode> = BTreeSet::new();
        for stage in &self.stages {
            for el in &stage.elements {
                for s in el.sources() {
                    if !produced.contains(&s) {
                        inputs.insert(s.clone());
                    }
                }
                for t in el.targets() {
                    produced.insert(t);
                }
            }
        }
        inputs
    }

    /// Rails whose modes feed the detectors. A rail counts when the final
    /// stage routes amplitude onto it, or when no routing element of the
    /// final stage touches it at all (so it passes straight through);
    /// beam-displacer dump ports are thereby excluded.
    pub fn detector_rails(&self) -> BTreeSet<Rail> {
        let mut alive = self.input_modes();
        for stage in &self.stages {
            for el in &stage.elements {
                match el {
                    Element::Hwp { rail, .. } => {
                        let h = Mode {
                            rail: rail.clone(),
                            pol: Pol::H,
                        };
                        let v = Mode {
                            rail: rail.clone(),
                            pol: Pol::V,
                        };
                        if alive.contains(&h) || alive.contains(&v) {
                            alive.insert(h);
                            alive.insert(v);
                        }
                    }
                    Element::Phase { .. } => {}
                    _ => {
                        for (s, t) in el.sources().into_iter().zip(el.targets()) {
                            if alive.remove(&s) {
                                alive.insert(t);
                            }
                        }
                    }
                }
            }
        }
        let last = self.stages.last().expect("netlist has at least one stage");
        let mut routed_sources: BTreeSet<Rail> = BTreeSet::new();
        let mut routed_targets: BTreeSet<Rail> = BTreeSet::new();
        for el in &last.elements {
            if matches!(el, Element::Pbs { .. } | Element::Bd { .. }) {
                routed_sources.extend(el.sources().into_iter().map(|m| m.rail));
                routed_targets.extend(el.targets().into_iter().map(|m| m.rail));
            }
        }
        alive
            .into_iter()
            .map(|m| m.rail)
            .filter(|r| routed_targets.contains(r) || !routed_sources.contains(r))
            .collect()
    }

    /// Detector assignment: final rails in sorted order feed detector pairs,
    /// H before V.
    pub fn detector_map(&self) -> BTreeMap<Mode, Detector> {
        let rails: BTreeSet<Rail> = self.detector_rails();
        let mut map = BTreeMap::new();
        for (k, rail) in rails.into_iter().enumerate() {
            let base = (2 * k + 1) as u8;
            map.insert(
                Mode {
                    rail: rail.clone(),
                    pol: Pol::H,
                },
                Detector(base),
            );
            map.insert(Mode { rail, pol: Pol::V }, Detector(base + 1));
        }
        map
    }
}

/// Compile one stage into a unitary over the given mode universe.
pub(crate) fn compile_stage(stage: &Stage, universe: &[Mode]) -> Result<Mat> {
    let index: BTreeMap<&Mode, usize> = universe.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let look = |m: &Mode| -> Result<usize> {
        index
            .get(m)
            .copied()
            .ok_or_else(|| Error::NetlistValidation {
                detail: format!("mode {m} missing from universe"),
            })
    };
    // two routing elements may not converge on one target mode
    let mut routed: BTreeSet<Mode> = BTreeSet::new();
    for el in &stage.elements {
        if matches!(el, Element::Pbs { .. } | Element::Bd { .. }) {
            for t in el.targets() {
                if !routed.insert(t.clone()) {
                    return Err(Error::NetlistValidation {
                        detail: format!("two elements route onto mode {t}"),
                    });
                }
            }
        }
    }
    let n = universe.len();
    let mut total = Mat::identity(n);
    for el in &stage.elements {
        let mut e = Mat::identity(n);
        match el {
            Element::Hwp { rail, angle_deg } => {
                let h = look(&Mode {
                    rail: rail.clone(),
                    pol: Pol::H,
                })?;
                let v = look(&Mode {
                    rail: rail.clone(),
                    pol: Pol::V,
                })?;
                let two_theta = 2.0 * angle_deg.to_radians();
                let c = Complex64::new(libm::cos(two_theta), 0.0);
                let s = Complex64::new(libm::sin(two_theta), 0.0);
                e[(h, h)] = c;
                e[(h, v)] = s;
                e[(v, h)] = s;
                e[(v, v)] = -c;
            }
            Element::Phase { mode, radians } => {
                let k = look(mode)?;
                e[(k, k)] = Complex64::from_polar(1.0, *radians);
            }
            Element::Pbs { .. } | Element::Bd { .. } => {
                routing_matrix(&mut e, el, &look)?;
            }
        }
        total = e.mul(&total);
    }
    Ok(total)
}

/// Fill a permutation matrix for a routing element, completed to a bijection
/// so the stage map stays unitary.
fn routing_matrix(e: &mut Mat, el: &Element, look: &impl Fn(&Mode) -> Result<usize>) -> Result<()> {
    let sources = el.sources();
    let targets = el.targets();
    let mut perm: BTreeMap<usize, usize> = BTreeMap::new();
    for (s, t) in sources.iter().zip(targets.iter()) {
        let si = look(s)?;
        let ti = look(t)?;
        if perm.insert(si, ti).is_some() {
            return Err(Error::NetlistValidation {
                detail: format!("mode {s} routed twice by one element"),
            });
        }
    }
    let imaged: BTreeSet<usize> = perm.values().copied().collect();
    if imaged.len() != perm.len() {
        return Err(Error::NetlistValidation {
            detail: "two inputs routed to the same output mode".to_string(),
        });
    }
    // complete: targets lacking images map back onto sources lacking pre-images
    let needs_image: Vec<usize> = imaged
        .iter()
        .copied()
        .filter(|t| !perm.contains_key(t))
        .collect();
    let needs_preimage: Vec<usize> = perm
        .keys()
        .copied()
        .filter(|s| !imaged.contains(s))
        .collect();
    for (t, s) in needs_image.into_iter().zip(needs_preimage) {
        perm.insert(t, s);
    }
    for (&src, &dst) in &perm {
        e[(src, src)] = Complex64::ZERO;
        e[(dst, dst)] = Complex64::ZERO;
    }
    for (&src, &dst) in &perm {
        e[(dst, src)] = Complex64::ONE;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_netlist_parses_with_three_stages() {
        let nl = Netlist::bundled();
        let names: Vec<&str> = nl.stages().iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["b", "c", "d"]);
        assert_eq!(nl.line_names(), ["a", "b", "c", "d"]);
    }

    #[test]
    fn bundled_inputs_contain_the_eight_a_modes() {
        let nl = Netlist::bundled();
        let inputs = nl.input_modes();
        for rail in ["a1", "a2", "a3", "a4"] {
            assert!(inputs.contains(&Mode::new(rail, Pol::H)));
            assert!(inputs.contains(&Mode::new(rail, Pol::V)));
        }
        // the remaining entries are empty wave-plate ports, never b/d modes
        for m in &inputs {
            assert!(!m.rail.name().starts_with('b') && !m.rail.name().starts_with('d'));
        }
    }

    #[test]
    fn bundled_detectors_cover_d1_to_d8() {
        let nl = Netlist::bundled();
        let map = nl.detector_map();
        assert_eq!(map.len(), 8);
        assert_eq!(map[&Mode::new("d1", Pol::H)], Detector(1));
        assert_eq!(map[&Mode::new("d1", Pol::V)], Detector(2));
        assert_eq!(map[&Mode::new("d4", Pol::H)], Detector(7));
        assert_eq!(map[&Mode::new("d4", Pol::V)], Detector(8));
    }

    #[test]
    fn stages_compile_to_unitaries() {
        let nl = Netlist::bundled();
        let universe = nl.universe(&[]);
        for stage in nl.stages() {
            let u = compile_stage(stage, &universe).unwrap();
            assert!(u.unitarity_defect() < 1e-12, "stage {}", stage.name);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "STAGE b\nHWP b1 not_a_number\n";
        match Netlist::parse(bad) {
            Err(Error::NetlistParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Netlist::parse("HWP b1 22.5\n").is_err());
        assert!(Netlist::parse("# only comments\n").is_err());
    }

    #[test]
    fn conflicting_routes_are_rejected() {
        let nl = Netlist::parse("STAGE s\nBD x:H -> z\nBD y:H -> z\n").unwrap();
        let universe = nl.universe(&[]);
        let err = compile_stage(&nl.stages()[0], &universe);
        assert!(matches!(err, Err(Error::NetlistValidation { .. })));
    }

    #[test]
    fn phase_element_retards_one_mode() {
        let nl = Netlist::parse("STAGE s\nPHASE x V 3.141592653589793\n").unwrap();
        let universe = alloc::vec![Mode::new("x", Pol::H), Mode::new("x", Pol::V)];
        let u = compile_stage(&nl.stages()[0], &universe).unwrap();
        assert!(u.unitarity_defect() < 1e-12);
        assert!((u[(0, 0)] - num_complex::Complex64::ONE).norm() < 1e-12);
        assert!((u[(1, 1)] + num_complex::Complex64::ONE).norm() < 1e-12);
    }
}
