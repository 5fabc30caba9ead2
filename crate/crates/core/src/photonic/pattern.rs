//! Coincidence-pattern classes.
//!
//! An ideal run of all 16 Bell states through the analyzer groups them by
//! the support of their coincidence distributions. The shipped analyzer
//! yields exactly seven classes: six disjoint four-event classes resolved by
//! cross-detector coincidences, and one class of the eight same-detector
//! doubles that is observable only with photon-number-resolving detectors.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::mode::CoincidenceEvent;
use super::netlist::Netlist;
use super::propagate::{run_network, EventDistribution};
use super::state::embed;
use crate::bell::{bell_state, symbol_to_bell, BellLabel};
use crate::error::{Error, Result};

const SUPPORT_TOL: f64 = 1e-12;

/// The derived decoding table: event sets per class and the class of each
/// Bell state. Class ids are 1-based; the five alphabet states occupy
/// classes 1..=5 in symbol order and the same-detector class is last.
#[derive(Clone, Debug, PartialEq)]
pub struct PatternTable {
    classes: Vec<BTreeSet<CoincidenceEvent>>,
    class_of_state: BTreeMap<BellLabel, usize>,
    event_to_class: BTreeMap<CoincidenceEvent, usize>,
}

/// Result of classifying one coincidence event.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Class(usize),
    Inconclusive,
}

impl PatternTable {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn events_of_class(&self, class: usize) -> &BTreeSet<CoincidenceEvent> {
        &self.classes[class - 1]
    }

    pub fn class_of_state(&self, label: BellLabel) -> usize {
        self.class_of_state[&label]
    }

    pub fn members_of_class(&self, class: usize) -> Vec<BellLabel> {
        BellLabel::all()
            .filter(|l| self.class_of_state[l] == class)
            .collect()
    }

    /// The same-detector class id (always the last class).
    pub fn double_class(&self) -> usize {
        self.classes.len()
    }
}

/// Simulate all 16 Bell states at `λ = 1` and group them by coincidence
/// support. Errors if the structure is not the documented 7-class one.
pub fn pattern_table(netlist: &Netlist) -> Result<PatternTable> {
    let mut supports: Vec<(BellLabel, BTreeSet<CoincidenceEvent>)> = Vec::new();
    for label in BellLabel::all() {
        let dist = run_network(&embed(&bell_state(label)), netlist, 1.0)?;
        let support: BTreeSet<CoincidenceEvent> = dist.support(SUPPORT_TOL).into_iter().collect();
        check_uniform(label, &dist, &support)?;
        supports.push((label, support));
    }

    // group identical supports
    let mut groups: Vec<(BTreeSet<CoincidenceEvent>, Vec<BellLabel>)> = Vec::new();
    for (label, support) in supports {
        match groups.iter_mut().find(|(s, _)| *s == support) {
            Some((_, members)) => members.push(label),
            None => groups.push((support, alloc::vec![label])),
        }
    }
    if groups.len() != 7 {
        return Err(Error::NetlistValidation {
            detail: format!("expected 7 support classes, found {}", groups.len()),
        });
    }

    // canonical order: alphabet classes first, then remaining cross-detector
    // classes, doubles last
    let mut ordered: Vec<(BTreeSet<CoincidenceEvent>, Vec<BellLabel>)> = Vec::new();
    for symbol in 0..5u8 {
        let label = symbol_to_bell(symbol)?;
        let pos = groups
            .iter()
            .position(|(_, members)| members.contains(&label));
        let Some(pos) = pos else {
            return Err(Error::NetlistValidation {
                detail: format!("alphabet state {label} shares a class with another symbol"),
            });
        };
        ordered.push(groups.remove(pos));
    }
    groups.sort_by(|a, b| {
        let da = a.0.iter().all(|e| e.is_same_detector());
        let db = b.0.iter().all(|e| e.is_same_detector());
        da.cmp(&db).then_with(|| a.0.cmp(&b.0))
    });
    ordered.extend(groups);

    // structural checks: classes 1..=6 are disjoint 4-event sets, class 7 is
    // the eight doubles
    let mut seen: BTreeSet<CoincidenceEvent> = BTreeSet::new();
    for (k, (support, _)) in ordered.iter().enumerate().take(6) {
        if support.len() != 4 || support.iter().any(|e| e.is_same_detector()) {
            return Err(Error::NetlistValidation {
                detail: format!("class {} is not a 4-event cross-detector set", k + 1),
            });
        }
        for e in support {
            if !seen.insert(*e) {
                return Err(Error::NetlistValidation {
                    detail: format!("event {e} appears in two classes"),
                });
            }
        }
    }
    let doubles = &ordered[6].0;
    if doubles.len() != 8 || !doubles.iter().all(|e| e.is_same_detector()) {
        return Err(Error::NetlistValidation {
            detail: "last class is not the eight same-detector doubles".into(),
        });
    }

    let mut classes = Vec::new();
    let mut class_of_state = BTreeMap::new();
    let mut event_to_class = BTreeMap::new();
    for (k, (support, members)) in ordered.into_iter().enumerate() {
        for member in members {
            class_of_state.insert(member, k + 1);
        }
        for e in &support {
            event_to_class.insert(*e, k + 1);
        }
        classes.push(support);
    }
    Ok(PatternTable {
        classes,
        class_of_state,
        event_to_class,
    })
}

fn check_uniform(
    label: BellLabel,
    dist: &EventDistribution,
    support: &BTreeSet<CoincidenceEvent>,
) -> Result<()> {
    let expect = 1.0 / support.len() as f64;
    for e in support {
        if (dist.prob(*e) - expect).abs() > SUPPORT_TOL {
            return Err(Error::NetlistValidation {
                detail: format!(
                    "{label}: event {e} has probability {} (expected {expect})",
                    dist.prob(*e)
                ),
            });
        }
    }
    Ok(())
}

/// Look an event up in the table. Same-detector doubles are resolvable only
/// with photon-number-resolving detectors (`pnr`); events in no class are
/// inconclusive.
pub fn classify(event: CoincidenceEvent, table: &PatternTable, pnr: bool) -> Classification {
    if event.is_same_detector() && !pnr {
        return Classification::Inconclusive;
    }
    match table.event_to_class.get(&event) {
        Some(&class) => Classification::Class(class),
        None => Classification::Inconclusive,
    }
}
