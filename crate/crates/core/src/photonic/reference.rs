//! Reference tabulation the shipped analyzer is validated against.
//!
//! For seven representative Bell states the tabulation lists the two-photon
//! state at each line of the analyzer, and for all 16 states it lists the
//! seven decoding classes with their coincidence evidence. A handful of
//! entries are internally inconsistent (they contradict the tabulation's own
//! final coincidence listings, or no linear network can produce them
//! together with the other lines); those entries carry a corrected form and
//! a note, and the validator must detect and report each one.

use super::mode::Pol;

/// Uniform coefficient magnitude of a reference state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Half,
    InvSqrt8,
}

impl Scale {
    pub fn value(&self) -> f64 {
        match self {
            Scale::Half => 0.5,
            Scale::InvSqrt8 => 1.0 / libm::sqrt(8.0),
        }
    }
}

/// One product term `sign · |a b⟩` (repeated modes denote a double).
#[derive(Clone, Copy, Debug)]
pub struct RefTerm {
    pub sign: i8,
    pub a: (&'static str, Pol),
    pub b: (&'static str, Pol),
}

const fn t(sign: i8, ar: &'static str, ap: Pol, br: &'static str, bp: Pol) -> RefTerm {
    RefTerm {
        sign,
        a: (ar, ap),
        b: (br, bp),
    }
}

/// A tabulated intermediate state.
pub struct RefLine {
    pub label: (u8, u8),
    pub line: &'static str,
    pub printed_scale: Scale,
    pub printed: &'static [RefTerm],
    /// Present when the printed entry is inconsistent; the form propagation
    /// must actually produce.
    pub corrected: Option<(Scale, &'static [RefTerm])>,
    pub note: &'static str,
}

use Pol::{H, V};
use Scale::{Half, InvSqrt8};

pub const REFERENCE_TRACES: &[RefLine] = &[
    // ---- Psi11 ----
    RefLine {
        label: (1, 1),
        line: "a",
        printed_scale: Half,
        printed: &[
            t(1, "a1", H, "a3", H),
            t(1, "a1", V, "a3", V),
            t(1, "a2", H, "a4", H),
            t(1, "a2", V, "a4", V),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (1, 1),
        line: "b",
        printed_scale: Half,
        printed: &[
            t(1, "b1", H, "b3", H),
            t(1, "b1", V, "b3", V),
            t(1, "b2", H, "b4", H),
            t(1, "b2", V, "b4", V),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (1, 1),
        line: "c",
        printed_scale: Half,
        printed: &[
            t(1, "c1", H, "c5", H),
            t(1, "c2", V, "c6", V),
            t(1, "c4", H, "c7", H),
            t(1, "c3", V, "c8", H),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "c1", H, "c5", H),
                t(1, "c2", V, "c6", V),
                t(1, "c4", H, "c7", H),
                t(1, "c3", V, "c8", V),
            ],
        )),
        note: "last term listed as H on c8; the displacers preserve polarization, so it is V",
    },
    RefLine {
        label: (1, 1),
        line: "d",
        printed_scale: Half,
        printed: &[
            t(1, "d1", H, "d3", H),
            t(1, "d1", V, "d3", V),
            t(1, "d2", H, "d4", H),
            t(1, "d2", V, "d4", H),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "d1", H, "d3", H),
                t(1, "d1", V, "d3", V),
                t(1, "d2", H, "d4", H),
                t(1, "d2", V, "d4", V),
            ],
        )),
        note: "last term listed as V_d2 H_d4, inconsistent with the listed (D8,D4) coincidence; \
               it must be V_d2 V_d4",
    },
    // ---- Psi12 ----
    RefLine {
        label: (1, 2),
        line: "a",
        printed_scale: Half,
        printed: &[
            t(1, "a1", H, "a3", H),
            t(-1, "a1", V, "a3", V),
            t(1, "a2", H, "a4", H),
            t(-1, "a2", V, "a4", V),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (1, 2),
        line: "b",
        printed_scale: Half,
        printed: &[
            t(1, "b1", H, "b3", V),
            t(1, "b1", V, "b3", H),
            t(1, "b2", H, "b4", V),
            t(1, "b2", V, "b4", H),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (1, 2),
        line: "c",
        printed_scale: Half,
        printed: &[
            t(1, "c1", H, "c7", H),
            t(1, "c2", V, "c8", V),
            t(1, "c4", H, "c5", H),
            t(1, "c3", V, "c6", V),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "c1", H, "c6", V),
                t(1, "c2", V, "c5", H),
                t(1, "c4", H, "c8", V),
                t(1, "c3", V, "c7", H),
            ],
        )),
        note: "printed entry is the line-c state of the class partner Psi31, not of Psi12",
    },
    RefLine {
        label: (1, 2),
        line: "d",
        printed_scale: Half,
        printed: &[
            t(1, "d1", H, "d4", H),
            t(1, "d1", V, "d4", V),
            t(1, "d2", H, "d3", H),
            t(1, "d2", V, "d3", V),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "d1", H, "d4", H),
                t(-1, "d1", V, "d4", V),
                t(1, "d2", H, "d3", H),
                t(-1, "d2", V, "d3", V),
            ],
        )),
        note: "two interferometer output signs dropped; the coincidence support is unchanged",
    },
    // ---- Psi13 ----
    RefLine {
        label: (1, 3),
        line: "a",
        printed_scale: Half,
        printed: &[
            t(1, "a1", H, "a3", H),
            t(1, "a1", V, "a3", V),
            t(-1, "a2", H, "a4", H),
            t(-1, "a2", V, "a4", V),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (1, 3),
        line: "b",
        printed_scale: Half,
        printed: &[
            t(1, "b1", H, "b3", H),
            t(1, "b1", V, "b3", V),
            t(-1, "b2", H, "b4", H),
            t(-1, "b2", V, "b4", V),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (1, 3),
        line: "c",
        printed_scale: Half,
        printed: &[
            t(1, "c1", H, "c5", H),
            t(-1, "c2", V, "c6", V),
            t(1, "c4", H, "c7", H),
            t(-1, "c3", V, "c8", V),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "c1", H, "c5", H),
                t(1, "c2", V, "c6", V),
                t(-1, "c4", H, "c7", H),
                t(-1, "c3", V, "c8", V),
            ],
        )),
        note: "printed signs alternate per term; the displacers only relabel rails, so the \
               line-b sign pattern (+ + − −) must survive unchanged",
    },
    RefLine {
        label: (1, 3),
        line: "d",
        printed_scale: Half,
        printed: &[
            t(1, "d1", H, "d3", H),
            t(-1, "d1", V, "d3", V),
            t(1, "d2", H, "d4", H),
            t(-1, "d2", V, "d4", V),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "d1", H, "d3", V),
                t(1, "d1", V, "d3", H),
                t(-1, "d2", H, "d4", V),
                t(-1, "d2", V, "d4", H),
            ],
        )),
        note: "printed entry has the same support as the Psi11 trace, contradicting its own \
               final listing; the interferometers map the sign difference to crossed outputs",
    },
    // ---- Psi14 ----
    RefLine {
        label: (1, 4),
        line: "a",
        printed_scale: Half,
        printed: &[
            t(1, "a1", H, "a3", H),
            t(-1, "a1", V, "a3", V),
            t(-1, "a2", H, "a4", H),
            t(1, "a2", V, "a4", V),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (1, 4),
        line: "b",
        printed_scale: Half,
        printed: &[
            t(1, "b1", H, "b3", V),
            t(1, "b1", V, "b3", H),
            t(-1, "b2", H, "b4", V),
            t(-1, "b2", V, "b4", H),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (1, 4),
        line: "c",
        printed_scale: Half,
        printed: &[
            t(1, "c1", H, "c7", H),
            t(1, "c2", V, "c8", V),
            t(-1, "c4", H, "c5", H),
            t(-1, "c3", V, "c6", V),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "c1", H, "c6", V),
                t(1, "c2", V, "c5", H),
                t(-1, "c4", H, "c8", V),
                t(-1, "c3", V, "c7", H),
            ],
        )),
        note: "printed entry is the line-c state of the class partner Psi34, not of Psi14",
    },
    RefLine {
        label: (1, 4),
        line: "d",
        printed_scale: Half,
        printed: &[
            t(1, "d1", H, "d4", H),
            t(-1, "d1", V, "d4", V),
            t(1, "d2", H, "d3", H),
            t(-1, "d2", V, "d3", V),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "d1", V, "d4", H),
                t(-1, "d1", H, "d4", V),
                t(1, "d2", H, "d3", V),
                t(-1, "d2", V, "d3", H),
            ],
        )),
        note: "printed polarizations disagree with the listed (D1,D8)/(D2,D7)/(D4,D5)/(D3,D6) \
               coincidences",
    },
    // ---- Psi23 ----
    RefLine {
        label: (2, 3),
        line: "a",
        printed_scale: Half,
        printed: &[
            t(1, "a1", H, "a3", V),
            t(1, "a1", V, "a3", H),
            t(-1, "a2", H, "a4", V),
            t(-1, "a2", V, "a4", H),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (2, 3),
        line: "b",
        printed_scale: InvSqrt8,
        printed: &[
            t(1, "b1", H, "b1", H),
            t(-1, "b1", V, "b1", V),
            t(-1, "b2", H, "b2", H),
            t(1, "b2", V, "b2", V),
            t(1, "b3", H, "b3", H),
            t(-1, "b3", V, "b3", V),
            t(-1, "b4", H, "b4", H),
            t(1, "b4", V, "b4", V),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (2, 3),
        line: "c",
        printed_scale: InvSqrt8,
        printed: &[
            t(1, "c1", H, "c1", H),
            t(-1, "c2", V, "c2", V),
            t(-1, "c4", H, "c4", H),
            t(1, "c3", V, "c3", V),
            t(1, "c5", H, "c5", H),
            t(-1, "c6", V, "c6", V),
            t(-1, "c7", H, "c7", H),
            t(1, "c8", V, "c8", V),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (2, 3),
        line: "d",
        printed_scale: Half,
        printed: &[
            t(1, "d1", H, "d1", V),
            t(-1, "d2", H, "d2", V),
            t(1, "d3", H, "d3", V),
            t(-1, "d4", H, "d4", V),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "d1", H, "d1", V),
                t(1, "d2", H, "d2", V),
                t(1, "d3", H, "d3", V),
                t(1, "d4", H, "d4", V),
            ],
        )),
        note: "two signs dropped; the coincidence support is unchanged",
    },
    // ---- Psi43 ----
    RefLine {
        label: (4, 3),
        line: "a",
        printed_scale: Half,
        printed: &[
            t(1, "a1", H, "a4", V),
            t(-1, "a2", H, "a3", V),
            t(1, "a4", H, "a1", V),
            t(-1, "a2", V, "a3", H),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (4, 3),
        line: "b",
        printed_scale: InvSqrt8,
        printed: &[
            t(1, "b2", H, "b1", V),
            t(-1, "b1", H, "b2", V),
            t(1, "b3", H, "b4", H),
            t(-1, "b4", H, "b3", V),
        ],
        corrected: Some((
            Half,
            &[
                t(1, "b2", H, "b1", V),
                t(-1, "b1", H, "b2", V),
                t(1, "b3", H, "b4", V),
                t(-1, "b4", H, "b3", V),
            ],
        )),
        note: "third term listed as H_b3 H_b4 and the prefactor as 1/sqrt(8); four distinct \
               single-occupancy terms carry 1/2, and the term must be H_b3 V_b4",
    },
    RefLine {
        label: (4, 3),
        line: "c",
        printed_scale: Half,
        printed: &[
            t(1, "c2", V, "c4", H),
            t(-1, "c1", H, "c3", V),
            t(1, "c5", H, "c8", V),
            t(-1, "c6", V, "c7", H),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (4, 3),
        line: "d",
        printed_scale: Half,
        printed: &[
            t(1, "d1", V, "d2", H),
            t(-1, "d1", H, "d2", V),
            t(1, "d3", H, "d4", V),
            t(-1, "d4", H, "d3", V),
        ],
        corrected: Some((
            Half,
            &[
                t(-1, "d1", H, "d2", V),
                t(-1, "d1", V, "d2", H),
                t(1, "d3", H, "d4", V),
                t(1, "d3", V, "d4", H),
            ],
        )),
        note: "two signs deviate; the coincidence support is unchanged",
    },
    // ---- Psi21 ----
    RefLine {
        label: (2, 1),
        line: "a",
        printed_scale: Half,
        printed: &[
            t(1, "a1", H, "a3", V),
            t(1, "a1", V, "a3", H),
            t(1, "a2", H, "a4", V),
            t(1, "a2", V, "a4", H),
        ],
        corrected: None,
        note: "",
    },
    RefLine {
        label: (2, 1),
        line: "b",
        printed_scale: InvSqrt8,
        printed: &[
            t(1, "b1", H, "b1", H),
            t(-1, "b1", V, "b1", V),
            t(1, "b2", H, "b2", H),
            t(-1, "b2", V, "b3", V),
            t(1, "b3", H, "b3", H),
            t(-1, "b3", V, "b3", V),
            t(1, "b4", H, "b4", H),
            t(-1, "b4", V, "b3", V),
        ],
        corrected: Some((
            InvSqrt8,
            &[
                t(1, "b1", H, "b1", H),
                t(-1, "b1", V, "b1", V),
                t(1, "b2", H, "b2", H),
                t(-1, "b2", V, "b2", V),
                t(1, "b3", H, "b3", H),
                t(-1, "b3", V, "b3", V),
                t(1, "b4", H, "b4", H),
                t(-1, "b4", V, "b4", V),
            ],
        )),
        note: "two rail subscripts misprinted (V_b2 V_b3 and V_b4 V_b3); every term is a \
               same-rail double",
    },
    RefLine {
        label: (2, 1),
        line: "c",
        printed_scale: InvSqrt8,
        printed: &[
            t(1, "c1", H, "c1", H),
            t(1, "c2", V, "c2", V),
            t(-1, "c4", H, "c4", H),
            t(-1, "c3", V, "c2", V),
            t(1, "c5", H, "c5", H),
            t(1, "c6", V, "c6", V),
            t(-1, "c7", H, "c7", H),
            t(-1, "c8", V, "c8", V),
        ],
        corrected: Some((
            InvSqrt8,
            &[
                t(1, "c1", H, "c1", H),
                t(-1, "c2", V, "c2", V),
                t(1, "c4", H, "c4", H),
                t(-1, "c3", V, "c3", V),
                t(1, "c5", H, "c5", H),
                t(-1, "c6", V, "c6", V),
                t(1, "c7", H, "c7", H),
                t(-1, "c8", V, "c8", V),
            ],
        )),
        note: "printed signs contradict the Psi23 trace under any fixed rail relabeling \
               (same outputs from opposite inputs); the line-b signs survive per mode",
    },
    RefLine {
        label: (2, 1),
        line: "d",
        printed_scale: InvSqrt8,
        printed: &[
            t(1, "d1", V, "d1", V),
            t(1, "d1", H, "d1", H),
            t(-1, "d2", V, "d2", V),
            t(-1, "d2", H, "d2", H),
            t(1, "d3", V, "d3", V),
            t(1, "d3", H, "d3", H),
            t(-1, "d4", V, "d4", V),
            t(-1, "d4", H, "d4", H),
        ],
        corrected: None,
        note: "",
    },
];

/// A tabulated decoding class.
pub struct RefClass {
    pub id: usize,
    pub printed_members: &'static [(u8, u8)],
    pub corrected_members: Option<&'static [(u8, u8)]>,
    pub printed_events: &'static [(u8, u8)],
    pub corrected_events: Option<&'static [(u8, u8)]>,
    pub note: &'static str,
}

pub const REFERENCE_CLASSES: &[RefClass] = &[
    RefClass {
        id: 1,
        printed_members: &[(1, 1), (3, 1)],
        corrected_members: None,
        printed_events: &[(1, 5), (2, 6), (3, 7), (8, 4)],
        corrected_events: None,
        note: "",
    },
    RefClass {
        id: 2,
        printed_members: &[(1, 2), (3, 2)],
        corrected_members: None,
        printed_events: &[(1, 7), (2, 8), (5, 3), (6, 4)],
        corrected_events: None,
        note: "",
    },
    RefClass {
        id: 3,
        printed_members: &[(1, 3), (3, 3)],
        corrected_members: Some(&[(1, 3), (3, 4)]),
        printed_events: &[(1, 6), (2, 5), (8, 4), (3, 7)],
        corrected_events: Some(&[(1, 6), (2, 5), (3, 8), (4, 7)]),
        note: "printed evidence repeats the class-1 events (D8,D4) and (D3,D7), which would \
               make Psi11 and Psi13 indistinguishable; propagation gives (D3,D8) and (D4,D7). \
               The listed partner Psi33 actually propagates onto the class-4 evidence (no \
               relabeling compatible with the traced lines avoids this), so the partner here \
               is Psi34",
    },
    RefClass {
        id: 4,
        printed_members: &[(1, 4), (3, 4)],
        corrected_members: Some(&[(1, 4), (3, 3)]),
        printed_events: &[(1, 8), (2, 7), (4, 5), (3, 6)],
        corrected_events: None,
        note: "Psi33, not Psi34, propagates onto this evidence; see the class-3 note",
    },
    RefClass {
        id: 5,
        printed_members: &[(2, 3), (2, 4)],
        corrected_members: None,
        printed_events: &[(1, 2), (3, 4), (5, 6), (7, 8)],
        corrected_events: None,
        note: "",
    },
    RefClass {
        id: 6,
        printed_members: &[(4, 3), (4, 4)],
        corrected_members: None,
        printed_events: &[(2, 3), (1, 4), (5, 8), (6, 7)],
        corrected_events: None,
        note: "",
    },
    RefClass {
        id: 7,
        printed_members: &[(2, 3), (2, 4), (4, 1), (4, 2)],
        corrected_members: Some(&[(2, 1), (2, 2), (4, 1), (4, 2)]),
        printed_events: &[
            (1, 1),
            (2, 2),
            (3, 3),
            (4, 4),
            (5, 5),
            (6, 6),
            (7, 7),
            (8, 8),
        ],
        corrected_events: None,
        note: "printed membership repeats the class-5 states Psi23 and Psi24; the bunched \
               traces belong to Psi21, Psi22, Psi41, Psi42",
    },
];

/// Build the photonic state a reference form describes.
pub fn build_state(scale: Scale, terms: &[RefTerm]) -> super::state::PhotonicState {
    use super::mode::Mode;
    use super::state::{PhotonicState, Sector};
    use num_complex::Complex64;
    let mut out = PhotonicState::new(Sector::Indistinguishable);
    let magnitude = scale.value();
    for term in terms {
        let amp = Complex64::new(term.sign as f64 * magnitude, 0.0);
        out.add(
            Mode::new(term.a.0, term.a.1),
            Mode::new(term.b.0, term.b.1),
            amp,
        );
    }
    out
}
