//! Second-quantized two-photon propagation through the analyzer netlist.

mod mat;
mod mode;
mod netlist;
mod pattern;
mod propagate;
pub mod reference;
mod state;
mod validate;

pub use mode::{CoincidenceEvent, Detector, Mode, Pol, Rail};
pub use netlist::{Element, Netlist, Stage, BUNDLED_NETLIST};
pub use pattern::{classify, pattern_table, Classification, PatternTable};
pub use propagate::apply_stage;
pub use propagate::{
    hom_visibility, run_network, sector_distribution, trace_at_line, EventDistribution,
};
pub use state::{alice_mode, bob_mode, embed, PhotonicState, Sector};
pub use validate::{validate_netlist, CheckResult, Deviation, ValidationReport};
