//! Report structures and emitters.

use qudense_core::bell::ALPHABET;
use qudense_core::channel::{ChannelMatrix, N_OUTCOMES};
use qudense_core::info::ReferenceLimits;
use serde::Serialize;

use crate::config::{ConfigEcho, NoiseEcho};

pub const SYMBOL_NAMES: [&str; ALPHABET] = ["Psi11", "Psi12", "Psi13", "Psi14", "Psi23"];
pub const OUTCOME_NAMES: [&str; N_OUTCOMES] =
    ["Psi11", "Psi12", "Psi13", "Psi14", "Psi23", "Inconclusive"];

#[derive(Clone, Debug, Serialize)]
pub struct LimitsReport {
    pub qubit_sdc: f64,
    pub single_ququart: f64,
    pub five_state: f64,
}

impl From<ReferenceLimits> for LimitsReport {
    fn from(l: ReferenceLimits) -> Self {
        LimitsReport {
            qubit_sdc: l.qubit_sdc,
            single_ququart: l.single_ququart,
            five_state: l.five_state,
        }
    }
}

/// The capacity report: channel quality figures next to the three reference
/// limits, so comparisons stand on their own.
#[derive(Clone, Debug, Serialize)]
pub struct CapacityReport {
    pub limits: LimitsReport,
    pub mi_uniform: f64,
    pub capacity: f64,
    pub prior: [f64; ALPHABET],
    pub sigma: f64,
    pub policy: String,
    pub noise: NoiseEcho,
    pub channel: Vec<[f64; N_OUTCOMES]>,
    pub config: ConfigEcho,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransmitReport {
    pub fidelity: f64,
    pub expected_fidelity: f64,
    pub pixels_total: u64,
    pub pixels_wrong: u64,
    pub trials_total: u64,
    pub inconclusive_total: u64,
    pub expected_trials_per_pixel: f64,
    pub seed: u64,
    pub config: ConfigEcho,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub parameter: String,
    pub value: f64,
    pub mi_uniform: f64,
    pub capacity: f64,
}

pub fn channel_csv(channel: &ChannelMatrix) -> String {
    let mut out = String::from("input");
    for name in OUTCOME_NAMES {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (x, row) in channel.rows().iter().enumerate() {
        out.push_str(SYMBOL_NAMES[x]);
        for p in row {
            out.push_str(&format!(",{p:.10}"));
        }
        out.push('\n');
    }
    out
}

pub fn channel_text(channel: &ChannelMatrix) -> String {
    let mut out = String::from("        ");
    for name in OUTCOME_NAMES {
        out.push_str(&format!("{name:>13}"));
    }
    out.push('\n');
    for (x, row) in channel.rows().iter().enumerate() {
        out.push_str(&format!("{:>8}", SYMBOL_NAMES[x]));
        for p in row {
            out.push_str(&format!("{p:>13.6}"));
        }
        out.push('\n');
    }
    out
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("parameter,value,mi_uniform,capacity\n");
    for r in rows {
        out.push_str(&format!(
            "{},{:.6},{:.9},{:.9}\n",
            r.parameter, r.value, r.mi_uniform, r.capacity
        ));
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}
