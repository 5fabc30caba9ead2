//! Run configuration: defaults, config-file values, command-line overrides.
//!
//! Values resolve in that order; the effective configuration is echoed into
//! every report. The config file is `key = value` text with `#` comments:
//!
//! ```text
//! lambda = 0.962
//! target_fidelity = 0.980
//! pair_efficiency = 0.109
//! policy = retry
//! palette.red = 255,0,0
//! ```
//!
//! `--config` names the file explicitly; otherwise the `QUDENSE_CONFIG`
//! environment variable is consulted.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use qudense_core::bell::ALPHABET;
use qudense_core::channel::{InconclusivePolicy, NoiseModel};
use qudense_core::image::Palette;
use qudense_core::photonic::Netlist;
use serde::Serialize;

use crate::{CliError, CliResult};

pub const CONFIG_ENV: &str = "QUDENSE_CONFIG";

/// Default number of pairs per symbol for counting statistics: 1000/s for
/// 20 s per input state.
pub const DEFAULT_COUNTS_PER_SYMBOL: u64 = 20_000;

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub netlist: Option<PathBuf>,
    pub lambda: Option<f64>,
    pub prep_mixing: Option<f64>,
    pub target_fidelity: Option<f64>,
    pub phase_jitter: Option<f64>,
    pub pair_efficiency: Option<f64>,
    pub seed: Option<u64>,
    pub shots: Option<u64>,
    pub threads: Option<usize>,
    pub policy: Option<InconclusivePolicy>,
    pub pnr: Option<bool>,
    pub counts_per_symbol: Option<u64>,
    pub resamples: Option<usize>,
    pub lenient: Option<bool>,
    pub palette: BTreeMap<String, [u8; 3]>,
}

impl Overrides {
    /// Later values win field by field.
    pub fn merged_over(mut self, base: Overrides) -> Overrides {
        macro_rules! take {
            ($($f:ident),*) => { $( if self.$f.is_none() { self.$f = base.$f; } )* };
        }
        take!(
            netlist,
            lambda,
            prep_mixing,
            target_fidelity,
            phase_jitter,
            pair_efficiency,
            seed,
            shots,
            threads,
            policy,
            pnr,
            counts_per_symbol,
            resamples,
            lenient
        );
        for (k, v) in base.palette {
            self.palette.entry(k).or_insert(v);
        }
        self
    }
}

pub fn parse_policy(s: &str) -> CliResult<InconclusivePolicy> {
    match s {
        "separate" => Ok(InconclusivePolicy::SeparateOutcome),
        "retry" => Ok(InconclusivePolicy::RetryUntilConclusive),
        "uniform-guess" => Ok(InconclusivePolicy::UniformGuess),
        other => Err(CliError::Usage(format!(
            "unknown policy `{other}` (expected separate | retry | uniform-guess)"
        ))),
    }
}

pub fn policy_name(policy: InconclusivePolicy) -> &'static str {
    match policy {
        InconclusivePolicy::SeparateOutcome => "separate",
        InconclusivePolicy::RetryUntilConclusive => "retry",
        InconclusivePolicy::UniformGuess => "uniform-guess",
    }
}

/// Parse a config file into an override set.
pub fn parse_config_file(path: &Path) -> CliResult<Overrides> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = Overrides::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key = value", lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |what: &str| {
            CliError::Usage(format!("config line {}: bad {what} `{value}`", lineno + 1))
        };
        match key {
            "netlist" => out.netlist = Some(PathBuf::from(value)),
            "lambda" => out.lambda = Some(value.parse().map_err(|_| bad("number"))?),
            "prep_mixing" => out.prep_mixing = Some(value.parse().map_err(|_| bad("number"))?),
            "target_fidelity" => {
                out.target_fidelity = Some(value.parse().map_err(|_| bad("number"))?)
            }
            "phase_jitter" => out.phase_jitter = Some(value.parse().map_err(|_| bad("number"))?),
            "pair_efficiency" => {
                out.pair_efficiency = Some(value.parse().map_err(|_| bad("number"))?)
            }
            "seed" => out.seed = Some(value.parse().map_err(|_| bad("integer"))?),
            "shots" => out.shots = Some(value.parse().map_err(|_| bad("integer"))?),
            "threads" => out.threads = Some(value.parse().map_err(|_| bad("integer"))?),
            "counts_per_symbol" => {
                out.counts_per_symbol = Some(value.parse().map_err(|_| bad("integer"))?)
            }
            "resamples" => out.resamples = Some(value.parse().map_err(|_| bad("integer"))?),
            "policy" => out.policy = Some(parse_policy(value)?),
            "pnr" => out.pnr = Some(value.parse().map_err(|_| bad("boolean"))?),
            "lenient" => out.lenient = Some(value.parse().map_err(|_| bad("boolean"))?),
            _ if key.starts_with("palette.") => {
                let slot = key.trim_start_matches("palette.").to_string();
                let parts: Vec<&str> = value.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(bad("color (expected R,G,B)"));
                }
                let mut rgb = [0u8; 3];
                for (c, p) in rgb.iter_mut().zip(&parts) {
                    *c = p.parse().map_err(|_| bad("color component"))?;
                }
                out.palette.insert(slot, rgb);
            }
            other => {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(out)
}

/// Fully resolved run parameters. The inconclusive policy stays optional
/// because its default differs by command: channel reports keep Inconclusive
/// as its own outcome, transmission retries until conclusive.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub netlist_path: Option<PathBuf>,
    pub noise: NoiseModel,
    pub seed: u64,
    pub shots: u64,
    pub threads: usize,
    pub policy: Option<InconclusivePolicy>,
    pub pnr: bool,
    pub counts_per_symbol: u64,
    pub resamples: usize,
    pub lenient: bool,
    pub palette: Palette,
}

impl RunConfig {
    pub fn resolve(overrides: Overrides) -> CliResult<RunConfig> {
        if overrides.prep_mixing.is_some() && overrides.target_fidelity.is_some() {
            return Err(CliError::Usage(
                "give either prep_mixing or target_fidelity, not both".into(),
            ));
        }
        let defaults = NoiseModel::calibrated();
        let prep_mixing = overrides
            .prep_mixing
            .or_else(|| {
                overrides
                    .target_fidelity
                    .map(NoiseModel::mixing_for_fidelity)
            })
            .unwrap_or(defaults.prep_mixing);
        let efficiency = match overrides.pair_efficiency {
            Some(pair) => {
                if !(pair > 0.0 && pair <= 1.0) {
                    return Err(CliError::Usage(format!(
                        "pair_efficiency {pair} outside (0, 1]"
                    )));
                }
                pair.sqrt()
            }
            None => defaults.efficiency,
        };
        let noise = NoiseModel {
            lambda: overrides.lambda.unwrap_or(defaults.lambda),
            prep_mixing,
            phase_jitter: overrides.phase_jitter.unwrap_or(0.0),
            efficiency,
        };
        noise
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;

        let mut colors = [[0u8; 3]; ALPHABET];
        let standard = Palette::standard();
        let names = ["red", "yellow", "blue", "green", "white"];
        for (k, name) in names.iter().enumerate() {
            colors[k] = overrides
                .palette
                .get(*name)
                .copied()
                .unwrap_or_else(|| standard.color(k as u8));
        }
        for key in overrides.palette.keys() {
            if !names.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown palette slot `{key}` (expected {})",
                    names.join("/")
                )));
            }
        }
        let palette = Palette::new(colors).map_err(|e| CliError::Usage(e.to_string()))?;

        Ok(RunConfig {
            netlist_path: overrides.netlist,
            noise,
            seed: overrides.seed.unwrap_or(1),
            shots: overrides.shots.unwrap_or(0),
            threads: overrides.threads.unwrap_or(1).max(1),
            policy: overrides.policy,
            pnr: overrides.pnr.unwrap_or(false),
            counts_per_symbol: overrides
                .counts_per_symbol
                .unwrap_or(DEFAULT_COUNTS_PER_SYMBOL),
            resamples: overrides.resamples.unwrap_or(400),
            lenient: overrides.lenient.unwrap_or(false),
            palette,
        })
    }

    /// Policy for channel reports: Inconclusive stays a separate outcome.
    pub fn channel_policy(&self) -> InconclusivePolicy {
        self.policy.unwrap_or(InconclusivePolicy::SeparateOutcome)
    }

    /// Policy for image transmission: retry until a conclusive pattern.
    pub fn transmit_policy(&self) -> InconclusivePolicy {
        self.policy
            .unwrap_or(InconclusivePolicy::RetryUntilConclusive)
    }

    /// Load the configured netlist file, or the bundled analyzer.
    pub fn load_netlist(&self) -> CliResult<Netlist> {
        match &self.netlist_path {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read netlist {}: {e}", path.display()))
                })?;
                Netlist::parse(&text).map_err(|e| CliError::Usage(e.to_string()))
            }
            None => Ok(Netlist::bundled()),
        }
    }

    pub fn echo(&self, policy: InconclusivePolicy) -> ConfigEcho {
        ConfigEcho {
            netlist: self
                .netlist_path
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "bundled".into()),
            seed: self.seed,
            shots: self.shots,
            threads: self.threads,
            policy: policy_name(policy).into(),
            pnr: self.pnr,
            counts_per_symbol: self.counts_per_symbol,
            resamples: self.resamples,
            noise: NoiseEcho::from(&self.noise),
        }
    }
}

/// Noise parameters as they appear in reports.
#[derive(Clone, Debug, Serialize)]
pub struct NoiseEcho {
    pub lambda: f64,
    pub prep_mixing: f64,
    pub state_fidelity: f64,
    pub phase_jitter: f64,
    pub efficiency: f64,
    pub pair_efficiency: f64,
}

impl From<&NoiseModel> for NoiseEcho {
    fn from(n: &NoiseModel) -> Self {
        NoiseEcho {
            lambda: n.lambda,
            prep_mixing: n.prep_mixing,
            state_fidelity: n.state_fidelity(),
            phase_jitter: n.phase_jitter,
            efficiency: n.efficiency,
            pair_efficiency: n.pair_efficiency(),
        }
    }
}

/// The effective configuration echoed into every report.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub netlist: String,
    pub seed: u64,
    pub shots: u64,
    pub threads: usize,
    pub policy: String,
    pub pnr: bool,
    pub counts_per_symbol: u64,
    pub resamples: usize,
    pub noise: NoiseEcho,
}
