//! `qudense sweep`: capacity figures along one noise parameter.

use qudense_core::channel::{confusion_from_sim, AnalyzerModel, NoiseModel, Prior, SimMode};
use qudense_core::info::{capacity_blahut_arimoto, mutual_information};

use super::OutputFormat;
use crate::config::RunConfig;
use crate::parallel::confusion_mc;
use crate::report::{sweep_csv, to_json, SweepRow};
use crate::{CliError, CliResult};

/// A swept parameter with an inclusive `start:end:steps` range.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub parameter: String,
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl SweepSpec {
    pub fn parse(parameter: &str, range: &str) -> CliResult<SweepSpec> {
        let parts: Vec<&str> = range.split(':').collect();
        let bad = || CliError::Usage(format!("range `{range}` must look like start:end:steps"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].parse().map_err(|_| bad())?;
        let end: f64 = parts[1].parse().map_err(|_| bad())?;
        let steps: usize = parts[2].parse().map_err(|_| bad())?;
        if steps < 2 {
            return Err(CliError::Usage("a sweep needs at least 2 steps".into()));
        }
        Ok(SweepSpec {
            parameter: parameter.to_string(),
            start,
            end,
            steps,
        })
    }

    fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let width = (self.end - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(move |k| self.start + width * k as f64)
    }

    fn apply(&self, base: &NoiseModel, value: f64) -> CliResult<NoiseModel> {
        let mut noise = *base;
        match self.parameter.as_str() {
            "lambda" => noise.lambda = value,
            "prep_mixing" => noise.prep_mixing = value,
            "target_fidelity" => noise.prep_mixing = NoiseModel::mixing_for_fidelity(value),
            "phase_jitter" => noise.phase_jitter = value,
            other => {
                return Err(CliError::Usage(format!(
                    "cannot sweep `{other}` (lambda | prep_mixing | target_fidelity | phase_jitter)"
                )))
            }
        }
        Ok(noise)
    }
}

pub fn cmd_sweep(cfg: &RunConfig, spec: SweepSpec, format: OutputFormat) -> CliResult<()> {
    let netlist = cfg.load_netlist()?;
    let model = AnalyzerModel::new(netlist, cfg.pnr).map_err(|e| CliError::Usage(e.to_string()))?;
    let policy = cfg.channel_policy();

    let mut rows = Vec::with_capacity(spec.steps);
    for value in spec.values() {
        let noise = spec.apply(&cfg.noise, value)?;
        noise
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let raw = if cfg.shots == 0 {
            confusion_from_sim(&model, &noise, SimMode::Exact)
        } else {
            confusion_mc(&model, &noise, cfg.shots, cfg.seed, cfg.threads)
        }
        .map_err(|e| CliError::Usage(e.to_string()))?;
        let channel = raw
            .with_policy(policy)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let mi_uniform = mutual_information(&Prior::uniform(), &channel);
        let capacity = capacity_blahut_arimoto(&channel, 1e-9)
            .map_err(|e| CliError::Check(e.to_string()))?
            .capacity_bits;
        rows.push(SweepRow {
            parameter: spec.parameter.clone(),
            value,
            mi_uniform,
            capacity,
        });
    }

    match format {
        OutputFormat::Json => println!("{}", to_json(&rows)),
        _ => print!("{}", sweep_csv(&rows)),
    }
    Ok(())
}
