//! `qudense capacity`: channel quality report.

use qudense_core::channel::{confusion_from_sim, AnalyzerModel, CountsTable, Prior, SimMode};
use qudense_core::info::{capacity_blahut_arimoto, mutual_information, reference_limits};

use super::{OutputFormat, SweepSpec};
use crate::config::{policy_name, RunConfig};
use crate::parallel::{bootstrap_mc, confusion_mc};
use crate::report::{channel_csv, channel_text, to_json, CapacityReport, LimitsReport};
use crate::{CliError, CliResult};

pub fn cmd_capacity(
    cfg: &RunConfig,
    sweep: Option<SweepSpec>,
    format: OutputFormat,
) -> CliResult<()> {
    if let Some(spec) = sweep {
        return super::cmd_sweep(cfg, spec, format);
    }
    let netlist = cfg.load_netlist()?;
    let model = AnalyzerModel::new(netlist, cfg.pnr).map_err(|e| CliError::Usage(e.to_string()))?;
    let policy = cfg.channel_policy();

    let raw = if cfg.shots == 0 {
        confusion_from_sim(&model, &cfg.noise, SimMode::Exact)
    } else {
        confusion_mc(&model, &cfg.noise, cfg.shots, cfg.seed, cfg.threads)
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let channel = raw
        .with_policy(policy)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let mi_uniform = mutual_information(&Prior::uniform(), &channel);
    let cap =
        capacity_blahut_arimoto(&channel, 1e-9).map_err(|e| CliError::Check(e.to_string()))?;
    let counts = CountsTable::from_channel(&channel, cfg.counts_per_symbol);
    let sigma = bootstrap_mc(&counts, cfg.resamples, cfg.seed, cfg.threads)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let report = CapacityReport {
        limits: LimitsReport::from(reference_limits()),
        mi_uniform,
        capacity: cap.capacity_bits,
        prior: *cap.prior.probabilities(),
        sigma,
        policy: policy_name(policy).into(),
        noise: (&cfg.noise).into(),
        channel: channel.rows().to_vec(),
        config: cfg.echo(policy),
    };

    match format {
        OutputFormat::Json => println!("{}", to_json(&report)),
        OutputFormat::Csv => {
            println!("metric,value");
            println!("mi_uniform,{mi_uniform:.9}");
            println!("capacity,{:.9}", cap.capacity_bits);
            println!("sigma,{sigma:.9}");
            println!("limit_qubit_sdc,{:.9}", report.limits.qubit_sdc);
            println!("limit_single_ququart,{:.9}", report.limits.single_ququart);
            println!("limit_five_state,{:.9}", report.limits.five_state);
            println!();
            print!("{}", channel_csv(&channel));
        }
        OutputFormat::Text => {
            if cfg.shots > 0 {
                println!(
                    "Monte Carlo channel: {} shots per symbol, seed {}",
                    cfg.shots, cfg.seed
                );
            }
            println!("channel matrix (policy: {}):", report.policy);
            print!("{}", channel_text(&channel));
            println!();
            println!("mutual information (uniform prior): {mi_uniform:.6} bits");
            println!(
                "capacity (alternating maximization):  {:.6} bits  (prior {:?})",
                cap.capacity_bits,
                cap.prior.probabilities().map(|p| (p * 1e4).round() / 1e4)
            );
            println!(
                "bootstrap sigma ({} resamples, {} counts/symbol): {sigma:.6} bits",
                cfg.resamples, cfg.counts_per_symbol
            );
            println!(
                "reference limits: qubit SDC {:.4}, single ququart {:.4}, five-state {:.4}",
                report.limits.qubit_sdc, report.limits.single_ququart, report.limits.five_state
            );
        }
    }
    Ok(())
}
