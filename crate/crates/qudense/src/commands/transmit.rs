//! `qudense transmit`: send a five-color image through the noisy channel.

use std::path::Path;

use qudense_core::channel::{confusion_from_sim, AnalyzerModel, SimMode};
use qudense_core::image::expected_fidelity;

use super::OutputFormat;
use crate::config::RunConfig;
use crate::io::{load_ppm, save_ppm};
use crate::parallel::transmit_mc;
use crate::report::{to_json, TransmitReport};
use crate::{CliError, CliResult};

pub fn cmd_transmit(
    cfg: &RunConfig,
    input: &Path,
    output: &Path,
    report_path: Option<&Path>,
    format: OutputFormat,
) -> CliResult<()> {
    let image = load_ppm(input, &cfg.palette, cfg.lenient)?;

    let netlist = cfg.load_netlist()?;
    let model = AnalyzerModel::new(netlist, cfg.pnr).map_err(|e| CliError::Usage(e.to_string()))?;
    let policy = cfg.transmit_policy();

    let (received, stats) = transmit_mc(&image, &model, &cfg.noise, policy, cfg.seed, cfg.threads)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    save_ppm(&received, output)?;

    let exact = confusion_from_sim(&model, &cfg.noise, SimMode::Exact)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let expectation =
        expected_fidelity(&image, &exact, policy).map_err(|e| CliError::Usage(e.to_string()))?;

    let report = TransmitReport {
        fidelity: stats.fidelity,
        expected_fidelity: expectation,
        pixels_total: stats.pixels_total,
        pixels_wrong: stats.pixels_wrong,
        trials_total: stats.trials_total,
        inconclusive_total: stats.inconclusive_total,
        expected_trials_per_pixel: stats.expected_trials_per_pixel,
        seed: stats.seed,
        config: cfg.echo(policy),
    };
    if let Some(path) = report_path {
        std::fs::write(path, to_json(&report))
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    }

    match format {
        OutputFormat::Json => println!("{}", to_json(&report)),
        _ => {
            println!(
                "transmitted {} pixels -> {} (seed {})",
                report.pixels_total,
                output.display(),
                report.seed
            );
            println!(
                "fidelity: {:.6} (analytic expectation {:.6})",
                report.fidelity, expectation
            );
            println!(
                "wrong pixels: {}, inconclusive events: {}",
                report.pixels_wrong, report.inconclusive_total
            );
            println!(
                "pairs sent: {} ({:.3} per pixel, expected {:.3})",
                report.trials_total,
                report.trials_total as f64 / report.pixels_total as f64,
                report.expected_trials_per_pixel
            );
        }
    }
    Ok(())
}
