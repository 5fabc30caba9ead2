use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser, Subcommand};

use qudense::commands::{
    cmd_capacity, cmd_oracle_check, cmd_simulate, cmd_sweep, cmd_transmit, OutputFormat, SweepSpec,
};
use qudense::config::{parse_config_file, parse_policy, Overrides, RunConfig, CONFIG_ENV};
use qudense::CliResult;

/// Simulator and analysis toolkit for superdense coding with entangled
/// ququarts: Bell-state analyzer propagation, channel capacity, and
/// five-color image transmission.
#[derive(Parser)]
#[command(name = "qudense", version, max_term_width = 100)]
struct Cli {
    /// key=value configuration file (falls back to $QUDENSE_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Analyzer netlist file (default: the bundled fig_a1.netlist)
    #[arg(long, global = true)]
    netlist: Option<PathBuf>,
    /// HOM indistinguishability in [0, 1] (default 0.962)
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Weight of the maximally mixed state in [0, 1]
    #[arg(long, global = true, conflicts_with = "target_fidelity")]
    prep_mixing: Option<f64>,
    /// Prepared-state fidelity; sets prep_mixing (default 0.980)
    #[arg(long, global = true)]
    target_fidelity: Option<f64>,
    /// Gaussian sigma on the four encoder phases, radians (default 0)
    #[arg(long, global = true)]
    phase_jitter: Option<f64>,
    /// Two-photon detection efficiency in (0, 1] (default 0.109)
    #[arg(long, global = true)]
    pair_efficiency: Option<f64>,
    /// RNG seed for every stochastic step (default 1)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo shots per symbol; 0 selects exact evaluation
    #[arg(long, global = true)]
    shots: Option<u64>,
    /// Worker threads; results are identical for any value
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Inconclusive-event policy: separate | retry | uniform-guess
    #[arg(long, global = true)]
    policy: Option<String>,
    /// Assume photon-number-resolving detectors
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    pnr: bool,
    /// Pairs per symbol for counting statistics (default 20000)
    #[arg(long, global = true)]
    counts_per_symbol: Option<u64>,
    /// Bootstrap resamples (default 400, minimum 100)
    #[arg(long, global = true)]
    resamples: Option<usize>,
    /// Emit JSON
    #[arg(long, global = true, action = ArgAction::SetTrue, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV
    #[arg(long, global = true, action = ArgAction::SetTrue)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the analyzer netlist against the reference tabulation
    OracleCheck {
        /// Print the trace of one Bell state (two indices, e.g. 23)
        #[arg(long)]
        state: Option<String>,
        /// Line at which to print the trace (a, b, c or d)
        #[arg(long)]
        line: Option<String>,
    },
    /// Coincidence distribution of one Bell state
    Simulate {
        /// Bell state indices, e.g. 11 or 2,3
        #[arg(long)]
        state: String,
    },
    /// Channel matrix, mutual information, capacity and error bars
    Capacity {
        /// Sweep a parameter instead: --sweep lambda 0.90:1.00:11
        #[arg(long, num_args = 2, value_names = ["PARAM", "START:END:STEPS"])]
        sweep: Option<Vec<String>>,
    },
    /// Send a PPM image through the simulated channel
    Transmit {
        /// Input image (P6 or P3 PPM, palette colors only unless --lenient)
        #[arg(long, short)]
        input: PathBuf,
        /// Received image path (written as P6)
        #[arg(long, short)]
        output: PathBuf,
        /// Also write the JSON report to this path
        #[arg(long)]
        report: Option<PathBuf>,
        /// Snap off-palette pixels to the nearest palette color
        #[arg(long, action = ArgAction::SetTrue)]
        lenient: bool,
    },
    /// Capacity figures along one noise parameter
    Sweep {
        /// lambda | prep_mixing | target_fidelity | phase_jitter
        parameter: String,
        /// start:end:steps (inclusive)
        range: String,
    },
}

fn build_config(cli: &Cli) -> CliResult<RunConfig> {
    let flag_overrides = Overrides {
        netlist: cli.netlist.clone(),
        lambda: cli.lambda,
        prep_mixing: cli.prep_mixing,
        target_fidelity: cli.target_fidelity,
        phase_jitter: cli.phase_jitter,
        pair_efficiency: cli.pair_efficiency,
        seed: cli.seed,
        shots: cli.shots,
        threads: cli.threads,
        policy: cli.policy.as_deref().map(parse_policy).transpose()?,
        pnr: cli.pnr.then_some(true),
        counts_per_symbol: cli.counts_per_symbol,
        resamples: cli.resamples,
        lenient: None,
        palette: Default::default(),
    };
    let file = match &cli.config {
        Some(path) => Some(path.clone()),
        None => std::env::var_os(CONFIG_ENV).map(PathBuf::from),
    };
    let merged = match file {
        Some(path) => flag_overrides.merged_over(parse_config_file(&path)?),
        None => flag_overrides,
    };
    RunConfig::resolve(merged)
}

fn run(cli: Cli) -> CliResult<()> {
    let format = if cli.json {
        OutputFormat::Json
    } else if cli.csv {
        OutputFormat::Csv
    } else {
        OutputFormat::Text
    };
    let mut cfg = build_config(&cli)?;
    match &cli.command {
        Command::OracleCheck { state, line } => {
            cmd_oracle_check(&cfg, state.as_deref(), line.as_deref())
        }
        Command::Simulate { state } => cmd_simulate(&cfg, state, format),
        Command::Capacity { sweep } => {
            let spec = sweep
                .as_ref()
                .map(|args| SweepSpec::parse(&args[0], &args[1]))
                .transpose()?;
            cmd_capacity(&cfg, spec, format)
        }
        Command::Transmit {
            input,
            output,
            report,
            lenient,
        } => {
            if *lenient {
                cfg.lenient = true;
            }
            cmd_transmit(&cfg, input, output, report.as_deref(), format)
        }
        Command::Sweep { parameter, range } => {
            cmd_sweep(&cfg, SweepSpec::parse(parameter, range)?, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
