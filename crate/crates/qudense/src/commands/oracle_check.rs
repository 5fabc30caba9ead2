//! `qudense oracle-check`: validate a netlist against the reference
//! tabulation and print the derived class table.

use qudense_core::bell::{bell_state, BellLabel};
use qudense_core::photonic::pattern_table;
use qudense_core::photonic::{embed, trace_at_line, validate_netlist, PatternTable};

use super::parse_label;
use crate::config::RunConfig;
use crate::{CliError, CliResult};

pub fn cmd_oracle_check(cfg: &RunConfig, state: Option<&str>, line: Option<&str>) -> CliResult<()> {
    let netlist = cfg.load_netlist()?;

    if let (Some(state), Some(line)) = (state, line) {
        return print_trace(parse_label(state)?, line, &netlist);
    }
    if state.is_some() || line.is_some() {
        return Err(CliError::Usage(
            "detail mode needs both --state and --line".into(),
        ));
    }

    let report = validate_netlist(&netlist);
    for check in &report.checks {
        let tag = if check.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {} - {}", check.name, check.detail);
    }
    if !report.deviations.is_empty() {
        println!("\ndetected tabulation inconsistencies (corrected forms matched):");
        for d in &report.deviations {
            println!("  {}: {}", d.context, d.note);
        }
    }
    if report.passed() {
        if let Ok(table) = pattern_table(&netlist) {
            println!("\nderived decoding classes:");
            print_class_table(&table);
        }
        Ok(())
    } else {
        let first = report.first_failure().expect("some check failed");
        Err(CliError::Check(format!(
            "oracle check failed: {} ({})",
            first.name, first.detail
        )))
    }
}

fn print_trace(
    label: BellLabel,
    line: &str,
    netlist: &qudense_core::photonic::Netlist,
) -> CliResult<()> {
    let input = embed(&bell_state(label));
    let traced =
        trace_at_line(&input, netlist, line).map_err(|e| CliError::Usage(e.to_string()))?;
    println!("{label} at line {line}:");
    for ((a, b), amp) in traced.pairs() {
        let shown = if amp.im.abs() < 1e-12 {
            format!("{:+.6}", amp.re)
        } else {
            format!("{amp:+.6}")
        };
        if a == b {
            println!("  {shown} |{a} {b}| (double)");
        } else {
            println!("  {shown} |{a} {b}|");
        }
    }
    Ok(())
}

fn print_class_table(table: &PatternTable) {
    for class in 1..=table.class_count() {
        let members: Vec<String> = table
            .members_of_class(class)
            .iter()
            .map(|l| l.to_string())
            .collect();
        let events: Vec<String> = table
            .events_of_class(class)
            .iter()
            .map(|e| e.to_string())
            .collect();
        let decode = if class <= 5 {
            format!("symbol {}", class - 1)
        } else if class == table.double_class() {
            "inconclusive without number resolution".into()
        } else {
            "not in the alphabet".into()
        };
        println!(
            "  class {class}: {{{}}} evidence {} -> {decode}",
            members.join(", "),
            events.join("+")
        );
    }
}
