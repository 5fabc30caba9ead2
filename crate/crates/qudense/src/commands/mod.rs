//! The five subcommands.

mod capacity;
mod oracle_check;
mod simulate;
mod sweep;
mod transmit;

pub use capacity::cmd_capacity;
pub use oracle_check::cmd_oracle_check;
pub use simulate::cmd_simulate;
pub use sweep::{cmd_sweep, SweepSpec};
pub use transmit::cmd_transmit;

use qudense_core::bell::BellLabel;

use crate::{CliError, CliResult};

/// Output selection shared by every command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Parse a Bell label given as `23` or `2,3`.
pub fn parse_label(s: &str) -> CliResult<BellLabel> {
    let digits: Vec<u8> = s
        .chars()
        .filter(|c| c.is_ascii_digit())
        .map(|c| c as u8 - b'0')
        .collect();
    if digits.len() != 2 {
        return Err(CliError::Usage(format!(
            "state `{s}` must be two indices like 23 or 2,3"
        )));
    }
    BellLabel::new(digits[0], digits[1]).map_err(|e| CliError::Usage(e.to_string()))
}
