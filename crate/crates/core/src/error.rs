//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors produced by state construction, netlist handling and the
/// channel/image pipelines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A Bell-state index was outside 1..=4.
    InvalidLabel { i: u8, j: u8 },
    /// An alphabet symbol was outside its valid range.
    InvalidSymbol { symbol: u8, max: u8 },
    /// A numeric parameter was outside its documented range.
    InvalidParameter { name: &'static str, detail: String },
    /// A netlist file could not be parsed.
    NetlistParse { line: usize, detail: String },
    /// A state occupied a mode that the next stage does not accept.
    RailMismatch { detail: String },
    /// The netlist failed a structural check (unitarity, class count, ...).
    NetlistValidation { detail: String },
    /// Image dimensions were inconsistent or degenerate.
    InvalidImage { detail: String },
    /// A PPM payload could not be decoded.
    PpmFormat { detail: String },
    /// A pixel color was not in the palette (strict decoding only).
    OffPalette { x: u32, y: u32, rgb: [u8; 3] },
    /// Iterative capacity search failed to reach the requested tolerance.
    NonConvergence {
        iterations: usize,
        lower_bits: f64,
        upper_bits: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidLabel { i, j } => {
                write!(f, "invalid Bell label ({i},{j}): indices must be in 1..=4")
            }
            Error::InvalidSymbol { symbol, max } => {
                write!(f, "invalid symbol {symbol}: alphabet is 0..={max}")
            }
            Error::InvalidParameter { name, detail } => {
                write!(f, "invalid parameter `{name}`: {detail}")
            }
            Error::NetlistParse { line, detail } => {
                write!(f, "netlist parse error at line {line}: {detail}")
            }
            Error::RailMismatch { detail } => write!(f, "rail mismatch: {detail}"),
            Error::NetlistValidation { detail } => write!(f, "netlist validation: {detail}"),
            Error::InvalidImage { detail } => write!(f, "invalid image: {detail}"),
            Error::PpmFormat { detail } => write!(f, "ppm format error: {detail}"),
            Error::OffPalette { x, y, rgb } => write!(
                f,
                "pixel ({x},{y}) has color ({},{},{}) not in the palette",
                rgb[0], rgb[1], rgb[2]
            ),
            Error::NonConvergence {
                iterations,
                lower_bits,
                upper_bits,
            } => write!(
                f,
                "capacity iteration did not converge after {iterations} steps \
                 (bracket [{lower_bits}, {upper_bits}] bits)"
            ),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
