//! Core simulation and analysis library for superdense coding with
//! path-polarization ququarts.
//!
//! The crate covers the full pipeline: exact algebra of the 16 two-ququart
//! Bell states and the encoder that steers them ([`bell`], [`encoder`]),
//! brute-force two-photon propagation through a data-driven analyzer netlist
//! ([`photonic`]), the noisy five-symbol channel with mutual information,
//! capacity and bootstrap error bars ([`channel`], [`info`], [`bootstrap`]),
//! and five-color image transmission over that channel ([`image`]).
//!
//! Everything here is `no_std` + `alloc`; file and thread handling live in
//! the companion `qudense` binary crate.

#![no_std]

extern crate alloc;

pub mod bell;
pub mod bootstrap;
pub mod channel;
pub mod encoder;
pub mod error;
pub mod image;
pub mod info;
pub mod photonic;
pub mod quadrature;
pub mod rng;

pub use error::{Error, Result};
