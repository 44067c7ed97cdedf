//! Core algorithms for polar-coded modulation over a generalized
//! polarization transform: a signal-polarization stage that splits a
//! `2^m`-ary constellation into `m` bit levels, followed by a channel
//! polarization stage that protects each level with a component polar
//! code. The crate covers the polar kernel (transform, SC and list
//! decoding, CRC), the signal chain (constellations, AWGN, soft
//! demapping), one-shot code construction (capacity estimation, rate
//! filling, GA/PW reliability), and the compound decoders (multistage
//! SC, hard-decision MSD, and list decoding with inherited path
//! metrics).
//!
//! The crate is `no_std` (with `alloc`); simulation harnesses, file
//! formats, and CLI live in the companion `gpt-sim` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

use alloc::string::String;
use core::fmt;

mod math;

pub mod codec;
pub mod construct;
pub mod modem;
pub mod polar;

pub use codec::{
    gpt_encode, hd_msd_decode, hd_msd_decode_with_ensemble, msc_decode, pmi_scl_decode,
    pmi_scl_decode_with_ensemble, Codeword, DecodeResult, DecoderKind,
};
pub use construct::ga::ga_reliability;
pub use construct::{
    bit_level_capacities, build_scheme, equivalent_snr, equivalent_snr_with,
    level_llr_magnitude_means, pw_reliability, rate_fill, select_frozen, CapacityParams,
    CapacityProfile, ConstructionMethod, GptScheme, RateAllocation, ReliabilityProfile,
    SchemeConfig, DEFAULT_PW_BETA,
};
pub use modem::{
    awgn, build_constellation, modulate, stage_llr, stage_llr_with, ChannelModel, Constellation,
    DemapMethod, Labeling,
};
pub use polar::{
    crc_attach, crc_verify, embed_info, polar_transform, sc_decode, scl_decode, CrcSpec,
    ListPath, LlrVector, PathEnsemble, PolarCodeSpec, ScOutput,
};

/// Symmetric clamp applied to every log-likelihood ratio entering the
/// decoders. Shared by the demapper and the polar kernel.
pub const LLR_CLAMP: f64 = 50.0;

/// Errors reported by this crate.
///
/// `Config` covers invalid parameters and malformed inputs; `Numeric`
/// covers convergence failures and ill-conditioned computations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid configuration or argument.
    Config(String),
    /// Numeric or convergence failure.
    Numeric(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn config_err<T>(msg: impl fmt::Display) -> Result<T> {
    Err(Error::Config(alloc::format!("{msg}")))
}

pub(crate) fn numeric_err<T>(msg: impl fmt::Display) -> Result<T> {
    Err(Error::Numeric(alloc::format!("{msg}")))
}
