//! Signal chain: constellations with per-level bit labels, AWGN, and
//! stage demapping that turns observations into per-level LLRs.
//!
//! Conventions, fixed crate-wide:
//!
//! * Constellations have unit average symbol energy. Amplitude grids
//!   are the odd integers scaled to unit energy; BPSK maps bit 0 to
//!   -1 and bit 1 to +1.
//! * Level `j` is label bit `j` (level 0 least significant), and
//!   levels are demapped in order. Under set partitioning each
//!   decided bit keeps every other surviving point, so the first
//!   level faces the tightest spacing and later levels ride wider
//!   ones. Square QAM splits into two independent PAM dimensions:
//!   the first half of the levels rides the in-phase axis, the
//!   second half the quadrature axis.
//! * `sigma2` is the noise variance per real dimension.
//! * Demapped LLRs follow the `log(P0/P1)` convention and are clamped
//!   to the shared `LLR_CLAMP`.

mod channel;
mod constellation;
mod demap;

pub use channel::{awgn, ChannelModel};
pub(crate) use channel::NormalSource;
pub use constellation::{build_constellation, modulate, Constellation};
pub use demap::{stage_llr, stage_llr_with};
pub(crate) use demap::symbol_level_llr;

use crate::{config_err, Result};

/// Bit-to-amplitude labeling rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    /// Natural binary order along the amplitude axis. Demapped
    /// low-bit first, every decision prunes the surviving set to
    /// alternating points, doubling its spacing: the partition-tier
    /// split the multistage receiver polarizes.
    SetPartitioning,
    /// Binary-reflected Gray code along the amplitude axis.
    Gray,
}

/// LLR combining rule used by the demapper.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DemapMethod {
    /// Exact log-sum-exp over the surviving labels.
    #[default]
    Exact,
    /// Max-log surrogate (nearest surviving point per hypothesis).
    MaxLog,
}

pub(crate) fn check_sigma2(sigma2: f64) -> Result<()> {
    if !(sigma2.is_finite() && sigma2 > 0.0) {
        return config_err("noise variance must be positive and finite");
    }
    Ok(())
}
