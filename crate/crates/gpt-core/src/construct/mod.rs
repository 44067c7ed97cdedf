//! One-shot code construction.
//!
//! Construction runs once per scheme, before any data flows:
//!
//! 1. Find the noise variance at which the constellation's total
//!    bit-level capacity equals the target rate in bits per symbol
//!    ([`equivalent_snr`]).
//! 2. Split the information budget across the bit levels in
//!    proportion to their capacities at that variance ([`rate_fill`]).
//! 3. Rank each level's synthetic channels (Gaussian-approximation
//!    density evolution seeded with that level's measured LLR mean,
//!    or the channel-independent polarization-weight rule) and freeze
//!    the worst ([`select_frozen`]).
//!
//! [`build_scheme`] composes the three steps into a ready-to-run
//! [`GptScheme`].

pub mod ga;

mod capacity;
mod fill;
mod pw;

pub use capacity::{
    bit_level_capacities, equivalent_snr, equivalent_snr_with, level_llr_magnitude_means,
    CapacityParams, CapacityProfile,
};
pub use fill::{rate_fill, select_frozen, RateAllocation};
pub use pw::{pw_reliability, DEFAULT_PW_BETA};

use alloc::vec::Vec;

use crate::modem::{build_constellation, Constellation, DemapMethod, Labeling};
use crate::polar::{CrcSpec, PolarCodeSpec};
use crate::{config_err, Result};

use ga::ga_reliability;

/// Per-bit-channel reliability scores for one component code; higher
/// scores mark more reliable synthetic channels.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityProfile {
    scores: Vec<f64>,
}

impl ReliabilityProfile {
    pub(crate) fn new(scores: Vec<f64>) -> Self {
        debug_assert!(scores.len().is_power_of_two());
        Self { scores }
    }

    pub fn block_length(&self) -> usize {
        self.scores.len()
    }

    /// Score of synthetic channel `i`; higher means more reliable.
    pub fn scores(&self) -> &[f64] {
        &self.scores
    }
}

/// Frozen-set construction rule for the component codes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstructionMethod {
    /// Gaussian-approximation density evolution, seeded per level
    /// with the measured mean demapper LLR magnitude.
    Ga,
    /// Universal polarization weights with exponent base `beta`.
    Pw { beta: f64 },
}

/// Everything needed to build a scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    /// Label bits per symbol (1..=6; 4 and 6 are square QAM).
    pub bits_per_symbol: usize,
    /// Component code length, a power of two; also the symbol count.
    pub block_length: usize,
    /// Total information bits per transmission, before CRC.
    pub info_len: usize,
    pub labeling: Labeling,
    pub method: ConstructionMethod,
    /// Appended per component code that carries information.
    pub crc: Option<CrcSpec>,
    pub demap: DemapMethod,
    /// Monte Carlo budget for the capacity-driven steps.
    pub capacity: CapacityParams,
}

impl SchemeConfig {
    /// A plain starting point: set-partitioning labels, GA
    /// construction, no CRC, exact demapping, default Monte Carlo
    /// budget.
    pub fn new(bits_per_symbol: usize, block_length: usize, info_len: usize) -> Self {
        Self {
            bits_per_symbol,
            block_length,
            info_len,
            labeling: Labeling::SetPartitioning,
            method: ConstructionMethod::Ga,
            crc: None,
            demap: DemapMethod::Exact,
            capacity: CapacityParams::default(),
        }
    }
}

/// A fully constructed scheme: the constellation plus one component
/// polar code per bit level, ready for encoding and decoding.
#[derive(Debug, Clone, PartialEq)]
pub struct GptScheme {
    constellation: Constellation,
    components: Vec<PolarCodeSpec>,
    level_info: Vec<usize>,
    total_info: usize,
    design_sigma2: f64,
    demap: DemapMethod,
}

impl GptScheme {
    /// Assembles a scheme from explicit parts, validating that the
    /// component codes agree with the constellation.
    pub fn from_parts(
        constellation: Constellation,
        components: Vec<PolarCodeSpec>,
        design_sigma2: f64,
        demap: DemapMethod,
    ) -> Result<Self> {
        if components.len() != constellation.bits_per_symbol() {
            return config_err("scheme needs one component code per bit level");
        }
        let n = components[0].block_length();
        if components.iter().any(|s| s.block_length() != n) {
            return config_err("component codes must share one block length");
        }
        if !(design_sigma2.is_finite() && design_sigma2 > 0.0) {
            return config_err("design noise variance must be positive and finite");
        }
        let level_info: Vec<usize> = components.iter().map(|s| s.info_len()).collect();
        let total_info = level_info.iter().sum();
        Ok(Self {
            constellation,
            components,
            level_info,
            total_info,
            design_sigma2,
            demap,
        })
    }

    pub fn constellation(&self) -> &Constellation {
        &self.constellation
    }

    /// Component code of bit level `j`.
    pub fn component(&self, level: usize) -> &PolarCodeSpec {
        &self.components[level]
    }

    pub fn components(&self) -> &[PolarCodeSpec] {
        &self.components
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.constellation.bits_per_symbol()
    }

    /// Symbols per transmission; equals every component code length.
    pub fn block_length(&self) -> usize {
        self.components[0].block_length()
    }

    /// Information bits carried by each level, CRC excluded.
    pub fn level_info(&self) -> &[usize] {
        &self.level_info
    }

    /// Total information bits per transmission, CRC excluded.
    pub fn total_info(&self) -> usize {
        self.total_info
    }

    /// Noise variance the construction was tuned for.
    pub fn design_sigma2(&self) -> f64 {
        self.design_sigma2
    }

    pub fn demap(&self) -> DemapMethod {
        self.demap
    }

    /// Information bits per symbol.
    pub fn rate(&self) -> f64 {
        self.total_info as f64 / self.block_length() as f64
    }
}

/// Number of Monte Carlo samples behind each per-level design LLR
/// mean handed to the GA recursion.
const GA_DESIGN_SAMPLES: usize = 100_000;

/// Builds a scheme in one shot: equivalent noise variance, per-level
/// rate filling, then per-level frozen sets.
pub fn build_scheme(config: &SchemeConfig) -> Result<GptScheme> {
    let c = build_constellation(config.bits_per_symbol, config.labeling)?;
    let ra = rate_fill(
        &c,
        config.block_length,
        config.info_len,
        &config.capacity,
    )?;
    let n = config.block_length;
    let crc_width = config.crc.as_ref().map_or(0, |s| s.width());

    // PW scores do not depend on the channel, so one profile serves
    // every level.
    let pw_profile = match config.method {
        ConstructionMethod::Pw { beta } => Some(pw_reliability(n, beta)?),
        ConstructionMethod::Ga => None,
    };
    let ga_means = match config.method {
        ConstructionMethod::Ga => Some(level_llr_magnitude_means(
            &c,
            ra.sigma2,
            GA_DESIGN_SAMPLES,
            config.capacity.seed,
        )?),
        ConstructionMethod::Pw { .. } => None,
    };

    let mut components = Vec::with_capacity(config.bits_per_symbol);
    for (level, &k) in ra.level_info.iter().enumerate() {
        // Levels that carry no information need no CRC either.
        let crc = if k > 0 { config.crc.clone() } else { None };
        let payload = k + if k > 0 { crc_width } else { 0 };
        if payload > n {
            return config_err(alloc::format!(
                "level {level} needs {payload} payload bits but the block length is {n}"
            ));
        }
        let profile = match (&pw_profile, &ga_means) {
            (Some(p), _) => p.clone(),
            (None, Some(means)) => ga_reliability(n, means[level])?,
            _ => unreachable!(),
        };
        let frozen = select_frozen(payload, &profile)?;
        components.push(PolarCodeSpec::new(n, frozen, alloc::vec![0u8; n], crc)?);
    }
    GptScheme::from_parts(c, components, ra.sigma2, config.demap)
}
