//! Experiment configuration: JSON schema, validation, and the
//! mapping onto `gpt-core`'s construction inputs.
//!
//! Unknown keys are rejected everywhere so a typo cannot silently
//! fall back to a default.

use gpt_core::construct::{build_scheme, ConstructionMethod, GptScheme, SchemeConfig};
use gpt_core::modem::{DemapMethod, Labeling};
use gpt_core::polar::CrcSpec;
use serde::{Deserialize, Serialize};

use crate::error::{config_err, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scheme: SchemeParams,
    /// Required for simulation; scheme-only tools ignore it.
    #[serde(default)]
    pub decoder: Option<DecoderParams>,
    /// Es/N0 grid in dB, strictly increasing.
    #[serde(default)]
    pub snr_db: Option<Vec<f64>>,
    #[serde(default)]
    pub stop: StopRule,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeParams {
    pub bits_per_symbol: usize,
    pub block_length: usize,
    /// Exactly one of `info_bits` and `rate` must be present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub info_bits: Option<usize>,
    /// Code rate as a fraction of the `bits_per_symbol * block_length`
    /// transmitted bits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(default)]
    pub labeling: LabelingParam,
    #[serde(default)]
    pub construction: ConstructionParam,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crc: Option<CrcParam>,
    #[serde(default)]
    pub demap: DemapParam,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LabelingParam {
    #[default]
    SetPartitioning,
    Gray,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case", deny_unknown_fields)]
pub enum ConstructionParam {
    #[default]
    Ga,
    Pw {
        #[serde(default = "default_pw_beta")]
        beta: f64,
    },
}

fn default_pw_beta() -> f64 {
    gpt_core::construct::DEFAULT_PW_BETA
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrcParam {
    pub width: usize,
    pub poly: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DemapParam {
    #[default]
    Exact,
    MaxLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoderParams {
    pub kind: DecoderKindParam,
    #[serde(default = "default_list_size")]
    pub list_size: usize,
}

fn default_list_size() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderKindParam {
    Msc,
    HdMsd,
    PmiScl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StopRule {
    #[serde(default = "default_max_trials")]
    pub max_trials: u64,
    #[serde(default = "default_min_block_errors")]
    pub min_block_errors: u64,
}

fn default_max_trials() -> u64 {
    1_000_000
}

fn default_min_block_errors() -> u64 {
    100
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            max_trials: default_max_trials(),
            min_block_errors: default_min_block_errors(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate_scheme()?;
        Ok(cfg)
    }

    /// Checks the parts every tool needs: the scheme block.
    pub fn validate_scheme(&self) -> Result<()> {
        let s = &self.scheme;
        match (s.info_bits, s.rate) {
            (Some(_), Some(_)) => return config_err("give either info_bits or rate, not both"),
            (None, None) => return config_err("one of info_bits or rate is required"),
            (_, Some(r)) if !(r > 0.0 && r < 1.0) => {
                return config_err("rate must lie strictly between 0 and 1")
            }
            _ => {}
        }
        Ok(())
    }

    /// Checks the parts a sweep needs on top of the scheme: decoder,
    /// SNR grid, and stop rule.
    pub fn validate_for_sim(&self) -> Result<()> {
        self.validate_scheme()?;
        let Some(decoder) = &self.decoder else {
            return config_err("a decoder block is required to simulate");
        };
        if decoder.list_size == 0 {
            return config_err("list_size must be at least 1");
        }
        if decoder.kind == DecoderKindParam::Msc && decoder.list_size != 1 {
            return config_err("msc has no list; set list_size to 1 or omit it");
        }
        let Some(grid) = &self.snr_db else {
            return config_err("an snr_db array is required to simulate");
        };
        if grid.is_empty() {
            return config_err("snr_db must not be empty");
        }
        if grid.iter().any(|s| !s.is_finite()) {
            return config_err("snr_db entries must be finite");
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return config_err("snr_db must be strictly increasing");
        }
        if self.stop.max_trials == 0 {
            return config_err("max_trials must be at least 1");
        }
        if self.stop.min_block_errors == 0 {
            return config_err("min_block_errors must be at least 1");
        }
        Ok(())
    }

    /// Total information bits per transmission, resolving `rate`.
    pub fn info_bits(&self) -> Result<usize> {
        let s = &self.scheme;
        let cap = s.bits_per_symbol * s.block_length;
        let k = match (s.info_bits, s.rate) {
            (Some(k), None) => k,
            (None, Some(r)) => {
                let k = (r * cap as f64).round() as usize;
                k
            }
            _ => return config_err("one of info_bits or rate is required"),
        };
        if k == 0 || k > cap {
            return config_err("information length must lie in 1..=m*N");
        }
        Ok(k)
    }

    /// Runs the one-shot construction for this config.
    pub fn build_scheme(&self) -> Result<GptScheme> {
        let s = &self.scheme;
        let mut cfg = SchemeConfig::new(s.bits_per_symbol, s.block_length, self.info_bits()?);
        cfg.labeling = match s.labeling {
            LabelingParam::SetPartitioning => Labeling::SetPartitioning,
            LabelingParam::Gray => Labeling::Gray,
        };
        cfg.method = match s.construction {
            ConstructionParam::Ga => ConstructionMethod::Ga,
            ConstructionParam::Pw { beta } => ConstructionMethod::Pw { beta },
        };
        cfg.crc = match s.crc {
            Some(CrcParam { width, poly }) => Some(CrcSpec::from_int(width, poly)?),
            None => None,
        };
        cfg.demap = match s.demap {
            DemapParam::Exact => DemapMethod::Exact,
            DemapParam::MaxLog => DemapMethod::MaxLog,
        };
        Ok(build_scheme(&cfg)?)
    }
}
