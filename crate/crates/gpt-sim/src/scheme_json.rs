//! On-disk scheme description: everything needed to reuse a
//! constructed scheme without re-running construction.

use gpt_core::construct::GptScheme;
use gpt_core::modem::{build_constellation, DemapMethod, Labeling};
use gpt_core::polar::{CrcSpec, PolarCodeSpec};
use serde::{Deserialize, Serialize};

use crate::config::{ConstructionParam, CrcParam, DemapParam, LabelingParam};
use crate::error::{config_err, Result};

/// Format version stamped into every file.
pub const SCHEME_FILE_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub version: u32,
    pub bits_per_symbol: usize,
    pub labeling: LabelingParam,
    pub block_length: usize,
    /// Noise variance per real dimension the construction targeted.
    pub design_sigma2: f64,
    pub demap: DemapParam,
    /// How the frozen masks were derived; informational on import.
    pub construction: ConstructionParam,
    /// One entry per level in demapping order.
    pub levels: Vec<LevelFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelFile {
    pub info_bits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crc: Option<CrcParam>,
    /// One character per input position, '1' for frozen.
    pub frozen_mask: String,
}

pub fn export_scheme(scheme: &GptScheme, construction: ConstructionParam) -> SchemeFile {
    SchemeFile {
        version: SCHEME_FILE_VERSION,
        bits_per_symbol: scheme.bits_per_symbol(),
        labeling: match scheme.constellation().labeling() {
            Labeling::SetPartitioning => LabelingParam::SetPartitioning,
            Labeling::Gray => LabelingParam::Gray,
        },
        block_length: scheme.block_length(),
        design_sigma2: scheme.design_sigma2(),
        demap: match scheme.demap() {
            DemapMethod::Exact => DemapParam::Exact,
            DemapMethod::MaxLog => DemapParam::MaxLog,
        },
        construction,
        levels: scheme
            .components()
            .iter()
            .map(|spec| LevelFile {
                info_bits: spec.info_len(),
                crc: spec.crc().map(|c| CrcParam {
                    width: c.width(),
                    poly: c.poly_int(),
                }),
                frozen_mask: spec
                    .frozen_mask()
                    .iter()
                    .map(|&b| if b == 1 { '1' } else { '0' })
                    .collect(),
            })
            .collect(),
    }
}

pub fn import_scheme(file: &SchemeFile) -> Result<GptScheme> {
    if file.version != SCHEME_FILE_VERSION {
        return config_err(format!("unsupported scheme file version {}", file.version));
    }
    let labeling = match file.labeling {
        LabelingParam::SetPartitioning => Labeling::SetPartitioning,
        LabelingParam::Gray => Labeling::Gray,
    };
    let c = build_constellation(file.bits_per_symbol, labeling)?;
    if file.levels.len() != file.bits_per_symbol {
        return config_err("level count must equal bits_per_symbol");
    }
    let mut components = Vec::with_capacity(file.levels.len());
    for (j, level) in file.levels.iter().enumerate() {
        let mut mask = Vec::with_capacity(level.frozen_mask.len());
        for ch in level.frozen_mask.chars() {
            match ch {
                '0' => mask.push(0u8),
                '1' => mask.push(1u8),
                _ => return config_err(format!("level {j}: frozen_mask must be 0/1 characters")),
            }
        }
        if mask.len() != file.block_length {
            return config_err(format!("level {j}: frozen_mask length must be block_length"));
        }
        let crc = match level.crc {
            Some(CrcParam { width, poly }) => Some(CrcSpec::from_int(width, poly)?),
            None => None,
        };
        let spec = PolarCodeSpec::new(file.block_length, mask, vec![0; file.block_length], crc)?;
        if spec.info_len() != level.info_bits {
            return config_err(format!(
                "level {j}: mask encodes {} information bits, file says {}",
                spec.info_len(),
                level.info_bits
            ));
        }
        components.push(spec);
    }
    let demap = match file.demap {
        DemapParam::Exact => DemapMethod::Exact,
        DemapParam::MaxLog => DemapMethod::MaxLog,
    };
    Ok(GptScheme::from_parts(
        c,
        components,
        file.design_sigma2,
        demap,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentConfig;

    #[test]
    fn export_import_round_trips() {
        let cfg = ExperimentConfig::from_json(
            r#"{
                "scheme": {"bits_per_symbol": 2, "block_length": 32, "info_bits": 24,
                           "crc": {"width": 8, "poly": 469}},
                "seed": 5
            }"#,
        )
        .unwrap();
        let scheme = cfg.build_scheme().unwrap();
        let file = export_scheme(&scheme, ConstructionParam::Ga);
        let text = serde_json::to_string_pretty(&file).unwrap();
        let parsed: SchemeFile = serde_json::from_str(&text).unwrap();
        let back = import_scheme(&parsed).unwrap();
        assert_eq!(back.total_info(), scheme.total_info());
        assert_eq!(back.level_info(), scheme.level_info());
        assert_eq!(back.design_sigma2(), scheme.design_sigma2());
        for (a, b) in back.components().iter().zip(scheme.components()) {
            assert_eq!(a.frozen_mask(), b.frozen_mask());
            assert_eq!(a.crc().map(|c| c.poly_int()), b.crc().map(|c| c.poly_int()));
        }
    }

    #[test]
    fn import_rejects_inconsistent_files() {
        let cfg = ExperimentConfig::from_json(
            r#"{"scheme": {"bits_per_symbol": 1, "block_length": 8, "info_bits": 4}, "seed": 0}"#,
        )
        .unwrap();
        let scheme = cfg.build_scheme().unwrap();
        let good = export_scheme(&scheme, ConstructionParam::Ga);
        let mut bad = good.clone();
        bad.levels[0].info_bits += 1;
        assert!(import_scheme(&bad).is_err());
        let mut bad = good.clone();
        bad.levels[0].frozen_mask.push('1');
        assert!(import_scheme(&bad).is_err());
        let mut bad = good.clone();
        bad.levels[0].frozen_mask = bad.levels[0].frozen_mask.replace('0', "x");
        assert!(import_scheme(&bad).is_err());
        let mut bad = good;
        bad.version = 99;
        assert!(import_scheme(&bad).is_err());
    }
}
