//! Report assembly and rendering. CSV carries the per-point table
//! with a fixed column order; JSON carries the same rows plus the
//! config echo, conventions, and version.

use gpt_core::construct::GptScheme;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::engine::{eb_n0_db, PointResult, SNR_CONVENTION};

#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    /// Library version that produced the report.
    pub version: String,
    /// Noise and seeding conventions, spelled out.
    pub convention: String,
    /// The parsed configuration, re-serialized.
    pub config: ExperimentConfig,
    /// The input file exactly as read, byte for byte.
    pub config_text: String,
    /// Realized information rate in bits per symbol.
    pub rate_bits_per_symbol: f64,
    pub points: Vec<PointRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointRow {
    pub snr_db: f64,
    pub eb_n0_db: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub bler: f64,
    pub bit_errors: u64,
    pub ber: f64,
    pub seconds: f64,
}

pub fn build_report(
    config: &ExperimentConfig,
    config_text: &str,
    scheme: &GptScheme,
    points: Vec<PointResult>,
) -> SimReport {
    let rate = scheme.rate();
    SimReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        convention: SNR_CONVENTION.to_string(),
        config: config.clone(),
        config_text: config_text.to_string(),
        rate_bits_per_symbol: rate,
        points: points
            .into_iter()
            .map(|p| PointRow {
                snr_db: p.snr_db,
                eb_n0_db: eb_n0_db(p.snr_db, rate),
                trials: p.trials,
                block_errors: p.block_errors,
                bler: p.bler,
                bit_errors: p.bit_errors,
                ber: p.ber,
                seconds: p.seconds,
            })
            .collect(),
    }
}

/// Fixed-order CSV: snr_db, trials, block_errors, bler, bit_errors,
/// ber, seconds.
pub fn to_csv(report: &SimReport) -> String {
    let mut out = String::from("snr_db,trials,block_errors,bler,bit_errors,ber,seconds\n");
    for p in &report.points {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            p.snr_db, p.trials, p.block_errors, p.bler, p.bit_errors, p.ber, p.seconds
        ));
    }
    out
}

pub fn to_json(report: &SimReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::run_sweep;

    #[test]
    fn csv_has_the_fixed_header_and_one_row_per_point() {
        let text = r#"{
            "scheme": {"bits_per_symbol": 1, "block_length": 8, "info_bits": 4},
            "decoder": {"kind": "msc"},
            "snr_db": [2.0, 4.0],
            "stop": {"max_trials": 64, "min_block_errors": 1},
            "seed": 1
        }"#;
        let cfg = ExperimentConfig::from_json(text).unwrap();
        let (scheme, points) = run_sweep(&cfg).unwrap();
        let report = build_report(&cfg, text, &scheme, points);
        let csv = to_csv(&report);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "snr_db,trials,block_errors,bler,bit_errors,ber,seconds"
        );
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("2,"));
        assert!(lines[2].starts_with("4,"));
        assert_eq!(report.config_text, text);
        let json = to_json(&report);
        assert!(json.contains("\"convention\""));
        assert!(json.contains("\"eb_n0_db\""));
    }
}
