//! Link-level Monte Carlo simulator around `gpt-core`: experiment
//! configs, a deterministic order-independent trial engine, report
//! rendering, scheme files, and an uncoded-BER self-check.

pub mod config;
pub mod engine;
pub mod error;
pub mod report;
pub mod scheme_json;
pub mod selftest;

pub use config::{
    ConstructionParam, CrcParam, DecoderKindParam, DecoderParams, DemapParam, ExperimentConfig,
    LabelingParam, SchemeParams, StopRule,
};
pub use engine::{run_point, run_sweep, sigma2_from_snr_db, trial_seed, Lane, PointResult};
pub use error::{Result, SimError};
pub use report::{build_report, to_csv, to_json, PointRow, SimReport};
pub use scheme_json::{export_scheme, import_scheme, SchemeFile};
pub use selftest::{run_selftest, SelftestReport};
