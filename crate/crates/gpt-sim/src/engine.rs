//! The Monte Carlo engine: per-trial seeding, the encode - channel -
//! decode loop, and deterministic early stopping.
//!
//! Every trial derives its randomness from a pure function of
//! (master seed, point index, trial index, lane), so results do not
//! depend on scheduling or worker count. Early stopping is decided
//! on whole batches for the same reason.

use gpt_core::codec::{hd_msd_decode, msc_decode, pmi_scl_decode};
use gpt_core::construct::GptScheme;
use gpt_core::modem::ChannelModel;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use std::time::Instant;

use crate::config::{DecoderKindParam, DecoderParams, ExperimentConfig, StopRule};
use crate::error::Result;

/// Documented in every report so numbers can be reproduced without
/// reading the source.
pub const SNR_CONVENTION: &str = "snr_db is Es/N0 per symbol at unit symbol energy; \
noise variance per real dimension = 10^(-snr_db/10)/2; \
trial rng seed = splitmix64 chain over (master_seed, point_index, trial_index, lane), \
lanes: data=0, noise=1";

/// Trials decided per early-stop check; results are invariant to this
/// as long as everyone agrees on it, so it is a fixed constant.
const BATCH: u64 = 256;

/// Noise variance per real dimension at unit symbol energy.
pub fn sigma2_from_snr_db(snr_db: f64) -> f64 {
    0.5 * 10f64.powf(-snr_db / 10.0)
}

/// Information-bit SNR implied by a symbol SNR and the scheme's rate
/// in bits per symbol.
pub fn eb_n0_db(snr_db: f64, info_bits_per_symbol: f64) -> f64 {
    snr_db - 10.0 * info_bits_per_symbol.log10()
}

/// Randomness consumers within one trial.
#[derive(Debug, Clone, Copy)]
pub enum Lane {
    Data = 0,
    Noise = 1,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The documented pure seed function: absorb each coordinate into a
/// splitmix64 chain.
pub fn trial_seed(master_seed: u64, point_index: u64, trial_index: u64, lane: Lane) -> u64 {
    let mut z = splitmix64(master_seed);
    for w in [point_index, trial_index, lane as u64] {
        z = splitmix64(z ^ w);
    }
    z
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut bits = Vec::with_capacity(len);
    let mut word = 0u64;
    for i in 0..len {
        if i % 64 == 0 {
            word = rng.next_u64();
        }
        bits.push((word & 1) as u8);
        word >>= 1;
    }
    bits
}

/// One measured SNR point. `bler` and `ber` are plain ratios of the
/// counts; `seconds` is wall time and the only nondeterministic
/// field.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub snr_db: f64,
    pub trials: u64,
    pub block_errors: u64,
    pub bler: f64,
    pub bit_errors: u64,
    pub ber: f64,
    pub seconds: f64,
}

fn one_trial(
    scheme: &GptScheme,
    decoder: &DecoderParams,
    sigma2: f64,
    master_seed: u64,
    point_index: u64,
    trial: u64,
) -> Result<(u64, u64)> {
    let mut data = ChaCha8Rng::seed_from_u64(trial_seed(master_seed, point_index, trial, Lane::Data));
    let info = random_bits(&mut data, scheme.total_info());
    let cw = gpt_core::codec::gpt_encode(&info, scheme)?;
    let mut channel = ChannelModel::new(
        sigma2,
        trial_seed(master_seed, point_index, trial, Lane::Noise),
    )?;
    let obs = channel.awgn(&cw.symbols, scheme.constellation());
    let decoded = match decoder.kind {
        DecoderKindParam::Msc => msc_decode(&obs, scheme, sigma2)?,
        DecoderKindParam::HdMsd => hd_msd_decode(&obs, scheme, sigma2, decoder.list_size)?,
        DecoderKindParam::PmiScl => pmi_scl_decode(&obs, scheme, sigma2, decoder.list_size)?,
    };
    let bit_errors = info
        .iter()
        .zip(&decoded.info_bits)
        .filter(|(a, b)| a != b)
        .count() as u64;
    Ok((u64::from(bit_errors > 0), bit_errors))
}

/// Runs one SNR point to the stop rule: batches of trials, stopping
/// after the first whole batch that satisfies the error budget or
/// exhausts the trial budget.
pub fn run_point(
    scheme: &GptScheme,
    decoder: &DecoderParams,
    snr_db: f64,
    stop: &StopRule,
    master_seed: u64,
    point_index: u64,
) -> Result<PointResult> {
    let sigma2 = sigma2_from_snr_db(snr_db);
    let start = Instant::now();
    let mut trials = 0u64;
    let mut block_errors = 0u64;
    let mut bit_errors = 0u64;
    while trials < stop.max_trials && block_errors < stop.min_block_errors {
        let batch = BATCH.min(stop.max_trials - trials);
        let (be, bbe) = (trials..trials + batch)
            .into_par_iter()
            .map(|t| one_trial(scheme, decoder, sigma2, master_seed, point_index, t))
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
        trials += batch;
        block_errors += be;
        bit_errors += bbe;
    }
    let k = scheme.total_info() as f64;
    Ok(PointResult {
        snr_db,
        trials,
        block_errors,
        bler: block_errors as f64 / trials as f64,
        bit_errors,
        ber: bit_errors as f64 / (trials as f64 * k),
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Builds the scheme once and runs every SNR point in grid order.
pub fn run_sweep(config: &ExperimentConfig) -> Result<(GptScheme, Vec<PointResult>)> {
    config.validate_for_sim()?;
    let scheme = config.build_scheme().map_err(|e| match e {
        crate::SimError::Config(m) => crate::SimError::Config(format!("construction: {m}")),
        crate::SimError::Numeric(m) => crate::SimError::Numeric(format!("construction: {m}")),
        other => other,
    })?;
    let decoder = config.decoder.as_ref().expect("validated");
    let grid = config.snr_db.as_ref().expect("validated");
    let mut points = Vec::with_capacity(grid.len());
    for (i, &snr) in grid.iter().enumerate() {
        points.push(run_point(
            &scheme,
            decoder,
            snr,
            &config.stop,
            config.seed,
            i as u64,
        )?);
    }
    Ok((scheme, points))
}
