//! Harness self-check: uncoded antipodal signaling has a closed-form
//! bit error rate, so the whole encode - channel - demap - decode -
//! count pipeline can be audited against it.
//!
//! Errors are counted on code bits. At rate 1 the input-bit view
//! would multiply every channel flip through the transform and no
//! longer match the per-bit closed form.

use gpt_core::codec::{gpt_encode, msc_decode};
use gpt_core::construct::GptScheme;
use gpt_core::modem::{build_constellation, ChannelModel, DemapMethod, Labeling};
use gpt_core::polar::{polar_transform, PolarCodeSpec};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::engine::{sigma2_from_snr_db, trial_seed, Lane};
use crate::error::Result;

/// Block length of the self-check scheme. Rate 1, nothing frozen, so
/// code structure cannot mask channel behavior.
pub const SELFTEST_BLOCK: usize = 32;

/// Es/N0 grid the self-check sweeps.
pub const SELFTEST_SNRS_DB: [f64; 3] = [2.0, 4.0, 6.0];

#[derive(Debug, Clone)]
pub struct SelftestPoint {
    pub snr_db: f64,
    pub trials: u64,
    pub bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    /// Closed-form bit error rate Q(sqrt(2 Es/N0)).
    pub theory: f64,
    /// Normal deviate of the measurement against theory.
    pub z: f64,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub points: Vec<SelftestPoint>,
    pub pass: bool,
}

fn q_func(x: f64) -> f64 {
    0.5 * libm::erfc(x / core::f64::consts::SQRT_2)
}

/// Uncoded antipodal scheme: one level, nothing frozen, no CRC.
fn uncoded_bpsk() -> GptScheme {
    let c = build_constellation(1, Labeling::SetPartitioning).unwrap();
    let spec = PolarCodeSpec::new(
        SELFTEST_BLOCK,
        vec![0; SELFTEST_BLOCK],
        vec![0; SELFTEST_BLOCK],
        None,
    )
    .unwrap();
    GptScheme::from_parts(c, vec![spec], 1.0, DemapMethod::Exact).unwrap()
}

/// One trial's code-bit error count through the full pipeline.
fn code_bit_errors(
    scheme: &GptScheme,
    sigma2: f64,
    master_seed: u64,
    point_index: u64,
    trial: u64,
) -> Result<u64> {
    let mut data =
        ChaCha8Rng::seed_from_u64(trial_seed(master_seed, point_index, trial, Lane::Data));
    let mut info = Vec::with_capacity(scheme.total_info());
    let mut word = 0u64;
    for i in 0..scheme.total_info() {
        if i % 64 == 0 {
            word = data.next_u64();
        }
        info.push((word & 1) as u8);
        word >>= 1;
    }
    let cw = gpt_encode(&info, scheme)?;
    let mut channel = ChannelModel::new(
        sigma2,
        trial_seed(master_seed, point_index, trial, Lane::Noise),
    )?;
    let obs = channel.awgn(&cw.symbols, scheme.constellation());
    let decoded = msc_decode(&obs, scheme, sigma2)?;
    // Rate 1 and no CRC: the payload is the full input vector, so its
    // transform is the decoded code word.
    let xhat = polar_transform(&decoded.info_bits)?;
    Ok(xhat
        .iter()
        .zip(&cw.level_bits[0])
        .filter(|(a, b)| a != b)
        .count() as u64)
}

/// Runs `trials` blocks per SNR point and scores the measured BER
/// against theory; passes when every point lies within three
/// standard errors.
pub fn run_selftest(master_seed: u64, trials: u64) -> Result<SelftestReport> {
    let scheme = uncoded_bpsk();
    let mut points = Vec::new();
    let mut pass = true;
    for (i, &snr) in SELFTEST_SNRS_DB.iter().enumerate() {
        let sigma2 = sigma2_from_snr_db(snr);
        let bit_errors = (0..trials)
            .into_par_iter()
            .map(|t| code_bit_errors(&scheme, sigma2, master_seed, i as u64, t))
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        let bits = trials * SELFTEST_BLOCK as u64;
        let ber = bit_errors as f64 / bits as f64;
        let theory = q_func((2.0 * 10f64.powf(snr / 10.0)).sqrt());
        let se = (theory * (1.0 - theory) / bits as f64).sqrt();
        let z = (ber - theory) / se;
        pass &= z.abs() <= 3.0;
        points.push(SelftestPoint {
            snr_db: snr,
            trials,
            bits,
            bit_errors,
            ber,
            theory,
            z,
        });
    }
    Ok(SelftestReport { points, pass })
}
