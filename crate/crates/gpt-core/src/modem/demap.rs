//! Stage demapper: per-level LLRs conditioned on earlier levels.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::{check_sigma2, Constellation, DemapMethod};
use crate::math::{log_sum_exp, max_term};
use crate::polar::{check_bits, LlrVector};
use crate::{config_err, Result};

/// Stack budget for the per-hypothesis exponent lists; one real
/// dimension never carries more than 32 amplitudes here.
const MAX_DIM_LABELS: usize = 64;

/// LLR of level `level` for one observation, given that symbol's
/// earlier label bits (`prior_bits[j]` is the level-`j` bit,
/// `prior_bits.len() == level`). Bits of the other QAM dimension are
/// accepted and ignored. Unclamped.
pub(crate) fn symbol_level_llr(
    method: DemapMethod,
    y: Complex64,
    level: usize,
    prior_bits: &[u8],
    c: &Constellation,
    sigma2: f64,
) -> f64 {
    let (d, t) = c.level_dimension(level);
    let off = c.dim_level_offset(d);
    let mb = c.dim_bits(d);
    let amps = c.dim_amplitudes(d);
    let y_d = if d == 0 { y.re } else { y.im };
    let inv = 1.0 / (2.0 * sigma2);

    let mut num = [0.0f64; MAX_DIM_LABELS];
    let mut den = [0.0f64; MAX_DIM_LABELS];
    let (mut nn, mut nd) = (0usize, 0usize);
    'labels: for lab in 0..(1usize << mb) {
        for k in 0..t {
            let want = prior_bits[off + k];
            if ((lab >> k) & 1) as u8 != want {
                continue 'labels;
            }
        }
        let diff = y_d - amps[lab];
        let e = -diff * diff * inv;
        if (lab >> t) & 1 == 0 {
            num[nn] = e;
            nn += 1;
        } else {
            den[nd] = e;
            nd += 1;
        }
    }
    // Both hypothesis sets are non-empty: fixing t prefix bits leaves
    // a full subtree containing both values of bit t.
    match method {
        DemapMethod::Exact => log_sum_exp(&num, nn) - log_sum_exp(&den, nd),
        DemapMethod::MaxLog => max_term(&num, nn) - max_term(&den, nd),
    }
}

fn check_demap_args(
    obs: &[Complex64],
    level: usize,
    priors: &[Vec<u8>],
    c: &Constellation,
    sigma2: f64,
) -> Result<()> {
    check_sigma2(sigma2)?;
    if level >= c.bits_per_symbol() {
        return config_err("demap level exceeds bits per symbol");
    }
    if priors.len() != level {
        return config_err("demap needs exactly one prior bit vector per earlier level");
    }
    for p in priors {
        if p.len() != obs.len() {
            return config_err("prior bit vectors must match the observation length");
        }
        check_bits(p)?;
    }
    Ok(())
}

/// Per-symbol LLRs of level `level` given decided bits of all earlier
/// levels, without the decoder-input clamp.
pub(crate) fn stage_llr_unclamped(
    method: DemapMethod,
    obs: &[Complex64],
    level: usize,
    priors: &[Vec<u8>],
    c: &Constellation,
    sigma2: f64,
) -> Result<Vec<f64>> {
    check_demap_args(obs, level, priors, c, sigma2)?;
    let mut prior_bits = alloc::vec![0u8; level];
    let mut out = Vec::with_capacity(obs.len());
    for (s, &y) in obs.iter().enumerate() {
        for (j, p) in priors.iter().enumerate() {
            prior_bits[j] = p[s];
        }
        out.push(symbol_level_llr(method, y, level, &prior_bits, c, sigma2));
    }
    Ok(out)
}

/// Demaps level `level` of every observation into an LLR, conditioned
/// on the earlier levels' bits (`priors[j]` holds level `j`, one bit
/// per observation). Exact log-sum-exp combining; clamped.
pub fn stage_llr(
    obs: &[Complex64],
    level: usize,
    priors: &[Vec<u8>],
    c: &Constellation,
    sigma2: f64,
) -> Result<LlrVector> {
    stage_llr_with(DemapMethod::Exact, obs, level, priors, c, sigma2)
}

/// [`stage_llr`] with an explicit combining rule.
pub fn stage_llr_with(
    method: DemapMethod,
    obs: &[Complex64],
    level: usize,
    priors: &[Vec<u8>],
    c: &Constellation,
    sigma2: f64,
) -> Result<LlrVector> {
    LlrVector::new(stage_llr_unclamped(method, obs, level, priors, c, sigma2)?)
}
