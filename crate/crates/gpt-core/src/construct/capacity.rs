//! Monte Carlo bit-level capacities and the equivalent-noise search.
//!
//! Capacities are estimated with a fixed-seed sampler, so every
//! function here is a pure function of its arguments: the same
//! constellation, variance, and parameters always return the same
//! estimate. The equivalent-noise search exploits this by treating
//! the estimator as a smooth deterministic function of the variance
//! (common random numbers) and root-finding on it directly.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::math::{exp, log2_1p_exp_neg, sqrt};
use crate::modem::{check_sigma2, symbol_level_llr, Constellation, DemapMethod, NormalSource};
use crate::{config_err, numeric_err, Result, LLR_CLAMP};

/// Seed behind [`CapacityParams::default`]; any fixed value keeps
/// construction reproducible.
const DEFAULT_CONSTRUCTION_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// Monte Carlo budget for capacity estimation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityParams {
    /// Channel uses drawn per estimate (rounded down to pairs; each
    /// pair shares one noise magnitude with opposite signs).
    pub samples: usize,
    pub seed: u64,
}

impl Default for CapacityParams {
    fn default() -> Self {
        Self {
            samples: 1 << 20,
            seed: DEFAULT_CONSTRUCTION_SEED,
        }
    }
}

/// Estimated per-level capacities of a constellation at one noise
/// variance, in bits, conditioned on all earlier levels.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityProfile {
    /// Capacity of each bit level given the levels before it.
    pub level_capacity: Vec<f64>,
    /// Sum over levels: bits per symbol.
    pub total: f64,
    /// Noise variance per real dimension the profile was taken at.
    pub sigma2: f64,
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return config_err("capacity estimation needs at least two samples");
    }
    Ok(())
}

/// Shared Monte Carlo sweep: for every level, accumulates `f(level,
/// llr_toward_true_bit)` over random labels and antithetic noise
/// pairs, and returns the per-level means.
fn level_means(
    c: &Constellation,
    sigma2: f64,
    samples: usize,
    seed: u64,
    f: impl Fn(f64) -> f64,
) -> Vec<f64> {
    let m = c.bits_per_symbol();
    let sigma = sqrt(sigma2);
    let mut acc = alloc::vec![0.0f64; m];
    let mut prior = alloc::vec![0u8; m];
    let mut src = NormalSource::new(seed);
    let pairs = samples / 2;
    for _ in 0..pairs {
        let raw = src.next_u64() as usize;
        for d in 0..c.dimension_count() {
            let mb = c.dim_bits(d);
            let off = c.dim_level_offset(d);
            let label = (raw >> off) & ((1 << mb) - 1);
            let amp = c.dim_amplitudes(d)[label];
            let z = src.next_normal();
            for &sign in &[1.0, -1.0] {
                let y_d = amp + sigma * sign * z;
                let y = if d == 0 {
                    Complex64::new(y_d, 0.0)
                } else {
                    Complex64::new(0.0, y_d)
                };
                for t in 0..mb {
                    let level = off + t;
                    for k in 0..t {
                        prior[off + k] = ((label >> k) & 1) as u8;
                    }
                    // Entries outside off..off+t are stale but unread.
                    let llr =
                        symbol_level_llr(DemapMethod::Exact, y, level, &prior[..level], c, sigma2);
                    let b = ((label >> t) & 1) as u8;
                    let toward = if b == 0 { llr } else { -llr };
                    acc[level] += f(toward);
                }
            }
        }
    }
    let norm = 1.0 / (2 * pairs) as f64;
    acc.iter().map(|a| a * norm).collect()
}

/// Estimates the capacity of every bit level at noise variance
/// `sigma2` per real dimension, each level conditioned on perfect
/// knowledge of the levels before it.
pub fn bit_level_capacities(
    c: &Constellation,
    sigma2: f64,
    params: &CapacityParams,
) -> Result<CapacityProfile> {
    check_sigma2(sigma2)?;
    check_samples(params.samples)?;
    let losses = level_means(c, sigma2, params.samples, params.seed, log2_1p_exp_neg);
    let level_capacity: Vec<f64> = losses.iter().map(|l| (1.0 - l).clamp(0.0, 1.0)).collect();
    let total = level_capacity.iter().sum();
    Ok(CapacityProfile {
        level_capacity,
        total,
        sigma2,
    })
}

/// Mean magnitude of the (clamped) demapper LLR at every level, each
/// conditioned on the true bits of the levels before it. These means
/// seed the Gaussian-approximation construction.
pub fn level_llr_magnitude_means(
    c: &Constellation,
    sigma2: f64,
    samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    check_sigma2(sigma2)?;
    check_samples(samples)?;
    Ok(level_means(c, sigma2, samples, seed, |toward| {
        let mag = if toward < 0.0 { -toward } else { toward };
        mag.min(LLR_CLAMP)
    }))
}

/// [`equivalent_snr`] with an explicit Monte Carlo budget.
pub fn equivalent_snr_with(
    c: &Constellation,
    target_bits_per_symbol: f64,
    params: &CapacityParams,
) -> Result<f64> {
    let m = c.bits_per_symbol() as f64;
    if !(target_bits_per_symbol > 0.0 && target_bits_per_symbol < m) {
        return config_err("target capacity must lie strictly between 0 and bits per symbol");
    }
    check_samples(params.samples)?;
    let coarse = params.samples.clamp(2, 1 << 14);
    let eval = |ln_s2: f64, samples: usize| -> Result<f64> {
        let p = CapacityParams {
            samples,
            seed: params.seed,
        };
        Ok(bit_level_capacities(c, exp(ln_s2), &p)?.total - target_bits_per_symbol)
    };

    // Bracket: capacity falls as the variance grows.
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    let mut f_lo = eval(lo, coarse)?;
    let mut f_hi = f_lo;
    let mut grew = 0;
    while f_lo <= 0.0 {
        lo -= 2.0;
        f_lo = eval(lo, coarse)?;
        grew += 1;
        if grew > 40 {
            return numeric_err("no bracket below the target capacity");
        }
    }
    while f_hi >= 0.0 {
        hi += 2.0;
        f_hi = eval(hi, coarse)?;
        grew += 1;
        if grew > 80 {
            return numeric_err("no bracket above the target capacity");
        }
    }
    // Coarse bisection in the log domain.
    for _ in 0..18 {
        let mid = 0.5 * (lo + hi);
        if eval(mid, coarse)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Re-anchor the bracket with the full-budget estimator, widening
    // a little if the coarse and full estimates disagree at the ends.
    let mut widen = 0.05;
    loop {
        f_lo = eval(lo, params.samples)?;
        f_hi = eval(hi, params.samples)?;
        if f_lo > 0.0 && f_hi < 0.0 {
            break;
        }
        lo -= widen;
        hi += widen;
        widen *= 2.0;
        if widen > 8.0 {
            return numeric_err("capacity bracket collapsed during refinement");
        }
    }
    // Guarded secant (regula falsi flavored) to the full-budget root.
    for _ in 0..60 {
        let denom = f_lo - f_hi;
        let mut x = if denom != 0.0 {
            lo + (hi - lo) * f_lo / denom
        } else {
            0.5 * (lo + hi)
        };
        if !(x > lo && x < hi) {
            x = 0.5 * (lo + hi);
        }
        let fx = eval(x, params.samples)?;
        if fx.abs() <= 1e-6 || hi - lo < 1e-12 {
            return Ok(exp(x));
        }
        if fx > 0.0 {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
    }
    let x = 0.5 * (lo + hi);
    if eval(x, params.samples)?.abs() <= 1e-3 {
        return Ok(exp(x));
    }
    numeric_err("equivalent-noise search did not converge")
}

/// Finds the noise variance per real dimension at which the total
/// bit-level capacity of `c` equals `target_bits_per_symbol`, with
/// the default Monte Carlo budget.
pub fn equivalent_snr(c: &Constellation, target_bits_per_symbol: f64) -> Result<f64> {
    equivalent_snr_with(c, target_bits_per_symbol, &CapacityParams::default())
}
