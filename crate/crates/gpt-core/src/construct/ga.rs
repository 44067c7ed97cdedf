//! Gaussian-approximation density evolution.
//!
//! Each synthetic channel is summarized by the mean of its LLR under
//! the consistent-Gaussian model (variance twice the mean). One
//! polarization step maps a channel with mean `m` to the pair
//!
//! * plus:  `2 m`
//! * minus: `phi_inv(1 - (1 - phi(m))^2)`
//!
//! where `phi(m) = 1 - E[tanh(L/2)]`, approximated piecewise by
//! `exp(0.0218 - 0.4527 m^0.86)` for small `m` and
//! `sqrt(pi/m) exp(-m/4) (1 - 10/(7m))` for large `m`. The regimes
//! are stitched at their exact crossing so `phi` stays continuous
//! and strictly decreasing, and the minus step works in the log
//! domain so block lengths with strongly polarized channels do not
//! underflow.

use alloc::vec::Vec;

use super::ReliabilityProfile;
use crate::math::{exp, fabs, log, log1p, pow, LN_2, PI};
use crate::{config_err, Result};

/// Crossing point of the two `ln phi` regimes; the root of
/// `0.0218 - 0.4527 x^0.86 = ln(sqrt(pi/x) e^{-x/4} (1 - 10/(7x)))`.
const PHI_SWITCH: f64 = 14.394352942168468;

fn ln_phi_small(x: f64) -> f64 {
    0.0218 - 0.4527 * pow(x, 0.86)
}

fn ln_phi_large(x: f64) -> f64 {
    0.5 * log(PI / x) - 0.25 * x + log1p(-10.0 / (7.0 * x))
}

/// `ln phi(x)` for `x >= 0`, continuous and strictly decreasing.
fn ln_phi(x: f64) -> f64 {
    if x < PHI_SWITCH {
        ln_phi_small(x)
    } else {
        ln_phi_large(x)
    }
}

/// Inverse of [`ln_phi`]: the `x >= 0` with `ln phi(x) = ln_y`.
fn phi_inv_ln(ln_y: f64) -> f64 {
    if ln_y >= ln_phi_small(PHI_SWITCH) {
        let t = (0.0218 - ln_y) / 0.4527;
        if t <= 0.0 {
            // phi(2 - phi) < 1 < e^0.0218 keeps t positive; guard anyway.
            return 0.0;
        }
        pow(t, 1.0 / 0.86)
    } else {
        // Newton on the decreasing ln_phi_large, guarded by a bracket.
        let mut lo = PHI_SWITCH;
        let mut hi = if -8.0 * ln_y > 2.0 * PHI_SWITCH {
            -8.0 * ln_y
        } else {
            2.0 * PHI_SWITCH
        };
        while ln_phi_large(hi) > ln_y {
            hi *= 2.0;
        }
        let mut x = (-4.0 * ln_y).clamp(lo, hi);
        for _ in 0..80 {
            let h = ln_phi_large(x) - ln_y;
            if fabs(h) < 1e-13 {
                break;
            }
            if h > 0.0 {
                lo = x;
            } else {
                hi = x;
            }
            let dh = -0.5 / x - 0.25 + 10.0 / (x * (7.0 * x - 10.0));
            let next = x - h / dh;
            x = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
        }
        x
    }
}

/// Mean of the degraded (minus) channel from a mean-`m` channel.
fn minus_mean(m: f64) -> f64 {
    let lp = ln_phi(m);
    let phi = exp(lp);
    // ln(phi (2 - phi)) = ln phi + ln 2 + ln(1 - phi/2).
    phi_inv_ln(lp + LN_2 + log1p(-0.5 * phi))
}

/// Scores the synthetic channels of a length-`block_length` polar
/// transform over a channel whose LLR mean is `design_llr_mean`, by
/// density evolution under the Gaussian approximation. Scores are the
/// evolved LLR means; higher is more reliable.
pub fn ga_reliability(block_length: usize, design_llr_mean: f64) -> Result<ReliabilityProfile> {
    if block_length == 0 || !block_length.is_power_of_two() {
        return config_err("block length must be a power of two");
    }
    if !(design_llr_mean.is_finite() && design_llr_mean > 0.0) {
        return config_err("design LLR mean must be positive and finite");
    }
    let mut means = alloc::vec![design_llr_mean];
    while means.len() < block_length {
        let mut next = Vec::with_capacity(means.len() * 2);
        for &m in &means {
            next.push(minus_mean(m));
            next.push(2.0 * m);
        }
        means = next;
    }
    Ok(ReliabilityProfile::new(means))
}
