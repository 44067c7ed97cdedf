//! Information-budget placement: frozen sets and per-level rates.

use alloc::vec::Vec;

use super::{bit_level_capacities, equivalent_snr_with, CapacityParams, ReliabilityProfile};
use crate::modem::Constellation;
use crate::{config_err, Result};

/// Information bits assigned to each bit level, plus the design noise
/// variance the split was computed at.
#[derive(Debug, Clone, PartialEq)]
pub struct RateAllocation {
    /// Information bits per level, summing exactly to the request.
    pub level_info: Vec<usize>,
    /// Variance at which the total capacity meets the request.
    pub sigma2: f64,
}

/// Freezes all but the `payload_len` most reliable positions of a
/// reliability profile. Equal scores freeze the lower index.
pub fn select_frozen(payload_len: usize, profile: &ReliabilityProfile) -> Result<Vec<u8>> {
    let n = profile.block_length();
    if payload_len > n {
        return config_err("payload exceeds block length");
    }
    let scores = profile.scores();
    let mut order: Vec<usize> = (0..n).collect();
    // Descending score; on ties the higher index sorts first and so
    // stays unfrozen.
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(b.cmp(&a)));
    let mut mask = alloc::vec![1u8; n];
    for &i in order.iter().take(payload_len) {
        mask[i] = 0;
    }
    Ok(mask)
}

/// Largest-remainder rounding of `ideal` (all entries in `[0, cap]`)
/// to integers summing exactly to `total`. Ties hand the extra bit to
/// the lower level and take removals from the higher level.
pub(crate) fn split_budget(ideal: &[f64], total: usize, cap: usize) -> Vec<usize> {
    let mut out: Vec<usize> = ideal.iter().map(|&x| x as usize).collect();
    let mut have: i64 = out.iter().map(|&k| k as i64).sum();
    while have < total as i64 {
        // Most under-allocated level that still has room.
        let mut best: Option<usize> = None;
        for j in 0..out.len() {
            if out[j] >= cap {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    let db = out[b] as f64 - ideal[b];
                    let dj = out[j] as f64 - ideal[j];
                    dj < db
                }
            };
            if better {
                best = Some(j);
            }
        }
        out[best.expect("budget exceeds capacity")] += 1;
        have += 1;
    }
    while have > total as i64 {
        // Most over-allocated level that still has bits.
        let mut best: Option<usize> = None;
        for j in 0..out.len() {
            if out[j] == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => {
                    let db = out[b] as f64 - ideal[b];
                    let dj = out[j] as f64 - ideal[j];
                    dj >= db
                }
            };
            if better {
                best = Some(j);
            }
        }
        out[best.expect("nothing left to remove")] -= 1;
        have -= 1;
    }
    out
}

/// Splits `info_len` information bits across the bit levels in one
/// shot: finds the variance where the total capacity equals
/// `info_len / block_length` bits per symbol, then assigns each level
/// its capacity share of the budget (largest remainder, exact sum).
pub fn rate_fill(
    c: &Constellation,
    block_length: usize,
    info_len: usize,
    params: &CapacityParams,
) -> Result<RateAllocation> {
    let m = c.bits_per_symbol();
    if block_length == 0 || !block_length.is_power_of_two() {
        return config_err("block length must be a power of two");
    }
    if info_len == 0 || info_len >= block_length * m {
        return config_err(
            "information length must lie strictly between 0 and the carried bits",
        );
    }
    let n = block_length as f64;
    let target = info_len as f64 / n;
    let sigma2 = equivalent_snr_with(c, target, params)?;
    let profile = bit_level_capacities(c, sigma2, params)?;
    let ideal: Vec<f64> = profile.level_capacity.iter().map(|&cap| cap * n).collect();
    let level_info = split_budget(&ideal, info_len, block_length);
    Ok(RateAllocation { level_info, sigma2 })
}
