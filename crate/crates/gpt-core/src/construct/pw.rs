//! Channel-independent polarization-weight reliability ranking.

use alloc::vec::Vec;

use super::ReliabilityProfile;
use crate::{config_err, Result};

/// Default polarization-weight base, the fourth root of two.
pub const DEFAULT_PW_BETA: f64 = 1.189_207_115_002_721;

/// Scores synthetic channel `i` as the beta-expansion of its index:
/// the sum of `beta^k` over the set bits `k` of `i` (bit 0 least
/// significant). Higher scores are more reliable.
pub fn pw_reliability(block_length: usize, beta: f64) -> Result<ReliabilityProfile> {
    if block_length == 0 || !block_length.is_power_of_two() {
        return config_err("block length must be a power of two");
    }
    if !(beta.is_finite() && beta > 1.0) {
        return config_err("polarization-weight base must be finite and greater than 1");
    }
    let stages = block_length.trailing_zeros() as usize;
    let mut powers = Vec::with_capacity(stages);
    let mut p = 1.0;
    for _ in 0..stages {
        powers.push(p);
        p *= beta;
    }
    let scores = (0..block_length)
        .map(|i| {
            (0..stages)
                .filter(|&k| (i >> k) & 1 == 1)
                .map(|k| powers[k])
                .sum()
        })
        .collect();
    Ok(ReliabilityProfile::new(scores))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::{fabs, pow};

    #[test]
    fn default_base_is_the_fourth_root_of_two() {
        assert!(fabs(DEFAULT_PW_BETA - pow(2.0, 0.25)) < 1e-15);
    }

    #[test]
    fn weights_follow_the_beta_expansion() {
        let p = pw_reliability(8, DEFAULT_PW_BETA).unwrap();
        let s = p.scores();
        assert_eq!(s[0], 0.0);
        assert!(fabs(s[3] - (1.0 + DEFAULT_PW_BETA)) < 1e-15);
        assert!(fabs(s[3] - 2.189_207_115_002_721) < 1e-12);
        // Index 7 beats every other index.
        assert!(s.iter().take(7).all(|&w| w < s[7]));
    }

    #[test]
    fn larger_indices_with_nested_bits_score_higher() {
        let p = pw_reliability(64, DEFAULT_PW_BETA).unwrap();
        let s = p.scores();
        // Adding a set bit can only raise the score.
        for i in 0..64usize {
            for k in 0..6 {
                if i >> k & 1 == 0 {
                    assert!(s[i | 1 << k] > s[i]);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(pw_reliability(12, DEFAULT_PW_BETA).is_err());
        assert!(pw_reliability(0, DEFAULT_PW_BETA).is_err());
        assert!(pw_reliability(8, 1.0).is_err());
        assert!(pw_reliability(8, f64::NAN).is_err());
    }
}
