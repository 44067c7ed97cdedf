//! Small statistics helpers for Monte Carlo verdicts: the Gaussian
//! tail, rank correlation, and a pooled two-proportion z statistic.

use core::cmp::Ordering;

/// Upper tail of the standard normal distribution.
pub fn q_func(x: f64) -> f64 {
    0.5 * libm::erfc(x / core::f64::consts::SQRT_2)
}

/// Kendall rank correlation with tie correction (tau-b), O(n^2).
pub fn kendall_tau_b(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    assert!(a.len() >= 2);
    let n = a.len();
    let mut concordant = 0i64;
    let mut discordant = 0i64;
    let mut ties_a = 0i64;
    let mut ties_b = 0i64;
    for i in 0..n {
        for j in i + 1..n {
            let da = a[i].partial_cmp(&a[j]).expect("comparable scores");
            let db = b[i].partial_cmp(&b[j]).expect("comparable scores");
            if da == Ordering::Equal {
                ties_a += 1;
            }
            if db == Ordering::Equal {
                ties_b += 1;
            }
            if da != Ordering::Equal && db != Ordering::Equal {
                if da == db {
                    concordant += 1;
                } else {
                    discordant += 1;
                }
            }
        }
    }
    let n0 = (n * (n - 1) / 2) as f64;
    let denom = libm::sqrt((n0 - ties_a as f64) * (n0 - ties_b as f64));
    (concordant - discordant) as f64 / denom
}

/// Pooled two-proportion z statistic, positive when the first
/// proportion is larger.
pub fn two_proportion_z(
    successes_a: u64,
    trials_a: u64,
    successes_b: u64,
    trials_b: u64,
) -> f64 {
    assert!(trials_a > 0 && trials_b > 0);
    let pa = successes_a as f64 / trials_a as f64;
    let pb = successes_b as f64 / trials_b as f64;
    let pool = (successes_a + successes_b) as f64 / (trials_a + trials_b) as f64;
    let se = libm::sqrt(pool * (1.0 - pool) * (1.0 / trials_a as f64 + 1.0 / trials_b as f64));
    (pa - pb) / se
}
