//! Thin wrappers over `libm` plus a few numerically careful helpers.
//! All float math in the crate routes through here so the core stays
//! `no_std` and bit-for-bit reproducible across platforms.

pub(crate) use libm::{cos, exp, fabs, log, log1p, pow, sin, sqrt};

pub(crate) const LN_2: f64 = core::f64::consts::LN_2;
pub(crate) const PI: f64 = core::f64::consts::PI;

/// log(1 + e^x) without overflow for large |x|.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + log1p(exp(-x))
    } else {
        log1p(exp(x))
    }
}

/// log2(1 + e^-x); the bitwise uncertainty of a correct-sign LLR x.
pub(crate) fn log2_1p_exp_neg(x: f64) -> f64 {
    softplus(-x) / LN_2
}

/// log(sum of e^{t}) over the first `len` entries of `terms`.
/// Max-shifted; returns -inf for an empty set.
pub(crate) fn log_sum_exp(terms: &[f64], len: usize) -> f64 {
    debug_assert!(len <= terms.len());
    if len == 0 {
        return f64::NEG_INFINITY;
    }
    if len == 1 {
        return terms[0];
    }
    let mut max = terms[0];
    for &t in &terms[1..len] {
        if t > max {
            max = t;
        }
    }
    if !max.is_finite() {
        return max;
    }
    let mut acc = 0.0;
    for &t in &terms[..len] {
        acc += exp(t - max);
    }
    max + log(acc)
}

/// Max over the first `len` entries (the max-log surrogate of
/// `log_sum_exp`); -inf for an empty set.
pub(crate) fn max_term(terms: &[f64], len: usize) -> f64 {
    let mut max = f64::NEG_INFINITY;
    for &t in &terms[..len] {
        if t > max {
            max = t;
        }
    }
    max
}
