//! Naive re-derivations of the demapper and the successive
//! cancellation recursion, written recursively over full label sets
//! rather than with the engine's factorized and flattened forms.

use gpt_core::construct::GptScheme;
use gpt_core::modem::{Constellation, DemapMethod};
use gpt_core::polar::{polar_transform, PolarCodeSpec};
use gpt_core::LLR_CLAMP;
use num_complex::Complex64;

fn log_sum_exp(exponents: &[f64]) -> f64 {
    let m = exponents.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    m + libm::log(exponents.iter().map(|&e| libm::exp(e - m)).sum::<f64>())
}

/// Level LLRs computed directly over the full label set, conditioning
/// on every earlier level's bit at each symbol. No clamping.
///
/// Mathematically the other dimension's bits cancel between
/// numerator and denominator, so this matches the engine's
/// per-dimension factorization despite conditioning on more.
pub fn naive_stage_llr(
    method: DemapMethod,
    obs: &[Complex64],
    level: usize,
    priors: &[Vec<u8>],
    c: &Constellation,
    sigma2: f64,
) -> Vec<f64> {
    assert!(level < c.bits_per_symbol());
    assert_eq!(priors.len(), level);
    let order = c.order();
    obs.iter()
        .enumerate()
        .map(|(n, y)| {
            let mut e0 = Vec::new();
            let mut e1 = Vec::new();
            'label: for lab in 0..order {
                for (k, p) in priors.iter().enumerate() {
                    if (lab >> k) & 1 != p[n] as usize {
                        continue 'label;
                    }
                }
                let s = c.point(lab);
                let mut d = (y.re - s.re) * (y.re - s.re);
                if c.is_complex() {
                    d += (y.im - s.im) * (y.im - s.im);
                }
                let e = -d / (2.0 * sigma2);
                if (lab >> level) & 1 == 0 {
                    e0.push(e);
                } else {
                    e1.push(e);
                }
            }
            match method {
                DemapMethod::Exact => log_sum_exp(&e0) - log_sum_exp(&e1),
                DemapMethod::MaxLog => {
                    let m0 = e0.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    let m1 = e1.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    m0 - m1
                }
            }
        })
        .collect()
}

/// Textbook recursive successive cancellation, decisions and penalty
/// accumulated leaf by leaf. Returns the full input-bit vector and
/// the metric.
pub fn naive_sc(llrs: &[f64], spec: &PolarCodeSpec) -> (Vec<u8>, f64) {
    assert_eq!(llrs.len(), spec.block_length());
    let mut u = Vec::with_capacity(spec.block_length());
    let mut metric = 0.0;
    sc_node(llrs, 0, spec, None, &mut u, &mut metric);
    (u, metric)
}

/// Metric an SC pass would accumulate if every decision were forced
/// to the given input-bit vector.
pub fn replay_metric(llrs: &[f64], spec: &PolarCodeSpec, forced: &[u8]) -> f64 {
    assert_eq!(llrs.len(), spec.block_length());
    assert_eq!(forced.len(), spec.block_length());
    let mut u = Vec::with_capacity(spec.block_length());
    let mut metric = 0.0;
    sc_node(llrs, 0, spec, Some(forced), &mut u, &mut metric);
    metric
}

/// One SC subtree: split, f-combine, recurse left, g-combine with the
/// left partial sums, recurse right, return this subtree's code bits.
fn sc_node(
    llrs: &[f64],
    base: usize,
    spec: &PolarCodeSpec,
    forced: Option<&[u8]>,
    u: &mut Vec<u8>,
    metric: &mut f64,
) -> Vec<u8> {
    if llrs.len() == 1 {
        let l = llrs[0];
        let bit = match forced {
            Some(f) => f[base],
            None if spec.is_frozen(base) => spec.frozen_values()[base],
            None => u8::from(l < 0.0),
        };
        let hard = u8::from(l < 0.0);
        if bit != hard {
            *metric += libm::fabs(l);
        }
        u.push(bit);
        return vec![bit];
    }
    let half = llrs.len() / 2;
    let (a, b) = llrs.split_at(half);
    let f: Vec<f64> = (0..half)
        .map(|i| {
            let mag = libm::fabs(a[i]).min(libm::fabs(b[i]));
            if (a[i] < 0.0) != (b[i] < 0.0) {
                -mag
            } else {
                mag
            }
        })
        .collect();
    let left = sc_node(&f, base, spec, forced, u, metric);
    let g: Vec<f64> = (0..half)
        .map(|i| b[i] + (1.0 - 2.0 * f64::from(left[i])) * a[i])
        .collect();
    let right = sc_node(&g, base + half, spec, forced, u, metric);
    let mut x: Vec<u8> = (0..half).map(|i| left[i] ^ right[i]).collect();
    x.extend_from_slice(&right);
    x
}

/// Total metric of a full set of per-level decisions against an
/// observation: naive demapping (clamped like the engine's channel
/// LLRs) followed by forced-decision replay, level by level.
pub fn compound_replay_metric(
    obs: &[Complex64],
    scheme: &GptScheme,
    sigma2: f64,
    decisions: &[Vec<u8>],
) -> f64 {
    assert_eq!(decisions.len(), scheme.bits_per_symbol());
    let c = scheme.constellation();
    let mut priors: Vec<Vec<u8>> = Vec::new();
    let mut total = 0.0;
    for (j, spec) in scheme.components().iter().enumerate() {
        let raw = naive_stage_llr(scheme.demap(), obs, j, &priors, c, sigma2);
        let clamped: Vec<f64> = raw.iter().map(|l| l.clamp(-LLR_CLAMP, LLR_CLAMP)).collect();
        total += replay_metric(&clamped, spec, &decisions[j]);
        priors.push(polar_transform(&decisions[j]).unwrap());
    }
    total
}
