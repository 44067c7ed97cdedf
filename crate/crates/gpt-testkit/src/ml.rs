//! Exhaustive maximum-likelihood decoders for tiny instances. They
//! enumerate the entire codebook, so they are exact by construction
//! and serve as the ground truth the fast decoders are measured
//! against.

use gpt_core::codec::gpt_encode;
use gpt_core::construct::GptScheme;
use gpt_core::polar::{crc_attach, embed_info, polar_transform, PolarCodeSpec};
use num_complex::Complex64;

/// Outcome of an exhaustive search: the winner, its cost, and the
/// margin to the runner-up (infinite for a one-word codebook).
#[derive(Debug, Clone, PartialEq)]
pub struct MlOutcome {
    pub info_bits: Vec<u8>,
    pub codeword: Vec<u8>,
    pub cost: f64,
    pub gap: f64,
}

/// Penalty a codeword bit pays against a channel LLR: the LLR's
/// magnitude when the bit contradicts its sign, nothing otherwise.
/// Summed over a codeword this is the decoding metric an ideal path
/// decoder would report, so ML search minimizes exactly it.
fn hinge(llr: f64, bit: u8) -> f64 {
    let hd = if llr < 0.0 { 1 } else { 0 };
    if bit != hd {
        libm::fabs(llr)
    } else {
        0.0
    }
}

/// Exhaustive ML decoding of one component code under per-bit LLRs.
///
/// Enumerates every information pattern, re-encodes it (CRC included
/// when the code carries one, which shrinks the codebook), and keeps
/// the cheapest codeword under the hinge cost.
pub fn polar_ml(llrs: &[f64], spec: &PolarCodeSpec) -> MlOutcome {
    let k = spec.info_len();
    assert!(k <= 20, "codebook too large to enumerate");
    assert_eq!(llrs.len(), spec.block_length());
    let mut best: Option<MlOutcome> = None;
    let mut second = f64::INFINITY;
    for pattern in 0..(1u64 << k) {
        let info: Vec<u8> = (0..k).map(|i| ((pattern >> i) & 1) as u8).collect();
        let payload = match spec.crc() {
            Some(c) => crc_attach(&info, c).unwrap(),
            None => info.clone(),
        };
        let u = embed_info(&payload, spec).unwrap();
        let x = polar_transform(&u).unwrap();
        let cost: f64 = x.iter().zip(llrs).map(|(&b, &l)| hinge(l, b)).sum();
        match &best {
            Some(b) if cost >= b.cost => second = second.min(cost),
            _ => {
                if let Some(b) = &best {
                    second = b.cost;
                }
                best = Some(MlOutcome {
                    info_bits: info,
                    codeword: x,
                    cost,
                    gap: 0.0,
                });
            }
        }
    }
    let mut out = best.expect("non-empty codebook");
    out.gap = second - out.cost;
    out
}

/// Exhaustive ML decoding of a whole transmission by Euclidean
/// distance over the constellation, enumerating every information
/// word of every level jointly.
///
/// The cost ignores imaginary parts for real constellations, matching
/// the channel, and omits the constant noise scaling, which cannot
/// change the argmin.
pub fn gpt_ml(obs: &[Complex64], scheme: &GptScheme) -> MlOutcome {
    let k = scheme.total_info();
    assert!(k <= 14, "codebook too large to enumerate");
    assert_eq!(obs.len(), scheme.block_length());
    let complex = scheme.constellation().is_complex();
    let mut best: Option<MlOutcome> = None;
    let mut second = f64::INFINITY;
    for pattern in 0..(1u64 << k) {
        let info: Vec<u8> = (0..k).map(|i| ((pattern >> i) & 1) as u8).collect();
        let cw = gpt_encode(&info, scheme).unwrap();
        let cost: f64 = obs
            .iter()
            .zip(&cw.symbols)
            .map(|(y, s)| {
                let dr = y.re - s.re;
                let mut d = dr * dr;
                if complex {
                    let di = y.im - s.im;
                    d += di * di;
                }
                d
            })
            .sum();
        match &best {
            Some(b) if cost >= b.cost => second = second.min(cost),
            _ => {
                if let Some(b) = &best {
                    second = b.cost;
                }
                best = Some(MlOutcome {
                    info_bits: info,
                    codeword: cw.level_bits.concat(),
                    cost,
                    gap: 0.0,
                });
            }
        }
    }
    let mut out = best.expect("non-empty codebook");
    out.gap = second - out.cost;
    out
}
