//! The compound chain: encoding across the signal-polarized levels
//! and the three receivers built on it (multistage SC, per-level
//! hard-decision list MSD, and list decoding with inherited path
//! metrics).

mod multistage;

pub use multistage::{
    hd_msd_decode, hd_msd_decode_with_ensemble, msc_decode, pmi_scl_decode,
    pmi_scl_decode_with_ensemble,
};

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::construct::GptScheme;
use crate::modem::modulate;
use crate::polar::{check_bits, crc_attach, embed_info, polar_transform};
use crate::{config_err, Result};

/// An encoded transmission: per-level code bits and the symbols they
/// label.
#[derive(Debug, Clone, PartialEq)]
pub struct Codeword {
    /// Code bits of each level, after the polar transform.
    pub level_bits: Vec<Vec<u8>>,
    pub symbols: Vec<Complex64>,
}

/// Which receiver produced a [`DecodeResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecoderKind {
    /// Multistage successive cancellation, one hard pass per level.
    Msc,
    /// Per-level list decoding with hard inter-level commitment.
    HdMsd,
    /// Compound list decoding; survivors inherit metrics and
    /// conditioning across levels.
    PmiScl,
}

/// Decoded information bits plus the path bookkeeping behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    /// All levels' information bits concatenated in level order.
    pub info_bits: Vec<u8>,
    /// Accumulated penalty of the selected decoding path, summed over
    /// every level.
    pub metric: f64,
    /// Per-level CRC outcome of the selected path, vacuously true for
    /// levels without a CRC; empty when no level carries one.
    pub crc_pass: Vec<bool>,
    pub decoder: DecoderKind,
}

/// Encodes `info_bits` (all levels concatenated in level order): per
/// level CRC attachment, frozen-bit embedding, and polar transform,
/// then one modulation across levels.
pub fn gpt_encode(info_bits: &[u8], scheme: &GptScheme) -> Result<Codeword> {
    if info_bits.len() != scheme.total_info() {
        return config_err("information length does not match the scheme");
    }
    check_bits(info_bits)?;
    let mut level_bits = Vec::with_capacity(scheme.bits_per_symbol());
    let mut cursor = 0;
    for spec in scheme.components() {
        let chunk = &info_bits[cursor..cursor + spec.info_len()];
        cursor += spec.info_len();
        let payload = match spec.crc() {
            Some(c) => crc_attach(chunk, c)?,
            None => chunk.to_vec(),
        };
        let u = embed_info(&payload, spec)?;
        level_bits.push(polar_transform(&u)?);
    }
    let symbols = modulate(&level_bits, scheme.constellation())?;
    Ok(Codeword {
        level_bits,
        symbols,
    })
}

/// Concatenates the payloads of a full decision set into a
/// [`DecodeResult`], evaluating per-level CRCs along the way.
pub(crate) fn assemble_result(
    scheme: &GptScheme,
    decisions: &[Vec<u8>],
    metric: f64,
    decoder: DecoderKind,
) -> DecodeResult {
    let mut info_bits = Vec::with_capacity(scheme.total_info());
    let mut crc_pass = Vec::with_capacity(scheme.bits_per_symbol());
    let mut any_crc = false;
    for (spec, u) in scheme.components().iter().zip(decisions) {
        let payload = spec.extract_payload(u);
        any_crc |= spec.crc().is_some();
        crc_pass.push(spec.payload_passes_crc(&payload));
        info_bits.extend_from_slice(spec.strip_crc(&payload));
    }
    if !any_crc {
        crc_pass.clear();
    }
    DecodeResult {
        info_bits,
        metric,
        crc_pass,
        decoder,
    }
}

/// Re-encodes a path's u-domain decisions into per-level code bits
/// for conditioning the next level's demapping.
pub(crate) fn transformed_levels(decisions: &[Vec<u8>]) -> Result<Vec<Vec<u8>>> {
    decisions.iter().map(|u| polar_transform(u)).collect()
}

pub(crate) fn check_observation(scheme: &GptScheme, obs: &[Complex64]) -> Result<()> {
    if obs.len() != scheme.block_length() {
        return config_err("observation length does not match the block length");
    }
    Ok(())
}
