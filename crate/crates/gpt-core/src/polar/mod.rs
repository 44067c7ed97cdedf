//! Polar kernel: the binary polar transform, frozen-bit embedding,
//! CRC attachment, and successive-cancellation (list) decoding.
//!
//! Conventions, fixed crate-wide:
//!
//! * The transform is `x = u F^{(x)n}` with `F = [[1,0],[1,1]]` in
//!   natural bit order (no bit-reversal permutation).
//! * LLRs are `log(P(bit = 0) / P(bit = 1))`; positive favors 0.
//! * The f-update is the min-sum rule `sign(a) sign(b) min(|a|,|b|)`;
//!   the g-update is `b + (1-2u) a`.
//! * A decision `u` against an LLR `l` costs `|l|` if it disagrees
//!   with the sign of `l` and 0 otherwise, so path metrics are
//!   non-negative and accumulate monotonically.
//! * Hard decision on an LLR: `l < 0` decides 1, otherwise 0.

mod crc;
mod sc;
mod scl;
mod transform;

pub use crc::{crc_attach, crc_verify, CrcSpec};
pub use sc::{sc_decode, ScOutput};
pub(crate) use sc::sc_decode_u;
pub use scl::{scl_decode, ListPath, PathEnsemble};
pub(crate) use scl::{scl_run, SclSeed};
pub use transform::{embed_info, polar_transform};

use alloc::vec::Vec;

use crate::{config_err, Error, Result, LLR_CLAMP};

/// Min-sum check-node update.
#[inline]
pub(crate) fn f_update(a: f64, b: f64) -> f64 {
    let m = crate::math::fabs(a).min(crate::math::fabs(b));
    if (a < 0.0) != (b < 0.0) {
        -m
    } else {
        m
    }
}

/// Variable-node update given the upper branch decision `u`.
#[inline]
pub(crate) fn g_update(a: f64, b: f64, u: u8) -> f64 {
    if u == 0 {
        b + a
    } else {
        b - a
    }
}

/// Penalty of deciding `u` against LLR `l`: 0 when the decision agrees
/// with the sign of `l` (ties favor either), `|l|` otherwise.
#[inline]
pub(crate) fn penalty(l: f64, u: u8) -> f64 {
    if u == 0 {
        if l < 0.0 {
            -l
        } else {
            0.0
        }
    } else if l > 0.0 {
        l
    } else {
        0.0
    }
}

/// Hard decision under the `log(P0/P1)` convention; a zero LLR
/// resolves to 0.
#[inline]
pub(crate) fn hard_decision(l: f64) -> u8 {
    if l < 0.0 {
        1
    } else {
        0
    }
}

pub(crate) fn check_bits(bits: &[u8]) -> Result<()> {
    if bits.iter().any(|&b| b > 1) {
        return config_err("bit vectors must contain only 0 or 1");
    }
    Ok(())
}

/// A clamped vector of log-likelihood ratios under the `log(P0/P1)`
/// convention. Construction clamps every entry to `[-LLR_CLAMP,
/// LLR_CLAMP]`; NaN input is rejected as a configuration error.
#[derive(Debug, Clone, PartialEq)]
pub struct LlrVector {
    values: Vec<f64>,
}

impl LlrVector {
    /// Clamps `values` into `[-LLR_CLAMP, LLR_CLAMP]`.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| v.is_nan()) {
            return config_err("LLR vector contains NaN");
        }
        let values = values
            .into_iter()
            .map(|v| v.clamp(-LLR_CLAMP, LLR_CLAMP))
            .collect();
        Ok(Self { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

impl core::ops::Index<usize> for LlrVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// A component polar code: block length, frozen set, frozen values,
/// and optional CRC protecting the unfrozen payload.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarCodeSpec {
    block_length: usize,
    frozen_mask: Vec<u8>,
    frozen_values: Vec<u8>,
    crc: Option<CrcSpec>,
}

impl PolarCodeSpec {
    /// Builds a spec. `frozen_mask[i] = 1` freezes position `i`;
    /// `frozen_values` supplies the frozen bits (entries at unfrozen
    /// positions are ignored). When a CRC is present the unfrozen
    /// payload must leave at least one information bit after the
    /// check bits.
    pub fn new(
        block_length: usize,
        frozen_mask: Vec<u8>,
        frozen_values: Vec<u8>,
        crc: Option<CrcSpec>,
    ) -> Result<Self> {
        if block_length == 0 || !block_length.is_power_of_two() {
            return config_err("block length must be a power of two");
        }
        if frozen_mask.len() != block_length || frozen_values.len() != block_length {
            return config_err("frozen mask and values must have block length entries");
        }
        check_bits(&frozen_mask)?;
        check_bits(&frozen_values)?;
        let spec = Self {
            block_length,
            frozen_mask,
            frozen_values,
            crc,
        };
        if let Some(crc) = &spec.crc {
            let payload = spec.payload_len();
            if payload == 0 {
                return config_err("CRC configured on a fully frozen code");
            }
            if payload <= crc.width() {
                return config_err("unfrozen payload not larger than CRC width");
            }
        }
        Ok(spec)
    }

    pub fn block_length(&self) -> usize {
        self.block_length
    }

    /// log2 of the block length.
    pub fn stages(&self) -> usize {
        self.block_length.trailing_zeros() as usize
    }

    pub fn frozen_mask(&self) -> &[u8] {
        &self.frozen_mask
    }

    pub fn frozen_values(&self) -> &[u8] {
        &self.frozen_values
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen_mask[i] == 1
    }

    /// Number of unfrozen positions (information plus CRC bits).
    pub fn payload_len(&self) -> usize {
        self.frozen_mask.iter().filter(|&&m| m == 0).count()
    }

    /// Number of information bits excluding CRC bits.
    pub fn info_len(&self) -> usize {
        let payload = self.payload_len();
        match &self.crc {
            Some(c) if payload > 0 => payload - c.width(),
            _ => payload,
        }
    }

    pub fn crc(&self) -> Option<&CrcSpec> {
        self.crc.as_ref()
    }

    /// Unfrozen payload bits of a full decision vector, in ascending
    /// position order.
    pub fn extract_payload(&self, u: &[u8]) -> Vec<u8> {
        debug_assert_eq!(u.len(), self.block_length);
        (0..self.block_length)
            .filter(|&i| !self.is_frozen(i))
            .map(|i| u[i])
            .collect()
    }

    /// Payload with CRC bits stripped (identity when no CRC).
    pub fn strip_crc<'a>(&self, payload: &'a [u8]) -> &'a [u8] {
        match &self.crc {
            Some(c) => &payload[..payload.len() - c.width()],
            None => payload,
        }
    }

    /// True when the code has no CRC or the payload passes it.
    pub fn payload_passes_crc(&self, payload: &[u8]) -> bool {
        match &self.crc {
            Some(c) => crc_verify(payload, c),
            None => true,
        }
    }

    pub(crate) fn check_llr_len(&self, llrs: &LlrVector) -> Result<()> {
        if llrs.len() != self.block_length {
            return config_err("LLR vector length does not match block length");
        }
        Ok(())
    }
}

pub(crate) fn check_list_size(list_size: usize) -> Result<()> {
    if list_size == 0 {
        return Err(Error::Config(alloc::string::String::from(
            "list size must be at least 1",
        )));
    }
    Ok(())
}
