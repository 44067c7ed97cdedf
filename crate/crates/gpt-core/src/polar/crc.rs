//! Bit-serial CRC over GF(2): MSB-first long division with a zero
//! initial register and no final XOR.

use alloc::vec::Vec;

use super::check_bits;
use crate::{config_err, Result};

/// Default CRC width.
pub const DEFAULT_CRC_WIDTH: usize = 8;

/// A CRC polynomial of degree `width`, stored MSB-first with the
/// leading coefficient included (`width + 1` bits).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrcSpec {
    width: usize,
    poly: Vec<u8>,
}

impl CrcSpec {
    /// Builds a CRC spec from a degree-`width` polynomial given
    /// MSB-first with its leading coefficient. The polynomial needs at
    /// least two taps to guarantee single-bit error detection.
    pub fn new(width: usize, poly: Vec<u8>) -> Result<Self> {
        if width == 0 {
            return config_err("CRC width must be positive");
        }
        if poly.len() != width + 1 {
            return config_err("CRC polynomial must have width + 1 coefficients");
        }
        check_bits(&poly)?;
        if poly[0] != 1 {
            return config_err("CRC polynomial must have leading coefficient 1");
        }
        if poly.iter().filter(|&&b| b == 1).count() < 2 {
            return config_err("CRC polynomial needs at least two taps");
        }
        Ok(Self { width, poly })
    }

    /// Builds a spec from the polynomial's integer encoding, leading
    /// coefficient included (the default width-8 polynomial is 0x1D5).
    pub fn from_int(width: usize, poly: u64) -> Result<Self> {
        if width >= 64 {
            return config_err("CRC width must be below 64");
        }
        let bits = (0..=width).rev().map(|k| ((poly >> k) & 1) as u8).collect();
        Self::new(width, bits)
    }

    /// The default CRC: width 8, polynomial
    /// x^8 + x^7 + x^6 + x^4 + x^2 + 1 (0x1D5).
    pub fn crc8() -> Self {
        Self::from_int(DEFAULT_CRC_WIDTH, 0x1D5).expect("default CRC polynomial is valid")
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// MSB-first coefficients including the leading term.
    pub fn poly(&self) -> &[u8] {
        &self.poly
    }

    /// Integer encoding of the polynomial, leading coefficient set.
    pub fn poly_int(&self) -> u64 {
        self.poly.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }
}

fn remainder(bits: &mut [u8], spec: &CrcSpec) {
    let w = spec.width;
    for i in 0..bits.len() - w {
        if bits[i] == 1 {
            for (j, &p) in spec.poly.iter().enumerate() {
                bits[i + j] ^= p;
            }
        }
    }
}

/// Appends `width` check bits to `payload` so that the result passes
/// `crc_verify`. The payload must be non-empty.
pub fn crc_attach(payload: &[u8], spec: &CrcSpec) -> Result<Vec<u8>> {
    if payload.is_empty() {
        return config_err("CRC attach requires a non-empty payload");
    }
    check_bits(payload)?;
    let mut work = Vec::with_capacity(payload.len() + spec.width);
    work.extend_from_slice(payload);
    work.resize(payload.len() + spec.width, 0);
    remainder(&mut work, spec);
    let mut out = Vec::with_capacity(payload.len() + spec.width);
    out.extend_from_slice(payload);
    out.extend_from_slice(&work[payload.len()..]);
    Ok(out)
}

/// True when `bits` (payload followed by check bits) is divisible by
/// the CRC polynomial. Vectors no longer than the CRC width cannot
/// contain a valid codeword and return false.
pub fn crc_verify(bits: &[u8], spec: &CrcSpec) -> bool {
    if bits.len() <= spec.width || bits.iter().any(|&b| b > 1) {
        return false;
    }
    let mut work = bits.to_vec();
    remainder(&mut work, spec);
    work[bits.len() - spec.width..].iter().all(|&b| b == 0)
}
