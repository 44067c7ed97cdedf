//! The binary polar transform and frozen-bit embedding.

use alloc::vec::Vec;

use super::{check_bits, PolarCodeSpec};
use crate::{config_err, Result};

/// Applies `x = u F^{(x)n}` over GF(2) in natural bit order.
///
/// The transform is an involution: applying it twice returns the
/// input. Length must be a power of two.
pub fn polar_transform(bits: &[u8]) -> Result<Vec<u8>> {
    let n = bits.len();
    if n == 0 || !n.is_power_of_two() {
        return config_err("transform length must be a power of two");
    }
    check_bits(bits)?;
    let mut x = bits.to_vec();
    let mut width = 1;
    while width < n {
        let mut block = 0;
        while block < n {
            for j in block..block + width {
                x[j] ^= x[j + width];
            }
            block += 2 * width;
        }
        width *= 2;
    }
    Ok(x)
}

/// Places `info` at the unfrozen positions (ascending) and the spec's
/// frozen values elsewhere, producing the full input vector `u`.
///
/// `info` must contain exactly `spec.payload_len()` bits (information
/// plus CRC bits when a CRC is configured).
pub fn embed_info(info: &[u8], spec: &PolarCodeSpec) -> Result<Vec<u8>> {
    if info.len() != spec.payload_len() {
        return config_err("info length does not match unfrozen position count");
    }
    check_bits(info)?;
    let mut u = Vec::with_capacity(spec.block_length());
    let mut next = 0;
    for i in 0..spec.block_length() {
        if spec.is_frozen(i) {
            u.push(spec.frozen_values()[i]);
        } else {
            u.push(info[next]);
            next += 1;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn transform_identity_cases() {
        assert_eq!(polar_transform(&[1]).unwrap(), vec![1]);
        assert_eq!(polar_transform(&[1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(polar_transform(&[0, 1]).unwrap(), vec![1, 1]);
        assert_eq!(polar_transform(&[1, 1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn transform_n4_case() {
        // u = (1,0,1,1): halves a = u1 xor u2 = (0,1), b = (1,1);
        // x = (T(a), T(b)) = (1,1,0,1).
        assert_eq!(polar_transform(&[1, 0, 1, 1]).unwrap(), vec![1, 1, 0, 1]);
    }

    #[test]
    fn transform_rejects_bad_input() {
        assert!(polar_transform(&[]).is_err());
        assert!(polar_transform(&[0, 1, 1]).is_err());
        assert!(polar_transform(&[2, 0]).is_err());
    }

    #[test]
    fn transform_is_involution() {
        let mut state = 0x1234_5678_u64;
        for n in [1usize, 2, 4, 8, 16, 64, 256] {
            let bits: Vec<u8> = (0..n)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((state >> 33) & 1) as u8
                })
                .collect();
            let once = polar_transform(&bits).unwrap();
            let twice = polar_transform(&once).unwrap();
            assert_eq!(twice, bits);
        }
    }

    #[test]
    fn transform_is_linear() {
        let a = [1u8, 0, 0, 1, 1, 1, 0, 0];
        let b = [0u8, 1, 1, 1, 0, 1, 0, 1];
        let xor: Vec<u8> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
        let ta = polar_transform(&a).unwrap();
        let tb = polar_transform(&b).unwrap();
        let txor = polar_transform(&xor).unwrap();
        let tsum: Vec<u8> = ta.iter().zip(&tb).map(|(x, y)| x ^ y).collect();
        assert_eq!(txor, tsum);
    }

    #[test]
    fn embed_places_info_and_frozen_values() {
        let spec = PolarCodeSpec::new(4, vec![1, 1, 0, 0], vec![0, 0, 0, 0], None).unwrap();
        assert_eq!(embed_info(&[1, 0], &spec).unwrap(), vec![0, 0, 1, 0]);
        let spec = PolarCodeSpec::new(4, vec![1, 0, 1, 0], vec![1, 0, 1, 0], None).unwrap();
        assert_eq!(embed_info(&[0, 1], &spec).unwrap(), vec![1, 0, 1, 1]);
    }

    #[test]
    fn embed_rejects_length_mismatch() {
        let spec = PolarCodeSpec::new(4, vec![1, 1, 0, 0], vec![0; 4], None).unwrap();
        assert!(embed_info(&[1], &spec).is_err());
        assert!(embed_info(&[1, 0, 1], &spec).is_err());
    }
}
