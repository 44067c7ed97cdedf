//! Successive-cancellation decoding as a direct recursion over the
//! code tree. Kept structurally independent of the schedule-driven
//! list decoder in `scl`; the two must agree bit-for-bit at list
//! size 1, which the test suite asserts.

use alloc::vec;
use alloc::vec::Vec;

use super::{f_update, g_update, hard_decision, penalty, LlrVector, PolarCodeSpec};
use crate::Result;

/// Result of SC decoding: recovered payload bits (information plus
/// CRC bits when configured) and the accumulated path metric.
#[derive(Debug, Clone, PartialEq)]
pub struct ScOutput {
    /// Unfrozen payload in ascending position order.
    pub info_bits: Vec<u8>,
    /// Sum of per-bit penalties along the decoding path.
    pub metric: f64,
}

struct ScState<'a> {
    spec: &'a PolarCodeSpec,
    n: usize,
    stages: usize,
    /// Row r holds the LLRs of all depth-r nodes, concatenated.
    llr: Vec<f64>,
    /// Row r holds the re-encoded code bits of all depth-r nodes.
    bit: Vec<u8>,
    u: Vec<u8>,
    metric: f64,
}

impl ScState<'_> {
    fn node(&mut self, depth: usize, node: usize) {
        let size = self.n >> depth;
        let start = node * size;
        if size == 1 {
            let i = node;
            let l = self.llr[depth * self.n + i];
            let u = if self.spec.is_frozen(i) {
                self.spec.frozen_values()[i]
            } else {
                hard_decision(l)
            };
            self.metric += penalty(l, u);
            self.u.push(u);
            self.bit[depth * self.n + i] = u;
            return;
        }
        let half = size / 2;
        let row = depth * self.n;
        let child_row = (depth + 1) * self.n;
        for j in 0..half {
            let a = self.llr[row + start + j];
            let b = self.llr[row + start + half + j];
            self.llr[child_row + start + j] = f_update(a, b);
        }
        self.node(depth + 1, 2 * node);
        for j in 0..half {
            let a = self.llr[row + start + j];
            let b = self.llr[row + start + half + j];
            let u = self.bit[child_row + start + j];
            self.llr[child_row + start + half + j] = g_update(a, b, u);
        }
        self.node(depth + 1, 2 * node + 1);
        for j in 0..half {
            let left = self.bit[child_row + start + j];
            let right = self.bit[child_row + start + half + j];
            self.bit[row + start + j] = left ^ right;
            self.bit[row + start + half + j] = right;
        }
    }
}

/// SC decoding returning the full input vector `u` and the metric.
pub(crate) fn sc_decode_u(llrs: &LlrVector, spec: &PolarCodeSpec) -> Result<(Vec<u8>, f64)> {
    spec.check_llr_len(llrs)?;
    let n = spec.block_length();
    let stages = spec.stages();
    let mut state = ScState {
        spec,
        n,
        stages,
        llr: vec![0.0; (stages + 1) * n],
        bit: vec![0; (stages + 1) * n],
        u: Vec::with_capacity(n),
        metric: 0.0,
    };
    state.llr[..n].copy_from_slice(llrs.as_slice());
    state.node(0, 0);
    debug_assert_eq!(state.u.len(), n);
    let _ = state.stages;
    Ok((state.u, state.metric))
}

/// Decodes one component codeword by successive cancellation.
///
/// Frozen positions follow the spec's frozen values and still accrue
/// metric when the channel disagrees; unfrozen positions take the
/// hard decision of their decision-point LLR. Equivalent to
/// `scl_decode` with list size 1.
pub fn sc_decode(llrs: &LlrVector, spec: &PolarCodeSpec) -> Result<ScOutput> {
    let (u, metric) = sc_decode_u(llrs, spec)?;
    Ok(ScOutput {
        info_bits: spec.extract_payload(&u),
        metric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::polar_transform;
    use alloc::vec;

    fn llr(v: &[f64]) -> LlrVector {
        LlrVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn noiseless_codeword_decodes_with_zero_metric() {
        // N=4, positions 0,1 frozen to zero.
        let spec = PolarCodeSpec::new(4, vec![1, 1, 0, 0], vec![0; 4], None).unwrap();
        let u = crate::polar::embed_info(&[1, 0], &spec).unwrap();
        let x = polar_transform(&u).unwrap();
        // Strong LLRs consistent with x: sign +5 for bit 0, -5 for bit 1.
        let l: Vec<f64> = x.iter().map(|&b| if b == 0 { 5.0 } else { -5.0 }).collect();
        let out = sc_decode(&llr(&l), &spec).unwrap();
        assert_eq!(out.info_bits, vec![1, 0]);
        assert_eq!(out.metric, 0.0);
    }

    #[test]
    fn frozen_disagreement_accrues_metric() {
        // N=2, both frozen to zero, channel insists both bits are 1.
        let spec = PolarCodeSpec::new(2, vec![1, 1], vec![0, 0], None).unwrap();
        let out = sc_decode(&llr(&[-3.0, -4.0]), &spec).unwrap();
        assert!(out.info_bits.is_empty());
        // Bit 0 sees f(-3,-4) = +3 (agrees with frozen 0), bit 1 sees
        // g(-3,-4,0) = -7 and pays 7.
        assert_eq!(out.metric, 7.0);
    }

    #[test]
    fn single_bit_code_hard_decides() {
        let spec = PolarCodeSpec::new(1, vec![0], vec![0], None).unwrap();
        let out = sc_decode(&llr(&[-2.5]), &spec).unwrap();
        assert_eq!(out.info_bits, vec![1]);
        assert_eq!(out.metric, 0.0);
        let out = sc_decode(&llr(&[2.5]), &spec).unwrap();
        assert_eq!(out.info_bits, vec![0]);
    }

    #[test]
    fn rejects_llr_length_mismatch() {
        let spec = PolarCodeSpec::new(4, vec![1, 1, 0, 0], vec![0; 4], None).unwrap();
        assert!(sc_decode(&llr(&[1.0, 2.0]), &spec).is_err());
    }
}
