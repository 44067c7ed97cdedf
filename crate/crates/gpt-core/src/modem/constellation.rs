//! Constellation construction and modulation.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::Labeling;
use crate::math::sqrt;
use crate::polar::check_bits;
use crate::{config_err, Result};

/// Largest supported label width in bits per symbol.
pub const MAX_BITS_PER_SYMBOL: usize = 6;

/// One real (PAM) dimension: `bits` label bits addressing `2^bits`
/// amplitudes, indexed by the dimension-local label.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct PamDim {
    pub bits: usize,
    pub amps: Vec<f64>,
}

impl PamDim {
    fn build(bits: usize, labeling: Labeling, scale: f64) -> Self {
        let order = 1usize << bits;
        let sorted: Vec<f64> = (0..order)
            .map(|i| (2.0 * i as f64 - (order as f64 - 1.0)) * scale)
            .collect();
        let mut amps = alloc::vec![0.0; order];
        for (idx, &a) in sorted.iter().enumerate() {
            let label = match labeling {
                Labeling::SetPartitioning => idx,
                Labeling::Gray => idx ^ (idx >> 1),
            };
            amps[label] = a;
        }
        Self { bits, amps }
    }
}

/// A `2^m`-point constellation with a per-level bit labeling.
///
/// `m` in {1, 2, 3, 5} gives a real PAM grid; `m` in {4, 6} gives
/// square QAM built from two independent PAM dimensions (in-phase
/// levels first, quadrature levels second). Average symbol energy is
/// one in all cases.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    m: usize,
    labeling: Labeling,
    dims: Vec<PamDim>,
}

impl Constellation {
    pub fn bits_per_symbol(&self) -> usize {
        self.m
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    /// Number of constellation points, `2^m`.
    pub fn order(&self) -> usize {
        1 << self.m
    }

    /// True for square QAM (two real dimensions).
    pub fn is_complex(&self) -> bool {
        self.dims.len() == 2
    }

    /// Number of independent real dimensions (1 or 2).
    pub fn dimension_count(&self) -> usize {
        self.dims.len()
    }

    /// Label bits carried by dimension `d`.
    pub fn dim_bits(&self, d: usize) -> usize {
        self.dims[d].bits
    }

    /// Amplitudes of dimension `d`, indexed by the dimension-local
    /// label (local level 0 is the label's least significant bit).
    pub fn dim_amplitudes(&self, d: usize) -> &[f64] {
        &self.dims[d].amps
    }

    /// Maps a global level index to `(dimension, level within that
    /// dimension)`.
    pub fn level_dimension(&self, level: usize) -> (usize, usize) {
        debug_assert!(level < self.m);
        if self.dims.len() == 1 || level < self.dims[0].bits {
            (0, level)
        } else {
            (1, level - self.dims[0].bits)
        }
    }

    /// First global level index carried by dimension `d`.
    pub fn dim_level_offset(&self, d: usize) -> usize {
        if d == 0 {
            0
        } else {
            self.dims[0].bits
        }
    }

    /// The point for a full label (level `j` is label bit `j`, level
    /// 0 least significant). Real constellations have zero imaginary
    /// part.
    pub fn point(&self, label: usize) -> Complex64 {
        debug_assert!(label < self.order());
        if self.dims.len() == 1 {
            Complex64::new(self.dims[0].amps[label], 0.0)
        } else {
            let ib = self.dims[0].bits;
            let i = label & ((1 << ib) - 1);
            let q = label >> ib;
            Complex64::new(self.dims[0].amps[i], self.dims[1].amps[q])
        }
    }

    /// All points in label order.
    pub fn points(&self) -> Vec<Complex64> {
        (0..self.order()).map(|l| self.point(l)).collect()
    }
}

/// Builds the constellation for `m` bits per symbol with the given
/// labeling. Supported orders: BPSK (m=1), 4PAM, 8PAM, 32PAM, and
/// square 16QAM / 64QAM.
pub fn build_constellation(m: usize, labeling: Labeling) -> Result<Constellation> {
    if m == 0 || m > MAX_BITS_PER_SYMBOL {
        return config_err("bits per symbol must be between 1 and 6");
    }
    let dims = if m == 4 || m == 6 {
        let half = m / 2;
        let order = 1usize << half;
        // Two dimensions share the symbol energy budget equally.
        let energy = 2.0 * ((order * order - 1) as f64) / 3.0;
        let scale = 1.0 / sqrt(energy);
        alloc::vec![
            PamDim::build(half, labeling, scale),
            PamDim::build(half, labeling, scale),
        ]
    } else {
        let order = 1usize << m;
        let energy = ((order * order - 1) as f64) / 3.0;
        let scale = 1.0 / sqrt(energy);
        alloc::vec![PamDim::build(m, labeling, scale)]
    };
    Ok(Constellation { m, labeling, dims })
}

/// Maps `m` equal-length level bit vectors to symbols. Level `j`
/// supplies bit `j` of every symbol's label, least significant first,
/// so the first level is the coarsest set-partitioning split.
pub fn modulate(level_bits: &[Vec<u8>], c: &Constellation) -> Result<Vec<Complex64>> {
    let m = c.bits_per_symbol();
    if level_bits.len() != m {
        return config_err("modulate requires one bit vector per level");
    }
    let len = level_bits[0].len();
    for lv in level_bits {
        if lv.len() != len {
            return config_err("level bit vectors must share one length");
        }
        check_bits(lv)?;
    }
    let mut out = Vec::with_capacity(len);
    for t in 0..len {
        let mut label = 0usize;
        for (j, lv) in level_bits.iter().enumerate() {
            label |= (lv[t] as usize) << j;
        }
        out.push(c.point(label));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::fabs;
    use alloc::vec;

    fn close(a: f64, b: f64) -> bool {
        fabs(a - b) < 1e-12
    }

    #[test]
    fn bpsk_maps_zero_to_minus_one() {
        let c = build_constellation(1, Labeling::SetPartitioning).unwrap();
        assert!(close(c.point(0).re, -1.0));
        assert!(close(c.point(1).re, 1.0));
        assert!(!c.is_complex());
    }

    #[test]
    fn pam4_has_unit_energy_and_natural_order() {
        let c = build_constellation(2, Labeling::SetPartitioning).unwrap();
        let s = 1.0 / sqrt(5.0);
        let expect = [-3.0 * s, -1.0 * s, 1.0 * s, 3.0 * s];
        for (label, &e) in expect.iter().enumerate() {
            assert!(close(c.point(label).re, e));
        }
        let energy: f64 = c.points().iter().map(|p| p.norm_sqr()).sum::<f64>() / 4.0;
        assert!(close(energy, 1.0));
    }

    #[test]
    fn gray_labels_differ_by_one_bit_between_neighbors() {
        let c = build_constellation(3, Labeling::Gray).unwrap();
        // Recover label order along the amplitude axis.
        let mut pairs: Vec<(usize, f64)> =
            (0..8).map(|l| (l, c.point(l).re)).collect();
        pairs.sort_by(|a, b| a.1.total_cmp(&b.1));
        for w in pairs.windows(2) {
            let diff = (w[0].0 ^ w[1].0).count_ones();
            assert_eq!(diff, 1);
        }
        let energy: f64 = c.points().iter().map(|p| p.norm_sqr()).sum::<f64>() / 8.0;
        assert!(close(energy, 1.0));
    }

    #[test]
    fn qam16_splits_into_two_pam4_dimensions() {
        let c = build_constellation(4, Labeling::SetPartitioning).unwrap();
        assert!(c.is_complex());
        assert_eq!(c.dimension_count(), 2);
        assert_eq!(c.dim_bits(0), 2);
        let s = 1.0 / sqrt(10.0);
        // Low label bits ride the in-phase axis: 0b1011 has in-phase
        // local label 0b11 and quadrature local label 0b10.
        assert!(close(c.point(0).re, -3.0 * s) && close(c.point(0).im, -3.0 * s));
        assert!(close(c.point(0b1011).re, 3.0 * s) && close(c.point(0b1011).im, s));
        let energy: f64 = c.points().iter().map(|p| p.norm_sqr()).sum::<f64>() / 16.0;
        assert!(close(energy, 1.0));
        assert_eq!(c.level_dimension(0), (0, 0));
        assert_eq!(c.level_dimension(2), (1, 0));
    }

    #[test]
    fn modulate_uses_level_zero_as_least_significant() {
        let c = build_constellation(2, Labeling::SetPartitioning).unwrap();
        let s = 1.0 / sqrt(5.0);
        let syms = modulate(&[vec![0, 1, 1, 0], vec![0, 0, 1, 1]], &c).unwrap();
        // Labels 0, 1, 3, 2 along the natural amplitude order.
        let expect = [-3.0 * s, -1.0 * s, 3.0 * s, 1.0 * s];
        for (got, &e) in syms.iter().zip(&expect) {
            assert!(close(got.re, e));
            assert!(close(got.im, 0.0));
        }
    }

    #[test]
    fn modulate_rejects_bad_inputs() {
        let c = build_constellation(2, Labeling::SetPartitioning).unwrap();
        assert!(modulate(&[vec![0, 1]], &c).is_err());
        assert!(modulate(&[vec![0, 1], vec![0]], &c).is_err());
        assert!(modulate(&[vec![0, 2], vec![0, 1]], &c).is_err());
        assert!(build_constellation(0, Labeling::Gray).is_err());
        assert!(build_constellation(7, Labeling::Gray).is_err());
    }
}
