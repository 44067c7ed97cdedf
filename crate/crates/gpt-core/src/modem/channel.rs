//! Seeded AWGN channel.

use alloc::vec::Vec;
use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{check_sigma2, Constellation};
use crate::math::{cos, log, sin, sqrt, PI};
use crate::Result;

/// Deterministic, seeded source of standard normal draws
/// (pair-cached Box-Muller over ChaCha8).
#[derive(Debug, Clone)]
pub(crate) struct NormalSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl NormalSource {
    pub(crate) fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn uniform_open(&mut self) -> f64 {
        // (0, 1]: never zero, so the Box-Muller log is finite.
        ((self.rng.next_u64() >> 11) + 1) as f64 / (1u64 << 53) as f64
    }

    pub(crate) fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform_open();
        let u2 = self.uniform_open();
        let r = sqrt(-2.0 * log(u1));
        let theta = 2.0 * PI * u2;
        self.spare = Some(r * sin(theta));
        r * cos(theta)
    }
}

/// An AWGN channel with variance `sigma2` per real dimension and a
/// deterministic, seeded noise source.
#[derive(Debug, Clone)]
pub struct ChannelModel {
    sigma2: f64,
    src: NormalSource,
}

impl ChannelModel {
    /// Creates a channel; `sigma2` is the noise variance per real
    /// dimension. The same seed always reproduces the same noise.
    pub fn new(sigma2: f64, seed: u64) -> Result<Self> {
        check_sigma2(sigma2)?;
        Ok(Self {
            sigma2,
            src: NormalSource::new(seed),
        })
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    /// Standard normal draw from the channel's noise stream.
    pub fn next_normal(&mut self) -> f64 {
        self.src.next_normal()
    }

    /// Adds noise of variance `sigma2` to every real dimension the
    /// constellation uses: the real part always, the imaginary part
    /// only for complex (QAM) constellations.
    pub fn awgn(&mut self, symbols: &[Complex64], c: &Constellation) -> Vec<Complex64> {
        let sd = sqrt(self.sigma2);
        let complex = c.is_complex();
        symbols
            .iter()
            .map(|s| {
                let re = s.re + sd * self.next_normal();
                let im = if complex {
                    s.im + sd * self.next_normal()
                } else {
                    s.im
                };
                Complex64::new(re, im)
            })
            .collect()
    }
}

/// Free-function form of [`ChannelModel::awgn`].
pub fn awgn(
    symbols: &[Complex64],
    channel: &mut ChannelModel,
    c: &Constellation,
) -> Vec<Complex64> {
    channel.awgn(symbols, c)
}
