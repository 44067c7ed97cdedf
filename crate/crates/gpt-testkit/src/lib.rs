//! Slow but independently derived reference implementations used to
//! cross-check `gpt-core`: Gauss-Hermite quadrature for channel
//! capacities, exhaustive maximum-likelihood decoders, naive
//! re-derivations of the demapper and successive cancellation, and
//! small statistics helpers. Nothing here is optimized; everything is
//! written from first principles by a different route than the code
//! under test.

pub mod ml;
pub mod quadrature;
pub mod reference;
pub mod stats;
