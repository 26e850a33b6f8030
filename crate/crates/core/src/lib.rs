//! Single-photon detection intensity of a Michelson interferometer.
//!
//! The detector sees the field `a5 = c_lo(ω, τ) a0 + c_s(ω, τ) a1` built from two
//! passes through a lossless beam splitter. Time-averaging the Glauber intensity
//! leaves a single frequency integral whose weights depend only on the input
//! port states. This crate evaluates the normalized interferogram
//! `⟨I⟩(τ)/⟨I⟩(0)` for vacuum, one-photon, coherent and thermal inputs, both via
//! closed forms and by adaptive quadrature. Brute-force oracles and the inverse
//! solvers live alongside.
//!
//! All quantities are dimensionless: frequencies are measured in an arbitrary
//! unit and delays in its reciprocal, so that `τσ` and `a = τθ` are the natural
//! axes.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod error;
pub mod inference;
pub mod intensity;
pub mod io;
pub mod modes;
pub mod optics;
pub mod oracle;
pub mod quadrature;
pub mod special;
pub mod spectra;
pub mod states;
pub mod verify;

pub use error::{Error, Result};
pub use intensity::{IntensityRequest, Interferogram, Method, SpaceDimension};
pub use optics::{BeamSplitter, DelayLine, DetectorKernel};
pub use quadrature::{Estimate, Tolerance};
pub use spectra::SpectralDistribution;
pub use states::PortState;

/// Library version embedded in output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
