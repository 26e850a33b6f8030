//! Gaussian one-photon spectral amplitudes.

use crate::error::{domain, Result};
use crate::quadrature::{integrate_semi_infinite, Estimate, Tail, Tolerance};
use crate::special::erf;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `|N|² = (σ√π/2)(1 + erf(ω̄/σ))`, the squared normalization of a Gaussian
/// amplitude restricted to `ω ≥ 0`.
pub fn normalization_constant(mean_freq: f64, width: f64) -> Result<f64> {
    if !(width > 0.0) || !width.is_finite() {
        return domain(format!("spectral width must be positive, got {width}"));
    }
    if !mean_freq.is_finite() {
        return domain("mean frequency must be finite");
    }
    Ok(0.5 * width * PI.sqrt() * (1.0 + erf(mean_freq / width)))
}

/// Real Gaussian amplitude `f(ω) = exp(-(ω-ω̄)²/2σ²)/N` on `ω ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralDistribution {
    mean_freq: f64,
    width: f64,
    norm_sq: f64,
}

impl SpectralDistribution {
    /// Exact normalization over the physical half line.
    pub fn new(mean_freq: f64, width: f64) -> Result<Self> {
        if !(mean_freq >= 0.0) {
            return domain(format!(
                "mean frequency must be non-negative, got {mean_freq}"
            ));
        }
        let norm_sq = normalization_constant(mean_freq, width)?;
        Ok(Self {
            mean_freq,
            width,
            norm_sq,
        })
    }

    /// Normalization extended over the whole real line, `|N|² = σ√π`.
    ///
    /// Only useful to reproduce the approximate closed forms; the amplitude is
    /// then slightly under-normalized on `ω ≥ 0`.
    pub fn with_extended_range(mean_freq: f64, width: f64) -> Result<Self> {
        let mut f = Self::new(mean_freq, width)?;
        f.norm_sq = width * PI.sqrt();
        Ok(f)
    }

    pub fn mean_freq(&self) -> f64 {
        self.mean_freq
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// `|N|²`.
    pub fn norm_sq(&self) -> f64 {
        self.norm_sq
    }

    /// Amplitude at `ω`; negative frequencies are rejected.
    pub fn eval(&self, omega: f64) -> Result<f64> {
        if !(omega >= 0.0) {
            return domain(format!("frequency must be non-negative, got {omega}"));
        }
        Ok(self.amplitude(omega))
    }

    /// Unchecked amplitude for internal integrands (`ω ≥ 0` assumed).
    #[inline]
    pub fn amplitude(&self, omega: f64) -> f64 {
        let u = (omega - self.mean_freq) / self.width;
        (-0.5 * u * u).exp() / self.norm_sq.sqrt()
    }

    /// `|f(ω)|²`.
    #[inline]
    pub fn density(&self, omega: f64) -> f64 {
        let u = (omega - self.mean_freq) / self.width;
        (-u * u).exp() / self.norm_sq
    }

    /// Envelope of `|f|²` and of products with another amplitude.
    pub(crate) fn tail_with(&self, other: &Self) -> Tail {
        Tail::Gaussian {
            center: self.mean_freq.max(other.mean_freq),
            width: self.width.max(other.width),
        }
    }
}

/// Trigonometric factor in an overlap integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kernel {
    One,
    Cos,
    Sin,
}

impl Kernel {
    #[inline]
    pub fn eval(self, phase: f64) -> f64 {
        match self {
            Kernel::One => 1.0,
            Kernel::Cos => phase.cos(),
            Kernel::Sin => phase.sin(),
        }
    }
}

/// `∫₀^∞ ω^p f(ω) g(ω) K(ωτ) dω`.
pub fn weighted_overlap(
    f: &SpectralDistribution,
    g: &SpectralDistribution,
    weight_power: i32,
    kernel: Kernel,
    tau: f64,
    tol: &Tolerance,
) -> Result<Estimate> {
    if weight_power < 0 {
        return domain("weight power must be non-negative");
    }
    let oscillation = if kernel == Kernel::One {
        0.0
    } else {
        tau.abs()
    };
    integrate_semi_infinite(
        |w| w.powi(weight_power) * (f.amplitude(w) * g.amplitude(w)) * kernel.eval(w * tau),
        f.tail_with(g),
        oscillation,
        tol,
    )
}
