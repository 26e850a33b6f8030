//! Beam splitter and the two-pass detector mode.
//!
//! Port 0 is the local oscillator, port 1 the signal. After splitting,
//! reflection at the mirrors and recombination the detector mode is
//!
//! ```text
//! a5(ω) = [T - (1-T) e^{iωτ}] a0(ω) + i√(T(1-T)) [1 + e^{iωτ}] a1(ω)
//! ```
//!
//! up to the common phase `e^{iφ2}`. The equal mirror phase shifts are dropped.

use crate::error::{domain, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Lossless beam splitter with frequency-independent transmittance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSplitter {
    transmittance: f64,
}

impl BeamSplitter {
    pub fn new(transmittance: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&transmittance) {
            return domain(format!(
                "transmittance must lie in [0, 1], got {transmittance}"
            ));
        }
        Ok(Self { transmittance })
    }

    /// 50/50 splitter.
    pub fn balanced() -> Self {
        Self { transmittance: 0.5 }
    }

    pub fn transmittance(&self) -> f64 {
        self.transmittance
    }

    pub fn reflectance(&self) -> f64 {
        1.0 - self.transmittance
    }

    pub fn is_balanced(&self) -> bool {
        self.transmittance == 0.5
    }
}

impl Default for BeamSplitter {
    fn default() -> Self {
        Self::balanced()
    }
}

/// Output modes `(a2, a3)` in terms of inputs `(a0, a1)`:
/// `[[√T, i√R], [i√R, √T]]`.
pub fn transform_modes(bs: &BeamSplitter) -> [[Complex64; 2]; 2] {
    let t = Complex64::new(bs.transmittance.sqrt(), 0.0);
    let r = Complex64::new(0.0, bs.reflectance().sqrt());
    [[t, r], [r, t]]
}

/// Optical delay `τ = τ3 - τ2` between the arms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayLine {
    pub tau: f64,
}

impl DelayLine {
    pub fn new(tau: f64) -> Self {
        Self { tau }
    }
}

/// Per-port weights of the detected intensity at fixed delay.
///
/// For real amplitudes `f_s`, `f_lo` the time-averaged intensity density is
/// `signal_weight·f_s² + lo_weight·f_lo² + cross_weight·f_s·f_lo`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorKernel {
    pub splitter: BeamSplitter,
    pub delay: DelayLine,
}

pub fn detector_kernel(bs: &BeamSplitter, delay: DelayLine) -> DetectorKernel {
    DetectorKernel {
        splitter: *bs,
        delay,
    }
}

impl DetectorKernel {
    fn phase(&self, omega: f64) -> Complex64 {
        Complex64::from_polar(1.0, omega * self.delay.tau)
    }

    /// Coefficient of `a0(ω)` in the detector mode.
    pub fn lo_coefficient(&self, omega: f64) -> Complex64 {
        let t = self.splitter.transmittance;
        Complex64::new(t, 0.0) - (1.0 - t) * self.phase(omega)
    }

    /// Coefficient of `a1(ω)` in the detector mode.
    pub fn signal_coefficient(&self, omega: f64) -> Complex64 {
        let t = self.splitter.transmittance;
        Complex64::new(0.0, (t * (1.0 - t)).sqrt()) * (1.0 + self.phase(omega))
    }

    /// `|c_s|² = 4T(1-T)(1 + cos ωτ)/2`.
    pub fn signal_weight(&self, omega: f64) -> f64 {
        let t = self.splitter.transmittance;
        2.0 * t * (1.0 - t) * (1.0 + (omega * self.delay.tau).cos())
    }

    /// `|c_lo|² = T² + (1-T)² - 2T(1-T) cos ωτ`.
    pub fn lo_weight(&self, omega: f64) -> f64 {
        let t = self.splitter.transmittance;
        let r = 1.0 - t;
        t * t + r * r - 2.0 * t * r * (omega * self.delay.tau).cos()
    }

    /// `2 Re(c_s* c_lo) = -2√(T(1-T)) sin ωτ`.
    pub fn cross_weight(&self, omega: f64) -> f64 {
        let t = self.splitter.transmittance;
        -2.0 * (t * (1.0 - t)).sqrt() * (omega * self.delay.tau).sin()
    }
}
