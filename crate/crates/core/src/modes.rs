//! Discrete frequency grids for the oracle and the thermal sampler.

use crate::error::{domain, Result};

/// Frequencies `ω_j` with quadrature measures `δω_j`.
///
/// Uniform grids use midpoint cells; log-spaced grids use trapezoid weights in
/// `ln ω`, which is spectrally accurate for the smooth Bose integrands.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeGrid {
    frequencies: Vec<f64>,
    spacings: Vec<f64>,
}

impl ModeGrid {
    /// `ω_j = omega_min + j·spacing`, `j = 0..count`.
    pub fn uniform(omega_min: f64, spacing: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return domain("mode grid must contain at least one mode");
        }
        if !(spacing > 0.0) || !(omega_min > 0.0) {
            return domain(format!(
                "uniform grid needs omega_min > 0 and spacing > 0 (got {omega_min}, {spacing})"
            ));
        }
        let frequencies = (0..count).map(|j| omega_min + j as f64 * spacing).collect();
        Ok(Self {
            frequencies,
            spacings: vec![spacing; count],
        })
    }

    /// Midpoint cells covering `[lower, upper]` with `count` modes.
    pub fn covering(lower: f64, upper: f64, count: usize) -> Result<Self> {
        if !(upper > lower) || lower < 0.0 || count == 0 {
            return domain(format!(
                "invalid grid range [{lower}, {upper}] with {count} modes"
            ));
        }
        let spacing = (upper - lower) / count as f64;
        Self::uniform(lower + 0.5 * spacing, spacing, count)
    }

    /// `count` modes log-spaced over `[lower, upper]`.
    pub fn log_spaced(lower: f64, upper: f64, count: usize) -> Result<Self> {
        if !(lower > 0.0) || !(upper > lower) || count < 2 {
            return domain(format!(
                "invalid log grid [{lower}, {upper}] with {count} modes"
            ));
        }
        let (l0, l1) = (lower.ln(), upper.ln());
        let step = (l1 - l0) / (count - 1) as f64;
        let frequencies: Vec<f64> = (0..count).map(|j| (l0 + j as f64 * step).exp()).collect();
        let spacings = frequencies
            .iter()
            .enumerate()
            .map(|(j, w)| {
                let edge = if j == 0 || j + 1 == count { 0.5 } else { 1.0 };
                edge * step * w
            })
            .collect();
        Ok(Self {
            frequencies,
            spacings,
        })
    }

    /// Default grid for thermal oracles: 256 log-spaced modes over `[10⁻³, 30]·θ`.
    pub fn thermal_default(theta: f64) -> Result<Self> {
        Self::log_spaced(1e-3 * theta, 30.0 * theta, 256)
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn spacings(&self) -> &[f64] {
        &self.spacings
    }

    /// Lower and upper edges of the covered band.
    pub fn span(&self) -> (f64, f64) {
        let n = self.len();
        (
            self.frequencies[0] - 0.5 * self.spacings[0],
            self.frequencies[n - 1] + 0.5 * self.spacings[n - 1],
        )
    }

    /// Mode-density weight `δω_j · ω_j^{d-1}` for `d` space dimensions.
    pub fn measure(&self, d: u32) -> Vec<f64> {
        self.frequencies
            .iter()
            .zip(&self.spacings)
            .map(|(w, dw)| dw * w.powi(d as i32 - 1))
            .collect()
    }
}
