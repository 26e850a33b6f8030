use crate::error::{domain, Result};
use crate::intensity::subtracted_thermal_kernel;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Envelope threshold that places the thermal coherence point at `a ≈ 1.5`.
pub const DEFAULT_COHERENCE_THRESHOLD: f64 = 0.04;

pub const HBAR: f64 = 1.054_571_817e-34;
pub const BOLTZMANN: f64 = 1.380_649e-23;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherenceReport {
    /// Dimensionless coherence delay `a_c = τ_c θ`.
    pub a_c: f64,
    /// `a_c / θ` in the caller's reciprocal frequency unit.
    pub tau_c: f64,
    /// `c τ_c` with `c = 1`.
    pub l_c: f64,
    pub threshold: f64,
    pub theta: f64,
    pub si: Option<SiCoherence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SiCoherence {
    pub temperature_kelvin: f64,
    pub tau_c_seconds: f64,
    pub l_c_meters: f64,
}

fn deviation(a: f64) -> f64 {
    0.5 * subtracted_thermal_kernel(PI * a).abs()
}

/// Smallest `a` with `|ratio(a′) − ½| < ε` for every `a′ ≥ a`, thermal light
/// against vacuum in d = 3.
pub fn estimate_coherence_time(theta: f64, threshold: f64) -> Result<CoherenceReport> {
    if !(threshold > 0.0 && threshold < 0.5) {
        return domain(format!("threshold must lie in (0, 0.5), got {threshold}"));
    }
    if !(theta > 0.0 && theta.is_finite()) {
        return domain(format!("temperature must be positive, got {theta}"));
    }
    // Beyond this point |h(πa)| < 45/(πa)⁴ keeps the deviation below ε/10.
    let a_max = 2.0 * (225.0 / (threshold * PI.powi(4))).powf(0.25);
    let step = 1e-3;
    let mut hi = a_max;
    let mut lo = hi - step;
    while lo > 0.0 && deviation(lo) < threshold {
        hi = lo;
        lo -= step;
    }
    let lo = lo.max(0.0);
    // deviation(lo) ≥ ε > deviation on [hi, ∞): bisect the last crossing.
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if deviation(m) >= threshold {
            a = m;
        } else {
            b = m;
        }
        if b - a < 1e-14 {
            break;
        }
    }
    let a_c = b;
    Ok(CoherenceReport {
        a_c,
        tau_c: a_c / theta,
        l_c: a_c / theta,
        threshold,
        theta,
        si: None,
    })
}

/// Coherence time for a temperature in kelvin, with `θ = k_B T/ħ` in rad/s.
pub fn coherence_time_si(temperature_kelvin: f64, threshold: f64) -> Result<CoherenceReport> {
    let theta = BOLTZMANN * temperature_kelvin / HBAR;
    let mut r = estimate_coherence_time(theta, threshold)?;
    r.si = Some(SiCoherence {
        temperature_kelvin,
        tau_c_seconds: r.tau_c,
        l_c_meters: SPEED_OF_LIGHT * r.tau_c,
    });
    Ok(r)
}
