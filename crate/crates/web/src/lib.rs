//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Each export has a plain Rust twin returning `String` errors, which the
//! native tests exercise.

use mmi_core::inference::estimate_coherence_time;
use mmi_core::intensity::{thermal_thermal_ratio, thermal_vacuum_ratio};
use mmi_core::{
    IntensityRequest, Method, PortState, SpaceDimension, SpectralDistribution, Tolerance,
};
use wasm_bindgen::prelude::*;

fn grid(max: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    (0..n).map(|k| max * k as f64 / (n - 1) as f64).collect()
}

/// Normalized interferogram on `[0, tau_max]`. `kind` is `fock`, `coherent`
/// or `vacuum` (one photon against vacuum); `closed` selects the narrow-band
/// closed form instead of quadrature.
pub fn spectral_curve(
    kind: &str,
    wbar_s: f64,
    wbar_lo: f64,
    sigma: f64,
    tau_max: f64,
    points: usize,
    closed: bool,
) -> Result<Vec<f64>, String> {
    let fs = SpectralDistribution::new(wbar_s, sigma).map_err(|e| e.to_string())?;
    let fl = SpectralDistribution::new(wbar_lo, sigma).map_err(|e| e.to_string())?;
    let (signal, lo) = match kind {
        "fock" => (PortState::OnePhoton(fs), PortState::OnePhoton(fl)),
        "coherent" => (PortState::Coherent(fs), PortState::Coherent(fl)),
        "vacuum" => (PortState::OnePhoton(fs), PortState::Vacuum),
        other => return Err(format!("unknown scenario {other}")),
    };
    let method = if closed {
        Method::ClosedForm
    } else {
        Method::Quadrature
    };
    IntensityRequest::new(signal, lo, grid(tau_max, points))
        .with_method(method)
        .with_tolerance(Tolerance::new(1e-10, 1e-8))
        .evaluate()
        .map(|i| i.ratios())
        .map_err(|e| e.to_string())
}

/// Thermal interferogram in d = 3 against `a = τθ0`. A temperature ratio of
/// zero puts vacuum in the local oscillator.
pub fn thermal_curve(
    temperature_ratio: f64,
    a_max: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let tol = Tolerance::default();
    grid(a_max, points)
        .into_iter()
        .map(|a| {
            if temperature_ratio == 0.0 {
                thermal_vacuum_ratio(1.0, a, SpaceDimension::THREE, Method::ClosedForm, &tol)
            } else {
                thermal_thermal_ratio(1.0, temperature_ratio, a, Method::ClosedForm, &tol)
            }
        })
        .collect::<mmi_core::Result<Vec<_>>>()
        .map_err(|e| e.to_string())
}

/// Dimensionless coherence delay `a_c` for an envelope threshold.
pub fn coherence_delay(threshold: f64) -> Result<f64, String> {
    estimate_coherence_time(1.0, threshold)
        .map(|r| r.a_c)
        .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn spectral_interferogram(
    kind: &str,
    wbar_s: f64,
    wbar_lo: f64,
    sigma: f64,
    tau_max: f64,
    points: usize,
    closed: bool,
) -> Result<Vec<f64>, JsValue> {
    spectral_curve(kind, wbar_s, wbar_lo, sigma, tau_max, points, closed)
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn thermal_interferogram(
    temperature_ratio: f64,
    a_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsValue> {
    thermal_curve(temperature_ratio, a_max, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn coherence_time(threshold: f64) -> Result<f64, JsValue> {
    coherence_delay(threshold).map_err(|e| JsValue::from_str(&e))
}
