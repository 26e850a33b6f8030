//! Parametric forward models with analytic Jacobians.

use crate::intensity::{subtracted_thermal_kernel, subtracted_thermal_kernel_derivative};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Forward model of a normalized interferogram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FitModel {
    /// Two thermal sources in d = 3. Parameter: `θ1/θ0`. The delay axis is
    /// `a0 = τθ0`, so `theta0` only converts a `tau` axis.
    ThermalThermal { theta0: f64 },
    /// One photon against vacuum. Parameters: `ω̄_s`, `σ`.
    OnePhotonVacuum,
    /// One photon per port, narrow-band form. Parameters: `ω̄_s`, common `σ`.
    FockFock { lo_mean_freq: f64 },
    /// Coherent states in both ports, narrow-band form. Parameters as for
    /// `FockFock`.
    CoherentCoherent { lo_mean_freq: f64 },
}

impl FitModel {
    pub fn parameter_names(&self) -> &'static [&'static str] {
        match self {
            FitModel::ThermalThermal { .. } => &["temperature_ratio"],
            _ => &["mean_freq", "width"],
        }
    }

    pub fn n_params(&self) -> usize {
        self.parameter_names().len()
    }

    /// Model value and gradient with respect to the parameters at delay `x`.
    pub fn eval_with_gradient(&self, x: f64, p: &[f64], grad: &mut [f64]) -> f64 {
        match *self {
            FitModel::ThermalThermal { .. } => thermal_thermal(x, p[0], grad),
            FitModel::OnePhotonVacuum => one_photon_vacuum(x, p[0], p[1], grad),
            FitModel::FockFock { lo_mean_freq } => fock(x, p[0], p[1], lo_mean_freq, grad),
            FitModel::CoherentCoherent { lo_mean_freq } => {
                coherent(x, p[0], p[1], lo_mean_freq, grad)
            }
        }
    }

    pub fn eval(&self, x: f64, p: &[f64]) -> f64 {
        let mut g = [0.0; 2];
        self.eval_with_gradient(x, p, &mut g[..self.n_params()])
    }

    pub(crate) fn default_bounds(&self) -> Vec<(f64, f64)> {
        match *self {
            FitModel::ThermalThermal { .. } => vec![(0.25, 4.0)],
            FitModel::OnePhotonVacuum => vec![(1e-6, f64::INFINITY), (1e-6, f64::INFINITY)],
            FitModel::FockFock { lo_mean_freq } | FitModel::CoherentCoherent { lo_mean_freq } => {
                vec![
                    (1e-3 * lo_mean_freq, 10.0 * lo_mean_freq),
                    (1e-6, f64::INFINITY),
                ]
            }
        }
    }
}

// ½(1+r⁴) + ½[h(πρa) − r⁴h(πa)], r = 1/ρ.
fn thermal_thermal(a: f64, rho: f64, grad: &mut [f64]) -> f64 {
    let r4 = rho.powi(-4);
    let h0 = subtracted_thermal_kernel(PI * a);
    let h1 = subtracted_thermal_kernel(PI * rho * a);
    grad[0] = -2.0 * rho.powi(-5) * (1.0 - h0)
        + 0.5 * PI * a * subtracted_thermal_kernel_derivative(PI * rho * a);
    0.5 * (1.0 + r4) + 0.5 * (h1 - r4 * h0)
}

fn one_photon_vacuum(tau: f64, w: f64, sigma: f64, grad: &mut [f64]) -> f64 {
    let e = (-(sigma * tau).powi(2) / 4.0).exp();
    let (s, c) = (w * tau).sin_cos();
    grad[0] = -0.5 * e * tau * s;
    grad[1] = -0.25 * e * c * sigma * tau * tau;
    0.5 * (1.0 + e * c)
}

fn fock(tau: f64, ws: f64, sigma: f64, wl: f64, grad: &mut [f64]) -> f64 {
    let rho = wl / ws;
    let e = (-(sigma * tau).powi(2) / 4.0).exp();
    let (ss, cs) = (ws * tau).sin_cos();
    let cl = (wl * tau).cos();
    let bracket = cs - rho * cl;
    grad[0] = 0.5 * (-wl / (ws * ws) * (1.0 - e * cl) - e * tau * ss);
    grad[1] = -0.25 * sigma * tau * tau * e * bracket;
    0.5 * (1.0 + rho + e * bracket)
}

fn coherent(tau: f64, ws: f64, sigma: f64, wl: f64, grad: &mut [f64]) -> f64 {
    let base = fock(tau, ws, sigma, wl, grad);
    let m = 0.5 * (ws + wl);
    let delta = ws - wl;
    let o = (-(delta / sigma).powi(2) / 4.0).exp();
    let e = (-(sigma * tau).powi(2) / 4.0).exp();
    let (sm, cm) = (m * tau).sin_cos();
    let b = m * sm + 0.5 * sigma * sigma * tau * cm;
    let pre = o * e / ws;
    let t = pre * b;
    let db_ws = 0.5 * sm + 0.5 * tau * m * cm - 0.25 * sigma * sigma * tau * tau * sm;
    let d_ws = t * (-1.0 / ws - delta / (2.0 * sigma * sigma)) + pre * db_ws;
    let d_sigma = t * (delta * delta / (2.0 * sigma.powi(3)) - 0.5 * sigma * tau * tau)
        + pre * sigma * tau * cm;
    grad[0] -= d_ws;
    grad[1] -= d_sigma;
    base - t
}
