//! Inverse problems on interferograms: temperature-ratio and spectral
//! parameter fits, thermal coherence time, and state-class discrimination.

mod coherence;
mod discriminate;
mod models;

pub use coherence::{
    coherence_time_si, estimate_coherence_time, CoherenceReport, SiCoherence, BOLTZMANN,
    DEFAULT_COHERENCE_THRESHOLD, HBAR, SPEED_OF_LIGHT,
};
pub use discriminate::{discriminate_state_class, Discrimination, StateClass};
pub use models::FitModel;

use crate::error::{Error, Result};
use crate::intensity::{DelayAxis, Interferogram};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

const MAX_ITERATIONS: usize = 500;
const STEP_TOL: f64 = 1e-10;
const GRADIENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct FitProblem {
    pub data: Interferogram,
    pub model: FitModel,
    pub initial: Option<Vec<f64>>,
    pub bounds: Option<Vec<(f64, f64)>>,
    /// Per-sample noise standard deviations; inverse-variance weights when set.
    pub noise: Option<Vec<f64>>,
}

impl FitProblem {
    pub fn new(data: Interferogram, model: FitModel) -> Self {
        Self {
            data,
            model,
            initial: None,
            bounds: None,
            noise: None,
        }
    }

    pub fn with_initial(mut self, p: Vec<f64>) -> Self {
        self.initial = Some(p);
        self
    }

    pub fn with_bounds(mut self, b: Vec<(f64, f64)>) -> Self {
        self.bounds = Some(b);
        self
    }

    pub fn with_noise(mut self, sd: Vec<f64>) -> Self {
        self.noise = Some(sd);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterEstimate {
    pub name: String,
    pub value: f64,
    pub uncertainty: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    pub estimates: Vec<ParameterEstimate>,
    /// `sqrt(Σ w_i r_i²)` at the estimate.
    pub residual_norm: f64,
    pub initial_residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl FitResult {
    pub fn values(&self) -> Vec<f64> {
        self.estimates.iter().map(|e| e.value).collect()
    }
}

struct Prepared {
    x: Vec<f64>,
    y: Vec<f64>,
    w: Vec<f64>,
    weighted: bool,
}

fn prepare(problem: &FitProblem) -> Result<Prepared> {
    let data = &problem.data;
    let k = problem.model.n_params();
    if data.len() < 2 * k {
        return Err(Error::Identifiability(format!(
            "{} samples for {k} parameters; need at least {}",
            data.len(),
            2 * k
        )));
    }
    let x: Vec<f64> = match (problem.model, data.axis) {
        (FitModel::ThermalThermal { theta0 }, DelayAxis::Tau) => {
            if !(theta0 > 0.0) {
                return Err(Error::Domain(format!(
                    "reference temperature must be positive, got {theta0}"
                )));
            }
            data.delays().iter().map(|t| t * theta0).collect()
        }
        _ => data.delays(),
    };
    let y = data.ratios();
    if x.iter().chain(&y).any(|v| !v.is_finite()) {
        return Err(Error::Data("non-finite sample".into()));
    }
    let (w, weighted) = match &problem.noise {
        None => (vec![1.0; y.len()], false),
        Some(sd) if sd.len() == y.len() && sd.iter().all(|s| *s > 0.0 && s.is_finite()) => {
            (sd.iter().map(|s| 1.0 / (s * s)).collect(), true)
        }
        Some(_) => {
            return Err(Error::Data(
                "noise column must be positive with one entry per sample".into(),
            ))
        }
    };
    let (lo, hi) = y
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(*v), b.max(*v))
        });
    if hi - lo <= 1e-12 * (1.0 + hi.abs()) {
        return Err(Error::Identifiability(
            "constant interferogram carries no fringe information".into(),
        ));
    }
    Ok(Prepared { x, y, w, weighted })
}

fn cost(model: &FitModel, d: &Prepared, p: &[f64]) -> f64 {
    d.x.iter()
        .zip(&d.y)
        .zip(&d.w)
        .map(|((&x, &y), &w)| w * (y - model.eval(x, p)).powi(2))
        .sum()
}

fn clamp(p: &mut [f64], bounds: &[(f64, f64)]) {
    for (v, (lo, hi)) in p.iter_mut().zip(bounds) {
        *v = v.clamp(*lo, *hi);
    }
}

// Dominant fringe frequency of the mean-subtracted data.
fn periodogram_peak(d: &Prepared) -> Option<f64> {
    let mean = d.y.iter().sum::<f64>() / d.y.len() as f64;
    let (lo, hi) =
        d.x.iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                (a.min(*v), b.max(*v))
            });
    let span = hi - lo;
    let mut sorted: Vec<f64> = d.x.clone();
    sorted.sort_by(f64::total_cmp);
    let mut gaps: Vec<f64> = sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|g| *g > 0.0)
        .collect();
    if gaps.is_empty() || !(span > 0.0) {
        return None;
    }
    gaps.sort_by(f64::total_cmp);
    let nyquist = std::f64::consts::PI / gaps[gaps.len() / 2];
    let step = std::f64::consts::PI / (4.0 * span);
    let n = ((nyquist / step) as usize).clamp(1, 20_000);
    (1..=n)
        .map(|k| {
            let w = k as f64 * step;
            let (c, s) = d.x.iter().zip(&d.y).fold((0.0, 0.0), |(c, s), (&x, &y)| {
                let (sn, cs) = (w * x).sin_cos();
                (c + (y - mean) * cs, s + (y - mean) * sn)
            });
            (w, c * c + s * s)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(w, _)| w)
}

fn grid(lo: f64, hi: f64, n: usize, log: bool) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            if log {
                (lo.ln() + t * (hi.ln() - lo.ln())).exp()
            } else {
                lo + t * (hi - lo)
            }
        })
        .collect()
}

fn starting_point(model: &FitModel, d: &Prepared, bounds: &[(f64, f64)]) -> Vec<f64> {
    let candidates: Vec<Vec<f64>> = match model {
        FitModel::ThermalThermal { .. } => {
            let (lo, hi) = bounds[0];
            grid(lo, hi, 401, true)
                .into_iter()
                .map(|r| vec![r])
                .collect()
        }
        _ => {
            let peak = periodogram_peak(d).unwrap_or(1.0);
            let ws = grid(0.6 * peak, 1.4 * peak, 81, false);
            let sig = grid(0.01 * peak, 2.0 * peak, 61, true);
            ws.iter()
                .flat_map(|&w| sig.iter().map(move |&s| vec![w, s]))
                .collect()
        }
    };
    candidates
        .into_iter()
        .map(|mut p| {
            clamp(&mut p, bounds);
            p
        })
        .min_by(|a, b| cost(model, d, a).total_cmp(&cost(model, d, b)))
        .expect("non-empty candidate grid")
}

/// Bounded Levenberg-Marquardt minimization of `Σ w_i (r_i − model(τ_i; p))²`.
///
/// Deterministic for identical inputs. Without an initial guess a coarse grid
/// search over the bounds (or around the dominant fringe frequency for
/// spectral models) provides the starting point.
pub fn fit(problem: &FitProblem) -> Result<FitResult> {
    let model = problem.model;
    let k = model.n_params();
    let d = prepare(problem)?;
    let bounds = problem
        .bounds
        .clone()
        .unwrap_or_else(|| model.default_bounds());
    if bounds.len() != k || bounds.iter().any(|(lo, hi)| !(lo < hi)) {
        return Err(Error::Domain(
            "bounds must give lo < hi for every parameter".into(),
        ));
    }
    let mut p = match &problem.initial {
        Some(p0) => {
            if p0.len() != k {
                return Err(Error::Domain(format!(
                    "expected {k} initial values, got {}",
                    p0.len()
                )));
            }
            if p0.iter().zip(&bounds).any(|(v, (lo, hi))| v < lo || v > hi) {
                return Err(Error::Domain(
                    "initial guess lies outside the bounds".into(),
                ));
            }
            p0.clone()
        }
        None => starting_point(&model, &d, &bounds),
    };

    let n = d.x.len();
    let mut c = cost(&model, &d, &p);
    let initial_residual_norm = c.sqrt();
    let mut lambda = 1e-3;
    let mut converged = false;
    let mut iterations = 0;
    let mut g = vec![0.0; k];
    let mut normal = DMatrix::zeros(k, k);

    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let mut jac = DMatrix::zeros(n, k);
        let mut res = DVector::zeros(n);
        for i in 0..n {
            let f = model.eval_with_gradient(d.x[i], &p, &mut g);
            let sw = d.w[i].sqrt();
            res[i] = sw * (d.y[i] - f);
            for j in 0..k {
                jac[(i, j)] = sw * g[j];
            }
        }
        normal = jac.transpose() * &jac;
        let grad = jac.transpose() * &res;
        // A gradient component pointing out of an active bound does not count.
        let free_grad = grad
            .iter()
            .zip(&p)
            .zip(&bounds)
            .map(|((gj, pj), (lo, hi))| {
                if (*pj <= *lo && *gj < 0.0) || (*pj >= *hi && *gj > 0.0) {
                    0.0
                } else {
                    *gj
                }
            })
            .fold(0.0f64, |m, v| m.max(v.abs()));
        if free_grad < GRADIENT_TOL {
            converged = true;
            break;
        }
        let mut accepted = false;
        while lambda < 1e16 {
            let mut damped = normal.clone();
            for j in 0..k {
                damped[(j, j)] += lambda * normal[(j, j)].max(1e-12);
            }
            let Some(step) = damped.lu().solve(&grad) else {
                lambda *= 10.0;
                continue;
            };
            let mut trial: Vec<f64> = p.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            clamp(&mut trial, &bounds);
            let moved = p
                .iter()
                .zip(&trial)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            let ct = cost(&model, &d, &trial);
            if ct <= c {
                let small = moved < STEP_TOL * (1.0 + p.iter().map(|v| v * v).sum::<f64>().sqrt());
                p = trial;
                c = ct;
                lambda = (lambda / 10.0).max(1e-12);
                accepted = true;
                if small {
                    converged = true;
                }
                break;
            }
            if moved < STEP_TOL {
                // No representable improvement remains.
                converged = true;
                break;
            }
            lambda *= 10.0;
        }
        if converged {
            break;
        }
        if !accepted {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            iterations,
            cost: c,
            best: p,
        });
    }

    let dof = (n - k).max(1) as f64;
    let scale = if d.weighted { 1.0 } else { c / dof };
    let cov = normal.clone().try_inverse();
    let estimates = p
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let var = cov
                .as_ref()
                .map(|m| m[(j, j)] * scale)
                .unwrap_or(f64::INFINITY);
            let floor = f64::EPSILON * v.abs().max(f64::MIN_POSITIVE);
            ParameterEstimate {
                name: model.parameter_names()[j].to_string(),
                value: v,
                uncertainty: var.max(0.0).sqrt().max(floor),
            }
        })
        .collect();
    Ok(FitResult {
        model,
        estimates,
        residual_norm: c.sqrt(),
        initial_residual_norm,
        iterations,
        converged,
    })
}
