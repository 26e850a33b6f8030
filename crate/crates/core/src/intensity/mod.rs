//! Normalized detection intensity `⟨I⟩(τ)/⟨I⟩(0)` for every port pairing.
//!
//! Unnormalized intensities use the scale `2∫ω^d (…) dω` throughout; only
//! ratios are meaningful.

mod spectral;
mod thermal;

pub use crate::states::SpaceDimension;
pub use spectral::{
    coherent_intensity, coherent_intensity_closed, cross_term_integral, fock_intensity,
    fock_intensity_closed, one_photon_vacuum_ratio, spectral_intensity,
};
pub use thermal::{
    stable_thermal_kernel, subtracted_thermal_kernel, subtracted_thermal_kernel_derivative,
    thermal_pair_ratio, thermal_thermal_asymptote, thermal_thermal_ratio, thermal_vacuum_ratio,
    X_SWITCH,
};

use crate::error::{domain, Error, Result};
use crate::optics::BeamSplitter;
use crate::quadrature::Tolerance;
use crate::special::bose_constant;
use crate::spectra::SpectralDistribution;
use crate::states::PortState;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    /// Closed form where one exists, quadrature otherwise.
    Auto,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" | "closed_form" | "closed-form" => Ok(Method::ClosedForm),
            "quadrature" | "quad" => Ok(Method::Quadrature),
            "auto" => Ok(Method::Auto),
            other => Err(Error::UnsupportedMethod(other.to_string())),
        }
    }
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::Auto => "auto",
        }
    }
}

/// Column label of the delay axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DelayAxis {
    /// Delay `τ` in reciprocal frequency units.
    Tau,
    /// Dimensionless thermal delay `a = τθ`.
    A,
}

impl DelayAxis {
    pub fn label(self) -> &'static str {
        match self {
            DelayAxis::Tau => "tau",
            DelayAxis::A => "a",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub delay: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Metadata {
    pub scenario: String,
    pub method: String,
    pub seed: Option<u64>,
}

/// Normalized interferogram with the unnormalized zero-delay intensity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interferogram {
    pub axis: DelayAxis,
    pub samples: Vec<Sample>,
    pub normalization: f64,
    pub metadata: Metadata,
}

impl Interferogram {
    pub fn from_pairs(axis: DelayAxis, pairs: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Self {
            axis,
            samples: pairs
                .into_iter()
                .map(|(delay, ratio)| Sample { delay, ratio })
                .collect(),
            normalization: f64::NAN,
            metadata: Metadata::default(),
        }
    }

    pub fn delays(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.delay).collect()
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.ratio).collect()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// A port pairing, delay grid and evaluation route.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityRequest {
    pub signal: PortState,
    pub lo: PortState,
    pub dimension: SpaceDimension,
    pub delays: Vec<f64>,
    pub method: Method,
    pub tolerance: Tolerance,
    pub splitter: BeamSplitter,
}

#[derive(Debug, Clone, Copy)]
enum Scenario {
    Spectral {
        signal: Option<SpectralDistribution>,
        lo: Option<SpectralDistribution>,
        coherent_cross: bool,
        closed_kind: Option<ClosedSpectral>,
    },
    ThermalVacuum {
        theta: f64,
    },
    ThermalThermal {
        theta_s: f64,
        theta_lo: f64,
    },
}

#[derive(Debug, Clone, Copy)]
enum ClosedSpectral {
    Fock,
    Coherent,
    Vacuum,
}

impl IntensityRequest {
    /// Balanced splitter, automatic method, d = 3 for thermal inputs and d = 1
    /// otherwise.
    pub fn new(signal: PortState, lo: PortState, delays: Vec<f64>) -> Self {
        let dimension = if signal.is_thermal() || lo.is_thermal() {
            SpaceDimension::THREE
        } else {
            SpaceDimension::ONE
        };
        Self {
            signal,
            lo,
            dimension,
            delays,
            method: Method::Auto,
            tolerance: Tolerance::default(),
            splitter: BeamSplitter::balanced(),
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_dimension(mut self, dimension: SpaceDimension) -> Self {
        self.dimension = dimension;
        self
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_splitter(mut self, splitter: BeamSplitter) -> Self {
        self.splitter = splitter;
        self
    }

    fn scenario(&self) -> Result<Scenario> {
        use PortState::*;
        match (self.signal, self.lo) {
            (Thermal { theta }, Vacuum) => Ok(Scenario::ThermalVacuum { theta }),
            (Thermal { theta: theta_s }, Thermal { theta: theta_lo }) => {
                Ok(Scenario::ThermalThermal { theta_s, theta_lo })
            }
            (Vacuum, Thermal { .. }) => {
                domain("signal port is vacuum: zero intensity at zero delay")
            }
            (Thermal { .. }, _) | (_, Thermal { .. }) => {
                domain("thermal inputs can only be paired with vacuum or another thermal source")
            }
            (Vacuum, _) => domain("signal port is vacuum: zero intensity at zero delay"),
            (s, l) => {
                if self.dimension.get() != 1 {
                    return Err(Error::UnsupportedDimension(self.dimension.get()));
                }
                let closed_kind = match (s, l) {
                    (OnePhoton(_), OnePhoton(_)) => Some(ClosedSpectral::Fock),
                    (Coherent(_), Coherent(_)) => Some(ClosedSpectral::Coherent),
                    (OnePhoton(_) | Coherent(_), Vacuum) => Some(ClosedSpectral::Vacuum),
                    _ => None,
                };
                Ok(Scenario::Spectral {
                    signal: s.spectrum().copied(),
                    lo: l.spectrum().copied(),
                    coherent_cross: matches!((s, l), (Coherent(_), Coherent(_))),
                    closed_kind,
                })
            }
        }
    }

    fn name(&self) -> String {
        fn port(p: &PortState) -> &'static str {
            match p {
                PortState::Vacuum => "vacuum",
                PortState::OnePhoton(_) => "one_photon",
                PortState::Coherent(_) => "coherent",
                PortState::Thermal { .. } => "thermal",
            }
        }
        format!("{}/{}", port(&self.signal), port(&self.lo))
    }

    /// The route actually taken for this request.
    pub fn resolved_method(&self) -> Result<Method> {
        let has_closed = match self.scenario()? {
            Scenario::Spectral { closed_kind, .. } => closed_kind.is_some(),
            Scenario::ThermalVacuum { .. } | Scenario::ThermalThermal { .. } => {
                self.dimension.get() == 3
            }
        } && self.splitter.is_balanced();
        match self.method {
            Method::ClosedForm if !has_closed => Err(Error::UnsupportedMethod(format!(
                "no closed form for {} in d = {} with T = {}",
                self.name(),
                self.dimension.get(),
                self.splitter.transmittance()
            ))),
            Method::Auto if has_closed => Ok(Method::ClosedForm),
            Method::Auto => Ok(Method::Quadrature),
            m => Ok(m),
        }
    }

    /// Evaluate the interferogram on the delay grid, in parallel, preserving
    /// the input order.
    pub fn evaluate(&self) -> Result<Interferogram> {
        let method = self.resolved_method()?;
        let scenario = self.scenario()?;
        let closed = method == Method::ClosedForm;
        let tol = self.tolerance;
        let splitter = self.splitter;
        let d = self.dimension;

        let (normalization, ratios): (f64, Vec<f64>) = match scenario {
            Scenario::Spectral {
                signal,
                lo,
                coherent_cross,
                closed_kind,
            } => {
                let s = signal.ok_or_else(|| Error::Domain("signal spectrum missing".into()))?;
                if closed {
                    let l = lo;
                    let eval = |tau: f64| -> Result<f64> {
                        match (closed_kind, l) {
                            (Some(ClosedSpectral::Fock), Some(l)) => {
                                fock_intensity_closed(&s, &l, tau)
                            }
                            (Some(ClosedSpectral::Coherent), Some(l)) => {
                                coherent_intensity_closed(&s, &l, tau)
                            }
                            _ => Ok(one_photon_vacuum_ratio(&s, tau)),
                        }
                    };
                    let ratios = self
                        .delays
                        .par_iter()
                        .map(|&t| eval(t))
                        .collect::<Result<Vec<_>>>()?;
                    (2.0 * s.mean_freq(), ratios)
                } else {
                    let eval = |tau: f64| {
                        spectral_intensity(
                            Some(&s),
                            lo.as_ref(),
                            coherent_cross,
                            &splitter,
                            tau,
                            &tol,
                        )
                        .map(|e| e.value)
                    };
                    let i0 = eval(0.0)?;
                    if !(i0 > 0.0) {
                        return domain("zero intensity at zero delay");
                    }
                    let ratios = self
                        .delays
                        .par_iter()
                        .map(|&t| {
                            if t == 0.0 {
                                Ok(1.0)
                            } else {
                                eval(t).map(|v| v / i0)
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    (i0, ratios)
                }
            }
            Scenario::ThermalVacuum { theta } => {
                let ratios = if splitter.is_balanced() {
                    self.delays
                        .par_iter()
                        .map(|&t| thermal_vacuum_ratio(theta, t, d, method, &tol))
                        .collect::<Result<Vec<_>>>()?
                } else {
                    self.delays
                        .par_iter()
                        .map(|&t| thermal_general_splitter(theta, None, t, d, &splitter, &tol))
                        .collect::<Result<Vec<_>>>()?
                };
                let j = bose_constant(d.get())?;
                (
                    2.0 * theta.powi(d.get() as i32 + 1) * j * signal_share(&splitter),
                    ratios,
                )
            }
            Scenario::ThermalThermal { theta_s, theta_lo } => {
                let ratios = if splitter.is_balanced() {
                    self.delays
                        .par_iter()
                        .map(|&t| thermal_pair_ratio(theta_lo, theta_s, t, d, method, &tol))
                        .collect::<Result<Vec<_>>>()?
                } else {
                    self.delays
                        .par_iter()
                        .map(|&t| {
                            thermal_general_splitter(theta_s, Some(theta_lo), t, d, &splitter, &tol)
                        })
                        .collect::<Result<Vec<_>>>()?
                };
                let j = bose_constant(d.get())?;
                let p = d.get() as i32 + 1;
                let t = splitter.transmittance();
                let lo_share = (2.0 * t - 1.0).powi(2);
                (
                    2.0 * j
                        * (theta_s.powi(p) * signal_share(&splitter) + theta_lo.powi(p) * lo_share),
                    ratios,
                )
            }
        };

        for (t, r) in self.delays.iter().zip(&ratios) {
            if !r.is_finite() || *r < -1e-12 {
                return Err(Error::Domain(format!(
                    "non-physical ratio {r} at delay {t}"
                )));
            }
        }

        Ok(Interferogram {
            axis: DelayAxis::Tau,
            samples: self
                .delays
                .iter()
                .zip(ratios)
                .map(|(&delay, ratio)| Sample { delay, ratio })
                .collect(),
            normalization,
            metadata: Metadata {
                scenario: self.name(),
                method: method.name().to_string(),
                seed: None,
            },
        })
    }
}

// Zero-delay signal weight 4T(1-T).
fn signal_share(bs: &BeamSplitter) -> f64 {
    let t = bs.transmittance();
    4.0 * t * (1.0 - t)
}

/// Thermal ratio for an arbitrary transmittance through Bose integrals.
fn thermal_general_splitter(
    theta_s: f64,
    theta_lo: Option<f64>,
    tau: f64,
    d: SpaceDimension,
    bs: &BeamSplitter,
    tol: &Tolerance,
) -> Result<f64> {
    if tau == 0.0 {
        return Ok(1.0);
    }
    let t = bs.transmittance();
    let r = 1.0 - t;
    let p = d.get() as i32 + 1;
    let j = bose_constant(d.get())?;
    // signal: 2T(1-T)(1 + cos), lo: (T² + R²) - 2TR cos
    let intensity = |tau: f64| -> Result<f64> {
        let mut total =
            2.0 * t * r * theta_s.powi(p) * (j + j * thermal::bose_fringe(tau * theta_s, d, tol)?);
        if let Some(theta_lo) = theta_lo {
            total += theta_lo.powi(p)
                * ((t * t + r * r) * j
                    - 2.0 * t * r * j * thermal::bose_fringe(tau * theta_lo, d, tol)?);
        }
        Ok(total)
    };
    let i0 = intensity(0.0)?;
    if !(i0 > 0.0) {
        return domain("zero intensity at zero delay");
    }
    Ok(intensity(tau)? / i0)
}
