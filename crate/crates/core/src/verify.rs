//! Triangulation of closed forms, quadrature and the brute-force oracles on
//! the four reference scenarios.

use crate::error::Result;
use crate::intensity::{
    coherent_intensity, coherent_intensity_closed, cross_term_integral, fock_intensity,
    fock_intensity_closed, thermal_thermal_ratio, thermal_vacuum_ratio, Method,
};
use crate::modes::ModeGrid;
use crate::optics::BeamSplitter;
use crate::oracle::{
    build_one_photon, coherent_amplitudes, detect_intensity_bruteforce,
    thermal_intensity_montecarlo, PortInput, DEFAULT_AMPLITUDE_CAP,
};
use crate::quadrature::Tolerance;
use crate::spectra::SpectralDistribution;
use crate::states::SpaceDimension;
use serde::Serialize;

/// Narrow-band closed forms against quadrature. The one-photon closed form
/// drops terms of relative order σ²/ω̄²; at ω̄ = 3σ that costs up to 0.0183.
pub const SPECTRAL_CLOSED_TOLERANCE: f64 = 2e-2;
pub const ORACLE_TOLERANCE: f64 = 1e-3;
pub const THERMAL_TOLERANCE: f64 = 1e-9;
pub const CROSS_TERM_TOLERANCE: f64 = 1e-9;
/// Monte-Carlo agreement in standard errors.
pub const MC_SIGMAS: f64 = 3.0;

/// Deliberate defects for exercising the verifier itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Evaluate the coherent quadrature path at `-τ`.
    FlipCoherentTau,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Skip the Monte-Carlo checks.
    pub quick: bool,
    pub mc_samples: usize,
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            quick: false,
            mc_samples: 100_000,
            seed: 20_240_601,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(name: &str, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            deviation,
            tolerance,
            passed: deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub scenarios: Vec<ScenarioReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.scenarios.iter().all(ScenarioReport::passed)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.scenarios
            .iter()
            .filter(|s| !s.passed())
            .map(|s| s.name.as_str())
            .collect()
    }
}

fn max_dev(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn tau_grid() -> Vec<f64> {
    (0..=120).map(|k| 0.05 * k as f64).collect()
}

fn a_grid() -> Vec<f64> {
    (0..500)
        .map(|k| 0.01 + (10.0 - 0.01) * k as f64 / 499.0)
        .collect()
}

/// Oracle grid with 101 modes over the union of `ω̄ ± 6σ`.
pub fn spectral_oracle_grid(
    fs: &SpectralDistribution,
    fl: &SpectralDistribution,
) -> Result<ModeGrid> {
    let lo = (fs.mean_freq() - 6.0 * fs.width())
        .min(fl.mean_freq() - 6.0 * fl.width())
        .max(0.0);
    let hi = (fs.mean_freq() + 6.0 * fs.width()).max(fl.mean_freq() + 6.0 * fl.width());
    ModeGrid::covering(lo, hi, 101)
}

fn oracle_ratios(
    signal: &PortInput,
    lo: &PortInput,
    grid: &ModeGrid,
    taus: &[f64],
) -> Result<Vec<f64>> {
    let mut all = vec![0.0];
    all.extend_from_slice(taus);
    let i = detect_intensity_bruteforce(
        signal,
        lo,
        grid,
        &all,
        &BeamSplitter::balanced(),
        DEFAULT_AMPLITUDE_CAP,
    )?;
    Ok(i[1..].iter().map(|v| v / i[0]).collect())
}

fn spectral_scenario(coherent: bool, opts: &VerifyOptions) -> Result<ScenarioReport> {
    let tol = Tolerance::default();
    let fs = SpectralDistribution::new(3.0, 1.0)?;
    let fl = SpectralDistribution::new(3.15, 1.0)?;
    let taus = tau_grid();
    let flip = coherent && opts.mutation == Some(Mutation::FlipCoherentTau);
    let library = |t: f64| -> Result<f64> {
        if coherent {
            coherent_intensity(&fs, &fl, if flip { -t } else { t }, &tol)
        } else {
            fock_intensity(&fs, &fl, t, &tol)
        }
    };
    let i0 = library(0.0)?;
    let quad: Vec<f64> = taus
        .iter()
        .map(|&t| library(t).map(|v| v / i0))
        .collect::<Result<_>>()?;
    let closed: Vec<f64> = taus
        .iter()
        .map(|&t| {
            if coherent {
                coherent_intensity_closed(&fs, &fl, t)
            } else {
                fock_intensity_closed(&fs, &fl, t)
            }
        })
        .collect::<Result<_>>()?;
    let grid = spectral_oracle_grid(&fs, &fl)?;
    let (s, l) = if coherent {
        (
            PortInput::Coherent(coherent_amplitudes(&fs, &grid)),
            PortInput::Coherent(coherent_amplitudes(&fl, &grid)),
        )
    } else {
        (
            PortInput::Fock(build_one_photon(&fs, &grid)?),
            PortInput::Fock(build_one_photon(&fl, &grid)?),
        )
    };
    let oracle = oracle_ratios(&s, &l, &grid, &taus)?;
    let mut checks = vec![
        Check::new(
            "closed_vs_quadrature",
            max_dev(&closed, &quad),
            SPECTRAL_CLOSED_TOLERANCE,
        ),
        Check::new(
            "oracle_vs_quadrature",
            max_dev(&oracle, &quad),
            ORACLE_TOLERANCE,
        ),
    ];
    if coherent {
        let mut worst: f64 = 0.0;
        for &t in &taus {
            let diff = library(t)? - fock_intensity(&fs, &fl, t, &tol)?;
            worst = worst.max((diff - cross_term_integral(&fs, &fl, t, &tol)?).abs());
        }
        checks.push(Check::new(
            "cross_term_identity",
            worst,
            CROSS_TERM_TOLERANCE,
        ));
    }
    Ok(ScenarioReport {
        name: if coherent {
            "coherent-coherent"
        } else {
            "fock-fock"
        }
        .into(),
        checks,
    })
}

fn thermal_scenario(
    theta_s: f64,
    theta_lo: Option<f64>,
    opts: &VerifyOptions,
) -> Result<ScenarioReport> {
    let tol = Tolerance::default();
    let ratio = |a: f64, m: Method| match theta_lo {
        None => thermal_vacuum_ratio(1.0, a, SpaceDimension::THREE, m, &tol),
        Some(t0) => thermal_thermal_ratio(t0, theta_s, a, m, &tol),
    };
    let grid = a_grid();
    let closed: Vec<f64> = grid
        .iter()
        .map(|&a| ratio(a, Method::ClosedForm))
        .collect::<Result<_>>()?;
    let quad: Vec<f64> = grid
        .iter()
        .map(|&a| ratio(a, Method::Quadrature))
        .collect::<Result<_>>()?;
    let mut checks = vec![Check::new(
        "closed_vs_quadrature",
        max_dev(&closed, &quad),
        THERMAL_TOLERANCE,
    )];
    if !opts.quick {
        let taus = [0.5, 1.0, 2.0];
        let modes = ModeGrid::thermal_default(theta_s.max(theta_lo.unwrap_or(0.0)))?;
        let mc = thermal_intensity_montecarlo(
            theta_s,
            theta_lo,
            &modes,
            SpaceDimension::THREE,
            &taus,
            opts.mc_samples,
            opts.seed,
        )?;
        let worst = mc
            .points
            .iter()
            .map(|p| {
                Ok((p.ratio - ratio(p.tau, Method::ClosedForm)?).abs()
                    / p.stderr.max(f64::MIN_POSITIVE))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        checks.push(Check::new("montecarlo_sigmas", worst, MC_SIGMAS));
    }
    Ok(ScenarioReport {
        name: if theta_lo.is_some() {
            "thermal-thermal"
        } else {
            "thermal-vacuum"
        }
        .into(),
        checks,
    })
}

pub fn run_verification(opts: &VerifyOptions) -> Result<VerifyReport> {
    Ok(VerifyReport {
        scenarios: vec![
            spectral_scenario(false, opts)?,
            spectral_scenario(true, opts)?,
            thermal_scenario(1.0, None, opts)?,
            thermal_scenario(1.01, Some(1.0), opts)?,
        ],
    })
}
