//! Input port states and thermal occupation machinery.

use crate::error::{domain, Error, Result};
use crate::modes::ModeGrid;
use crate::quadrature::{integrate_semi_infinite, Estimate, Tail, Tolerance};
use crate::spectra::{Kernel, SpectralDistribution};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// State prepared in one input port of the interferometer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PortState {
    Vacuum,
    /// One photon in a Gaussian wavepacket.
    OnePhoton(SpectralDistribution),
    /// Multimode coherent state displaced by the same wavepacket.
    Coherent(SpectralDistribution),
    /// Blackbody light at dimensionless temperature `θ = k_B T/ħ`.
    Thermal {
        theta: f64,
    },
}

impl PortState {
    pub fn thermal(theta: f64) -> Result<Self> {
        if !(theta > 0.0) || !theta.is_finite() {
            return domain(format!("temperature must be positive, got {theta}"));
        }
        Ok(PortState::Thermal { theta })
    }

    pub fn spectrum(&self) -> Option<&SpectralDistribution> {
        match self {
            PortState::OnePhoton(f) | PortState::Coherent(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_thermal(&self) -> bool {
        matches!(self, PortState::Thermal { .. })
    }
}

/// Number of space dimensions entering the mode density `ω^{d-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpaceDimension(u32);

impl SpaceDimension {
    pub const ONE: Self = Self(1);
    pub const THREE: Self = Self(3);

    /// The supported dimensions, 1 and 3.
    pub fn new(d: u32) -> Result<Self> {
        match d {
            1 | 3 => Ok(Self(d)),
            _ => Err(Error::UnsupportedDimension(d)),
        }
    }

    /// Any `d ≥ 1`; only the quadrature paths accept these.
    pub fn general(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::UnsupportedDimension(d));
        }
        Ok(Self(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Bose-Einstein occupation `n̄ = 1/(e^{ω/θ} - 1)`.
pub fn mean_occupation(omega: f64, theta: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return domain(format!("occupation has a pole at ω = 0; got ω = {omega}"));
    }
    if !(theta > 0.0) {
        return domain(format!("temperature must be positive, got {theta}"));
    }
    Ok(1.0 / (omega / theta).exp_m1())
}

/// `x^d / (eˣ - 1)`, continuous at `x = 0` for `d ≥ 1`.
#[inline]
pub(crate) fn bose_weight(x: f64, d: u32) -> f64 {
    if x == 0.0 {
        return if d == 1 { 1.0 } else { 0.0 };
    }
    x.powi(d as i32 - 1) * (x / x.exp_m1())
}

/// `∫₀^∞ ω^d n̄(ω, θ) K(ωτ) dω = θ^{d+1} ∫₀^∞ x^d/(eˣ-1) K(a x) dx`, `a = τθ`.
pub fn bose_weighted_integral(
    theta: f64,
    d: SpaceDimension,
    kernel: Kernel,
    tau: f64,
    tol: &Tolerance,
) -> Result<Estimate> {
    if !(theta > 0.0) {
        return domain(format!("temperature must be positive, got {theta}"));
    }
    let d = d.get();
    let a = tau * theta;
    let oscillation = if kernel == Kernel::One { 0.0 } else { a.abs() };
    let est = integrate_semi_infinite(
        |x| bose_weight(x, d) * kernel.eval(a * x),
        Tail::Exponential {
            rate: 1.0,
            power: d as f64,
        },
        oscillation,
        tol,
    )?;
    let scale = theta.powi(d as i32 + 1);
    Ok(Estimate {
        value: est.value * scale,
        error: est.error * scale,
        evaluations: est.evaluations,
    })
}

/// One draw of the thermal field from the Glauber-Sudarshan P function.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalSampleField {
    pub frequencies: Vec<f64>,
    pub spacings: Vec<f64>,
    pub amplitudes: Vec<Complex64>,
    pub seed: u64,
}

/// Draws circular complex Gaussian amplitudes with `E|α_j|² = n̄(ω_j, θ)`.
///
/// Each grid point is one field mode carrying the full per-mode occupation;
/// the continuum density of modes enters only through the grid measure when
/// the detector sums over modes.
#[derive(Debug, Clone)]
pub struct ThermalSampler {
    std_dev: Vec<f64>,
}

impl ThermalSampler {
    pub fn new(theta: f64, grid: &ModeGrid) -> Result<Self> {
        if grid.is_empty() {
            return domain("thermal sampling needs a non-empty grid");
        }
        let std_dev = grid
            .frequencies()
            .iter()
            .map(|&w| mean_occupation(w, theta).map(|n| (0.5 * n).sqrt()))
            .collect::<Result<_>>()?;
        Ok(Self { std_dev })
    }

    pub fn len(&self) -> usize {
        self.std_dev.len()
    }

    pub fn is_empty(&self) -> bool {
        self.std_dev.is_empty()
    }

    pub fn draw_into<R: rand::Rng + ?Sized>(&self, rng: &mut R, out: &mut [Complex64]) {
        for (alpha, &s) in out.iter_mut().zip(&self.std_dev) {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            *alpha = Complex64::new(s * re, s * im);
        }
    }
}

/// Single seeded thermal field on `grid`.
pub fn sample_thermal_field(theta: f64, grid: &ModeGrid, seed: u64) -> Result<ThermalSampleField> {
    let sampler = ThermalSampler::new(theta, grid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); grid.len()];
    sampler.draw_into(&mut rng, &mut amplitudes);
    Ok(ThermalSampleField {
        frequencies: grid.frequencies().to_vec(),
        spacings: grid.spacings().to_vec(),
        amplitudes,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{bose_constant, gamma, zeta};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn occupation_examples() {
        let theta = 2.5;
        assert_relative_eq!(
            mean_occupation(theta * 2f64.ln(), theta).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            mean_occupation(10.0, 1.0).unwrap(),
            4.540_199_100_968_776_8e-5,
            max_relative = 1e-14
        );
        assert!(mean_occupation(800.0, 1.0).unwrap() == 0.0);
        assert!(mean_occupation(0.0, 1.0).is_err());
        assert!(mean_occupation(-1.0, 1.0).is_err());
        assert!(mean_occupation(1.0, 0.0).is_err());
    }

    #[test]
    fn occupation_identity() {
        for i in 0..=200 {
            let x = 1e-6 * (3e7f64).powf(i as f64 / 200.0);
            let n = mean_occupation(x, 1.0).unwrap();
            assert!((n * x.exp_m1() - 1.0).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn occupation_pole_behaviour() {
        let theta = 3.0;
        let w = 1e-8;
        assert_relative_eq!(
            mean_occupation(w, theta).unwrap() * w / theta,
            1.0,
            max_relative = 1e-8
        );
    }

    #[test]
    fn bose_integral_constants() {
        let tol = Tolerance::default();
        let theta = 1.7;
        for (d, exact) in [(1u32, PI * PI / 6.0), (3, PI.powi(4) / 15.0)] {
            let dim = SpaceDimension::new(d).unwrap();
            let v = bose_weighted_integral(theta, dim, Kernel::One, 0.0, &tol)
                .unwrap()
                .value;
            assert_relative_eq!(v, theta.powi(d as i32 + 1) * exact, max_relative = 1e-10);
            let s = d as f64 + 1.0;
            assert_relative_eq!(
                v,
                gamma(s) * zeta(s).unwrap() * theta.powi(d as i32 + 1),
                max_relative = 1e-9
            );
        }
    }

    #[test]
    fn bose_cos_kernel_matches_closed_form() {
        // a = τθ = 1, d = 3: bracket of the thermal-vacuum closed form times J(3).
        let theta = 0.8;
        let tau = 1.0 / theta;
        let x = PI;
        let g = (2.0 + (2.0 * x).cosh()) / x.sinh().powi(4);
        let bracket = 15.0 * (g - 3.0 / x.powi(4));
        let v = bose_weighted_integral(
            theta,
            SpaceDimension::THREE,
            Kernel::Cos,
            tau,
            &Tolerance::default(),
        )
        .unwrap()
        .value;
        let expected = theta.powi(4) * bose_constant(3).unwrap() * bracket;
        assert!((v - expected).abs() < 1e-11 * theta.powi(4));
    }

    #[test]
    fn sampling_is_deterministic() {
        let grid = ModeGrid::thermal_default(1.0).unwrap();
        let a = sample_thermal_field(1.0, &grid, 42).unwrap();
        let b = sample_thermal_field(1.0, &grid, 42).unwrap();
        let c = sample_thermal_field(1.0, &grid, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.amplitudes, c.amplitudes);
    }

    #[test]
    fn sampled_occupation_and_phase_symmetry() {
        let theta = 1.0;
        let grid = ModeGrid::uniform(0.7, 1.0, 1).unwrap();
        let nbar = mean_occupation(0.7, theta).unwrap();
        let sampler = ThermalSampler::new(theta, &grid).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = 1_000_000;
        let mut buf = [Complex64::new(0.0, 0.0)];
        let (mut s_abs, mut s_abs2, mut s_re, mut s_im, mut s_re2, mut s_im2) =
            (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        for _ in 0..m {
            sampler.draw_into(&mut rng, &mut buf);
            let a = buf[0];
            let p = a.norm_sqr();
            s_abs += p;
            s_abs2 += p * p;
            s_re += a.re;
            s_im += a.im;
            s_re2 += a.re * a.re;
            s_im2 += a.im * a.im;
        }
        let mf = m as f64;
        let mean = s_abs / mf;
        let se = ((s_abs2 / mf - mean * mean) / mf).sqrt();
        assert!(
            (mean - nbar).abs() < 3.0 * se,
            "mean {mean} vs {nbar} (se {se})"
        );
        let se_re = (nbar / 2.0 / mf).sqrt();
        assert!((s_re / mf).abs() < 3.0 * se_re);
        assert!((s_im / mf).abs() < 3.0 * se_re);
        // Circular symmetry: Var Re α ≈ Var Im α ≈ n̄/2; the variance estimator
        // of a normal has relative standard error √(2/M).
        let tol = 3.0 * (nbar / 2.0) * (2.0 / mf).sqrt() * 2f64.sqrt();
        assert!((s_re2 / mf - s_im2 / mf).abs() < tol);
    }

    #[test]
    fn dimension_validation() {
        assert!(SpaceDimension::new(2).is_err());
        assert!(SpaceDimension::new(3).is_ok());
        assert_eq!(SpaceDimension::general(2).unwrap().get(), 2);
        assert!(SpaceDimension::general(0).is_err());
        assert!(PortState::thermal(0.0).is_err());
    }
}
