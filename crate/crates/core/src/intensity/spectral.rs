//! Interferograms of one-photon and coherent wavepackets (d = 1).

use crate::error::{domain, Result};
use crate::optics::{detector_kernel, BeamSplitter, DelayLine};
use crate::quadrature::{integrate_semi_infinite, Estimate, Tolerance};
use crate::spectra::{weighted_overlap, Kernel, SpectralDistribution};

/// `2∫₀^∞ ω [w_s f_s² + w_lo f_lo² + w_x f_s f_lo] dω` for the detector
/// weights of `splitter`. A missing spectrum stands for vacuum; the cross
/// term is only present when both ports hold coherent states.
pub fn spectral_intensity(
    signal: Option<&SpectralDistribution>,
    lo: Option<&SpectralDistribution>,
    coherent_cross: bool,
    splitter: &BeamSplitter,
    tau: f64,
    tol: &Tolerance,
) -> Result<Estimate> {
    let tail = match (signal, lo) {
        (Some(s), Some(l)) => s.tail_with(l),
        (Some(s), None) => s.tail_with(s),
        (None, Some(l)) => l.tail_with(l),
        (None, None) => {
            return Ok(Estimate {
                value: 0.0,
                error: 0.0,
                evaluations: 0,
            })
        }
    };
    let kernel = detector_kernel(splitter, DelayLine::new(tau));
    let cross = coherent_cross && signal.is_some() && lo.is_some();
    let integrand = |w: f64| {
        let fs = signal.map_or(0.0, |f| f.amplitude(w));
        let fl = lo.map_or(0.0, |f| f.amplitude(w));
        let mut v = kernel.signal_weight(w) * fs * fs + kernel.lo_weight(w) * fl * fl;
        if cross {
            v += kernel.cross_weight(w) * fs * fl;
        }
        2.0 * w * v
    };
    integrate_semi_infinite(integrand, tail, tau.abs(), tol)
}

/// One photon in each port, balanced splitter.
pub fn fock_intensity(
    f_s: &SpectralDistribution,
    f_lo: &SpectralDistribution,
    tau: f64,
    tol: &Tolerance,
) -> Result<f64> {
    Ok(spectral_intensity(
        Some(f_s),
        Some(f_lo),
        false,
        &BeamSplitter::balanced(),
        tau,
        tol,
    )?
    .value)
}

/// Coherent states in both ports, balanced splitter.
pub fn coherent_intensity(
    f_s: &SpectralDistribution,
    f_lo: &SpectralDistribution,
    tau: f64,
    tol: &Tolerance,
) -> Result<f64> {
    Ok(spectral_intensity(
        Some(f_s),
        Some(f_lo),
        true,
        &BeamSplitter::balanced(),
        tau,
        tol,
    )?
    .value)
}

/// The coherent-state cross term `-2∫ω f_s f_lo sin ωτ dω` on its own.
pub fn cross_term_integral(
    f_s: &SpectralDistribution,
    f_lo: &SpectralDistribution,
    tau: f64,
    tol: &Tolerance,
) -> Result<f64> {
    Ok(-2.0 * weighted_overlap(f_s, f_lo, 1, Kernel::Sin, tau, tol)?.value)
}

fn check_closed_form_regime(f_s: &SpectralDistribution, f_lo: &SpectralDistribution) -> Result<()> {
    let sigma = f_s.width();
    if (f_lo.width() - sigma).abs() > 1e-12 * sigma {
        return domain("closed forms assume a common spectral width in both ports");
    }
    for (port, f) in [("signal", f_s), ("local oscillator", f_lo)] {
        let u = f.mean_freq() / sigma;
        if u < 2.0 {
            return domain(format!(
                "closed form requires mean frequency ≥ 2σ in the {port} port (got {u:.3}σ)"
            ));
        }
        if u < 3.0 {
            log::warn!(
                "{port} mean frequency {u:.3}σ is below 3σ; closed form is a rough approximation"
            );
        }
    }
    Ok(())
}

/// Narrow-band approximation of the one-photon interferogram (ratio).
pub fn fock_intensity_closed(
    f_s: &SpectralDistribution,
    f_lo: &SpectralDistribution,
    tau: f64,
) -> Result<f64> {
    check_closed_form_regime(f_s, f_lo)?;
    if tau == 0.0 {
        return Ok(1.0);
    }
    let (ws, wl, sigma) = (f_s.mean_freq(), f_lo.mean_freq(), f_s.width());
    let rho = wl / ws;
    let envelope = (-(sigma * tau).powi(2) / 4.0).exp();
    Ok(0.5 * (1.0 + rho + envelope * ((tau * ws).cos() - rho * (tau * wl).cos())))
}

/// Narrow-band approximation of the coherent-state interferogram (ratio).
///
/// Adds the cross term `-(1/ω̄_s) e^{-Δ²/4σ²} e^{-(στ)²/4} [ω̄ sin ω̄τ + (σ²τ/2) cos ω̄τ]`
/// to the one-photon form, with `ω̄` the mean and `Δ` the difference of the two
/// carrier frequencies.
pub fn coherent_intensity_closed(
    f_s: &SpectralDistribution,
    f_lo: &SpectralDistribution,
    tau: f64,
) -> Result<f64> {
    let fock = fock_intensity_closed(f_s, f_lo, tau)?;
    let (ws, wl, sigma) = (f_s.mean_freq(), f_lo.mean_freq(), f_s.width());
    let mid = 0.5 * (ws + wl);
    let overlap = (-((ws - wl) / sigma).powi(2) / 4.0).exp();
    let envelope = (-(sigma * tau).powi(2) / 4.0).exp();
    let (s, c) = (mid * tau).sin_cos();
    Ok(fock - overlap * envelope / ws * (mid * s + 0.5 * sigma * sigma * tau * c))
}

/// One photon against vacuum: `½(1 + e^{-(στ)²/4} cos ω̄τ)`.
pub fn one_photon_vacuum_ratio(f_s: &SpectralDistribution, tau: f64) -> f64 {
    if tau == 0.0 {
        return 1.0;
    }
    let envelope = (-(f_s.width() * tau).powi(2) / 4.0).exp();
    0.5 * (1.0 + envelope * (tau * f_s.mean_freq()).cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spectra(lo: f64) -> (SpectralDistribution, SpectralDistribution) {
        (
            SpectralDistribution::new(3.0, 1.0).unwrap(),
            SpectralDistribution::new(lo, 1.0).unwrap(),
        )
    }

    /// Midpoint Riemann sum at Δω = σ/10⁴.
    fn riemann(integrand: impl Fn(f64) -> f64) -> f64 {
        let dw = 1e-4;
        (0..200_000)
            .map(|k| integrand((k as f64 + 0.5) * dw))
            .sum::<f64>()
            * dw
    }

    #[test]
    fn fock_zero_delay_is_twice_mean_frequency() {
        let tol = Tolerance::default();
        let (fs, fl) = spectra(3.15);
        let i0 = fock_intensity(&fs, &fl, 0.0, &tol).unwrap();
        let mean = weighted_overlap(&fs, &fs, 1, Kernel::One, 0.0, &tol)
            .unwrap()
            .value;
        assert!((i0 - 2.0 * mean).abs() < 1e-12 * i0);
    }

    #[test]
    fn fock_against_riemann_oracle() {
        let tol = Tolerance::default();
        let (fs, fl) = spectra(3.15);
        let tau = 1.0;
        let oracle = |t: f64| {
            riemann(|w| {
                w * fs.density(w) * (1.0 + (w * t).cos())
                    + w * fl.density(w) * (1.0 - (w * t).cos())
            })
        };
        let ratio = fock_intensity(&fs, &fl, tau, &tol).unwrap()
            / fock_intensity(&fs, &fl, 0.0, &tol).unwrap();
        let expected = oracle(tau) / oracle(0.0);
        assert!((ratio - expected).abs() < 1e-6 * expected);
        // High-precision reference.
        assert!((ratio - 1.038_641_744_287_393_824).abs() < 1e-11);
    }

    #[test]
    fn fock_plateau() {
        let tol = Tolerance::default();
        for lo in [3.15, 2.85] {
            let (fs, fl) = spectra(lo);
            let r = fock_intensity(&fs, &fl, 25.0, &tol).unwrap()
                / fock_intensity(&fs, &fl, 0.0, &tol).unwrap();
            assert!((r - 0.5 * (1.0 + lo / 3.0)).abs() < 1e-4);
        }
    }

    #[test]
    fn closed_form_examples() {
        let (fs, fl) = spectra(3.15);
        assert_eq!(fock_intensity_closed(&fs, &fl, 0.0).unwrap(), 1.0);
        let far = fock_intensity_closed(&fs, &fl, 10.0).unwrap();
        assert!((far - 1.025).abs() < (-25.0f64).exp() * 2.0);
        let narrow = SpectralDistribution::new(1.5, 1.0).unwrap();
        assert!(fock_intensity_closed(&narrow, &fl, 1.0).is_err());
        let wide = SpectralDistribution::new(3.15, 1.5).unwrap();
        assert!(fock_intensity_closed(&fs, &wide, 1.0).is_err());
    }

    #[test]
    fn closed_form_error_at_three_sigma() {
        // Measured approximation error of the narrow-band form at ω̄ = 3σ:
        // about 1.4e-2 at τσ = 1 and at most 1.9e-2 over τσ ∈ [0, 6].
        let tol = Tolerance::default();
        for lo in [3.15, 2.85] {
            let (fs, fl) = spectra(lo);
            let i0 = fock_intensity(&fs, &fl, 0.0, &tol).unwrap();
            let mut worst: f64 = 0.0;
            for k in 0..=600 {
                let tau = 0.01 * k as f64;
                let q = fock_intensity(&fs, &fl, tau, &tol).unwrap() / i0;
                worst = worst.max((q - fock_intensity_closed(&fs, &fl, tau).unwrap()).abs());
            }
            assert!(worst > 1.7e-2 && worst < 1.9e-2, "lo = {lo}: {worst}");
        }
        let (fs, fl) = spectra(3.15);
        let q = fock_intensity(&fs, &fl, 1.0, &tol).unwrap()
            / fock_intensity(&fs, &fl, 0.0, &tol).unwrap();
        let c = fock_intensity_closed(&fs, &fl, 1.0).unwrap();
        assert!((q - c).abs() < 1.5e-2);
    }

    #[test]
    fn coherent_examples() {
        let tol = Tolerance::default();
        let (fs, fl) = spectra(3.15);
        let c0 = coherent_intensity(&fs, &fl, 0.0, &tol).unwrap();
        let f0 = fock_intensity(&fs, &fl, 0.0, &tol).unwrap();
        assert!((c0 - f0).abs() < 1e-12 * f0);

        // Equal spectra: the ratio dips below 1 right after τ = 0.
        let r = |t: f64| {
            coherent_intensity(&fs, &fs, t, &tol).unwrap()
                / coherent_intensity(&fs, &fs, 0.0, &tol).unwrap()
        };
        assert!(r(0.01) < 1.0 && r(0.02) < r(0.01));
        let slope_oracle = {
            let h = 1e-3;
            let i = |t: f64| {
                riemann(|w| 2.0 * w * fs.density(w) - 2.0 * w * fs.density(w) * (w * t).sin())
            };
            (i(h) - i(0.0)) / h
        };
        assert!(slope_oracle < 0.0);

        for k in 0..=60 {
            let tau = 0.1 * k as f64;
            let diff = coherent_intensity(&fs, &fl, tau, &tol).unwrap()
                - fock_intensity(&fs, &fl, tau, &tol).unwrap();
            let cross = cross_term_integral(&fs, &fl, tau, &tol).unwrap();
            assert!((diff - cross).abs() < 1e-9, "tau = {tau}");
        }
        let reference = coherent_intensity(&fs, &fl, 1.0, &tol).unwrap() / c0;
        assert!((reference - 1.114_605_774_225_320_587_5).abs() < 1e-11);
    }

    #[test]
    fn coherent_closed_form_tracks_quadrature() {
        let tol = Tolerance::default();
        for lo in [3.15, 2.85] {
            let (fs, fl) = spectra(lo);
            let c0 = coherent_intensity(&fs, &fl, 0.0, &tol).unwrap();
            let worst = (0..=600)
                .map(|k| {
                    let tau = 0.01 * k as f64;
                    let q = coherent_intensity(&fs, &fl, tau, &tol).unwrap() / c0;
                    (q - coherent_intensity_closed(&fs, &fl, tau).unwrap()).abs()
                })
                .fold(0.0, f64::max);
            assert!(worst < 2e-2, "{lo}: {worst}");
        }
    }

    #[test]
    fn one_photon_vacuum_examples() {
        let f = SpectralDistribution::new(3.0, 1.0).unwrap();
        assert_eq!(one_photon_vacuum_ratio(&f, 0.0), 1.0);
        let f = SpectralDistribution::new(std::f64::consts::PI, 1.0).unwrap();
        let r = one_photon_vacuum_ratio(&f, 2.0);
        assert!((r - 0.5 * (1.0 + (-1.0f64).exp())).abs() < 1e-15);

        let tol = Tolerance::default();
        let f = SpectralDistribution::new(3.0, 1.0).unwrap();
        let bs = BeamSplitter::balanced();
        let i0 = spectral_intensity(Some(&f), None, false, &bs, 0.0, &tol)
            .unwrap()
            .value;
        let mut worst: f64 = 0.0;
        for k in 0..=600 {
            let tau = 0.01 * k as f64;
            let q = spectral_intensity(Some(&f), None, false, &bs, tau, &tol)
                .unwrap()
                .value
                / i0;
            worst = worst.max((q - one_photon_vacuum_ratio(&f, tau)).abs());
        }
        // The ω weight of the detector skews the envelope by O(σ²τ/ω̄); at
        // ω̄ = 3σ the worst deviation is about 0.071.
        assert!(worst > 0.06 && worst < 0.08, "{worst}");
    }
}
