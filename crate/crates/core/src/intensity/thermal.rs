//! Thermal interferograms and the cancellation-free hyperbolic kernel.
//!
//! The d = 3 closed form contains `g(x) = (2 + cosh 2x)/sinh⁴x` minus its own
//! `3/x⁴` pole. Everything here is expressed through the subtracted kernel
//! `h(x) = 15(g(x) - 3/x⁴)`, with `h(0) = 1`, evaluated by its Taylor series
//! below `X_SWITCH` and by the exponential form of `g` above it.

use super::Method;
use crate::error::{domain, Error, Result};
use crate::quadrature::Tolerance;
use crate::special::bose_constant;
use crate::spectra::Kernel;
use crate::states::{bose_weighted_integral, SpaceDimension};
use std::f64::consts::PI;

/// Branch point of the subtracted kernel; both branches agree to 1e-12 here.
pub const X_SWITCH: f64 = 1.0;

// Taylor coefficients of h(x) in powers of x²; radius of convergence π.
const H_SERIES: [f64; 21] = [
    1.0,
    -0.952_380_952_380_952_380_95,
    0.333_333_333_333_333_333_33,
    -0.080_808_080_808_080_808_081,
    0.016_070_701_784_987_499_273,
    -0.002_821_869_488_536_155_202_8,
    4.548_441_149_748_339_290_8e-4,
    -6.887_401_034_143_551_813_4e-5,
    9.944_186_182_762_421_338_7e-6,
    -1.382_919_991_050_307_052_2e-6,
    1.865_795_975_005_944_127_1e-7,
    -2.455_125_300_924_183_219_5e-8,
    3.163_529_918_246_626_825_8e-9,
    -4.004_191_801_018_621_320_5e-10,
    4.990_870_249_337_181_411_1e-11,
    -6.137_919_658_790_133_020_7e-12,
    7.460_307_752_365_104_737_5e-13,
    -8.973_634_279_093_211_113_6e-14,
    1.069_415_018_771_375_445_0e-14,
    -1.263_877_728_528_057_850_4e-15,
    1.482_512_839_135_488_500_4e-16,
];

/// `g(x) = (2 + cosh 2x)/sinh⁴x` for `x > 0`, without overflow.
///
/// With `q = e^{-2x}`, `g = 8q(1 + 4q + q²)/(1 - q)⁴`.
pub fn stable_thermal_kernel(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return domain(format!("thermal kernel requires x > 0, got {x}"));
    }
    let q = (-2.0 * x).exp();
    let one_minus_q = -(-2.0 * x).exp_m1();
    Ok(8.0 * q * (1.0 + q * (4.0 + q)) / one_minus_q.powi(4))
}

fn dg_dx(x: f64) -> f64 {
    let q = (-2.0 * x).exp();
    let one_minus_q = -(-2.0 * x).exp_m1();
    -16.0 * q * (1.0 + q * (11.0 + q * (11.0 + q))) / one_minus_q.powi(5)
}

/// `h(x) = 15(g(x) - 3/x⁴)`, even in `x`, `h(0) = 1`.
pub fn subtracted_thermal_kernel(x: f64) -> f64 {
    let x = x.abs();
    if x < X_SWITCH {
        let x2 = x * x;
        H_SERIES.iter().rev().fold(0.0, |acc, c| acc * x2 + c)
    } else {
        let g = stable_thermal_kernel(x).expect("x ≥ X_SWITCH > 0");
        15.0 * g - 45.0 / x.powi(4)
    }
}

/// `dh/dx`.
pub fn subtracted_thermal_kernel_derivative(x: f64) -> f64 {
    let sign = x.signum();
    let x = x.abs();
    let d = if x < X_SWITCH {
        let x2 = x * x;
        let mut acc = 0.0;
        for k in (1..H_SERIES.len()).rev() {
            acc = acc * x2 + 2.0 * k as f64 * H_SERIES[k];
        }
        acc * x
    } else {
        15.0 * dg_dx(x) + 180.0 / x.powi(5)
    };
    sign * d
}

fn resolve_closed(method: Method, d: SpaceDimension) -> Result<bool> {
    match method {
        Method::ClosedForm if d.get() != 3 => Err(Error::UnsupportedMethod(format!(
            "closed form is only available for d = 3 (requested d = {})",
            d.get()
        ))),
        Method::ClosedForm => Ok(true),
        Method::Quadrature => Ok(false),
        Method::Auto => Ok(d.get() == 3),
    }
}

/// Normalized oscillatory Bose integral `∫x^d cos(ax)/(eˣ-1) dx / J(d)`.
pub(crate) fn bose_fringe(a: f64, d: SpaceDimension, tol: &Tolerance) -> Result<f64> {
    if a == 0.0 {
        return Ok(1.0);
    }
    let k = bose_weighted_integral(1.0, d, Kernel::Cos, a, tol)?.value;
    Ok(k / bose_constant(d.get())?)
}

/// Thermal light in the signal port, vacuum in the local oscillator.
pub fn thermal_vacuum_ratio(
    theta: f64,
    tau: f64,
    d: SpaceDimension,
    method: Method,
    tol: &Tolerance,
) -> Result<f64> {
    if !(theta > 0.0) {
        return domain(format!("temperature must be positive, got {theta}"));
    }
    let a = tau * theta;
    if a == 0.0 {
        return Ok(1.0);
    }
    if resolve_closed(method, d)? {
        Ok(0.5 * (1.0 + subtracted_thermal_kernel(a * PI)))
    } else {
        Ok(0.5 * (1.0 + bose_fringe(a, d, tol)?))
    }
}

/// Thermal light at `theta1` in the signal port and `theta0` in the local
/// oscillator, d = 3.
pub fn thermal_thermal_ratio(
    theta0: f64,
    theta1: f64,
    tau: f64,
    method: Method,
    tol: &Tolerance,
) -> Result<f64> {
    thermal_pair_ratio(theta0, theta1, tau, SpaceDimension::THREE, method, tol)
}

/// Two thermal inputs in `d` dimensions; the closed form needs d = 3.
pub fn thermal_pair_ratio(
    theta_lo: f64,
    theta_s: f64,
    tau: f64,
    d: SpaceDimension,
    method: Method,
    tol: &Tolerance,
) -> Result<f64> {
    if !(theta_lo > 0.0 && theta_s > 0.0) {
        return domain(format!(
            "temperatures must be positive, got θ0 = {theta_lo}, θ1 = {theta_s}"
        ));
    }
    let closed = resolve_closed(method, d)?;
    if tau == 0.0 {
        return Ok(1.0);
    }
    let a0 = tau * theta_lo;
    let a1 = tau * theta_s;
    let weight = (theta_lo / theta_s).powi(d.get() as i32 + 1);
    let (fringe_s, fringe_lo) = if closed {
        (
            subtracted_thermal_kernel(a1 * PI),
            subtracted_thermal_kernel(a0 * PI),
        )
    } else if theta_lo == theta_s {
        let k = bose_fringe(a1, d, tol)?;
        (k, k)
    } else {
        (bose_fringe(a1, d, tol)?, bose_fringe(a0, d, tol)?)
    };
    Ok(0.5 * (1.0 + weight) + 0.5 * (fringe_s - weight * fringe_lo))
}

/// `(1 + (θ0/θ1)⁴)/2`, the long-delay limit of the two-temperature ratio.
pub fn thermal_thermal_asymptote(theta0: f64, theta1: f64) -> f64 {
    0.5 * (1.0 + (theta0 / theta1).powi(4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn naive_h(x: f64) -> f64 {
        let g = (2.0 + (2.0 * x).cosh()) / x.sinh().powi(4);
        15.0 * (g - 3.0 / x.powi(4))
    }

    #[test]
    fn kernel_reference_values() {
        // High-precision references for h(x) = 15(g(x) - 3/x⁴).
        let refs = [
            (0.001, 0.999_999_047_619_380_952_3),
            (0.1, 0.990_509_443_161_868_286_5),
            (0.5, 0.781_535_596_411_217_792_8),
            (1.0, 0.313_787_828_647_468_468_7),
            (1.5, -0.082_786_277_441_424_039_09),
            (3.0, -0.252_157_214_022_012_192_5),
        ];
        for (x, h) in refs {
            assert!((subtracted_thermal_kernel(x) - h).abs() < 1e-13, "x = {x}");
        }
        assert_eq!(subtracted_thermal_kernel(0.0), 1.0);
    }

    #[test]
    fn large_argument_has_no_overflow() {
        assert_relative_eq!(
            stable_thermal_kernel(20.0).unwrap(),
            3.398_683_404_233_271_3e-17,
            max_relative = 1e-12
        );
        assert!(((2.0 + (2.0f64 * 400.0).cosh()) / 400f64.sinh().powi(4)).is_nan());
        let g = stable_thermal_kernel(400.0).unwrap();
        assert!(g.is_finite() && g >= 0.0);
        let h = subtracted_thermal_kernel(400.0);
        assert_relative_eq!(h, -45.0 / 400f64.powi(4), max_relative = 1e-14);
        assert!(stable_thermal_kernel(0.0).is_err());
        assert!(stable_thermal_kernel(-1.0).is_err());
    }

    #[test]
    fn branches_agree_at_switch() {
        for i in 0..=20 {
            let x = 0.9 + 0.01 * i as f64;
            let x2 = x * x;
            let series = H_SERIES.iter().rev().fold(0.0, |acc, c| acc * x2 + c);
            let exact = 15.0 * stable_thermal_kernel(x).unwrap() - 45.0 / x.powi(4);
            assert!(
                (series - exact).abs() < 1e-12,
                "x = {x}: {series} vs {exact}"
            );
        }
    }

    #[test]
    fn naive_form_loses_digits_near_zero() {
        let x = 1e-3;
        let err_naive = (naive_h(x) - 0.999_999_047_619_380_952_3).abs();
        let err_stable = (subtracted_thermal_kernel(x) - 0.999_999_047_619_380_952_3).abs();
        assert!(err_naive > 1e4 * err_stable.max(1e-17));
    }

    #[test]
    fn derivative_matches_finite_differences() {
        for &x in &[0.05, 0.4, 0.99, 1.01, 1.7, 4.0] {
            let h = 1e-6;
            let fd =
                (subtracted_thermal_kernel(x + h) - subtracted_thermal_kernel(x - h)) / (2.0 * h);
            let an = subtracted_thermal_kernel_derivative(x);
            assert!(
                (fd - an).abs() < 1e-7 * an.abs().max(1.0),
                "x = {x}: {fd} vs {an}"
            );
        }
    }

    #[test]
    fn thermal_vacuum_examples() {
        let tol = Tolerance::default();
        let d3 = SpaceDimension::THREE;
        assert_eq!(
            thermal_vacuum_ratio(1.0, 0.0, d3, Method::ClosedForm, &tol).unwrap(),
            1.0
        );
        assert!(
            (thermal_vacuum_ratio(1.0, 1e-9, d3, Method::ClosedForm, &tol).unwrap() - 1.0).abs()
                < 1e-12
        );
        let far = thermal_vacuum_ratio(1.0, 200.0, d3, Method::ClosedForm, &tol).unwrap();
        assert!((far - 0.5).abs() < 1e-8);
        // Dual path at a = 1.
        let c = thermal_vacuum_ratio(2.0, 0.5, d3, Method::ClosedForm, &tol).unwrap();
        let q = thermal_vacuum_ratio(2.0, 0.5, d3, Method::Quadrature, &tol).unwrap();
        assert!((c - 0.382_746_484_481_984_186_3).abs() < 1e-13);
        assert!((c - q).abs() <= 1e-9 * c.abs());
        // d = 1 through quadrature only.
        let d1 = SpaceDimension::ONE;
        let q1 = thermal_vacuum_ratio(1.0, 1.0, d1, Method::Quadrature, &tol).unwrap();
        assert!((q1 - 0.640_735_153_449_005_545_4).abs() < 1e-11);
        assert!(matches!(
            thermal_vacuum_ratio(1.0, 1.0, d1, Method::ClosedForm, &tol),
            Err(Error::UnsupportedMethod(_))
        ));
        assert!(matches!(
            SpaceDimension::new(2),
            Err(Error::UnsupportedDimension(2))
        ));
    }

    #[test]
    fn thermal_thermal_examples() {
        let tol = Tolerance::default();
        for i in 0..50 {
            let tau = 0.1 * i as f64;
            assert_eq!(
                thermal_thermal_ratio(1.3, 1.3, tau, Method::ClosedForm, &tol).unwrap(),
                1.0
            );
        }
        let asym = thermal_thermal_asymptote(1.0, 1.01);
        assert!((asym - 0.980_490_172_241_408_1).abs() < 1e-15);
        let far = thermal_thermal_ratio(1.0, 1.01, 20.0, Method::ClosedForm, &tol).unwrap();
        assert!((far - asym).abs() < 1e-12);

        // Opposite sides of 1 at a1 ≈ 0.5 for T1 = 1.01 T0 and T1 = 0.99 T0.
        let hot = thermal_thermal_ratio(1.0, 1.01, 0.5 / 1.01, Method::ClosedForm, &tol).unwrap();
        let cold = thermal_thermal_ratio(1.0, 0.99, 0.5 / 0.99, Method::ClosedForm, &tol).unwrap();
        assert!((hot - 1.0) * (cold - 1.0) < 0.0, "hot {hot}, cold {cold}");

        let q = thermal_thermal_ratio(1.0, 1.01, 0.7, Method::Quadrature, &tol).unwrap();
        let c = thermal_thermal_ratio(1.0, 1.01, 0.7, Method::ClosedForm, &tol).unwrap();
        assert!((q - c).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn thermal_ratios_are_even(tau in 0.0f64..8.0, t1 in 0.5f64..2.0) {
            let tol = Tolerance::default();
            let a = thermal_vacuum_ratio(1.0, tau, SpaceDimension::THREE, Method::ClosedForm, &tol).unwrap();
            let b = thermal_vacuum_ratio(1.0, -tau, SpaceDimension::THREE, Method::ClosedForm, &tol).unwrap();
            prop_assert_eq!(a, b);
            let a = thermal_thermal_ratio(1.0, t1, tau, Method::ClosedForm, &tol).unwrap();
            let b = thermal_thermal_ratio(1.0, t1, -tau, Method::ClosedForm, &tol).unwrap();
            prop_assert_eq!(a, b);
            prop_assert!(a >= 0.0 && a <= 1.0 + (1.0 / t1).powi(4));
        }

        #[test]
        fn kernel_decreasing(x in 0.01f64..50.0, dx in 1e-3f64..1.0) {
            prop_assert!(stable_thermal_kernel(x + dx).unwrap() < stable_thermal_kernel(x).unwrap());
        }
    }
}
