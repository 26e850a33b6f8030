//! Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals.
//!
//! Semi-infinite integrals are truncated where a caller-supplied envelope
//! bound drops below a tenth of the requested tolerance. Oscillatory
//! integrands (`cos ωτ`, `sin ωτ`) are pre-split into panels no wider than a
//! quarter period before adaptive bisection starts.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BinaryHeap;
use std::f64::consts::PI;

// 15-point Kronrod nodes (positive half) and weights, with the embedded
// 7-point Gauss weights at the odd indices.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Requested accuracy and work budget for one integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-12,
            rel: 1e-10,
            max_panels: 20_000,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            ..Self::default()
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

/// Integral value with an a posteriori error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Decay bound of the integrand beyond its bulk, used to place the cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tail {
    /// `|f(x)| ≲ exp(-((x - center)/width)²)` for `x > center`.
    Gaussian { center: f64, width: f64 },
    /// `|f(x)| ≲ x^power · exp(-rate·x)`.
    Exponential { rate: f64, power: f64 },
}

impl Tail {
    /// Point beyond which the neglected mass is below `tol/10` relative to the
    /// integrand's natural scale.
    pub fn cutoff(&self, tol: f64) -> f64 {
        let log_target = (10.0 / tol.max(1e-300)).ln();
        match *self {
            Tail::Gaussian { center, width } => center.max(0.0) + width * (log_target.sqrt() + 1.5),
            Tail::Exponential { rate, power } => {
                // Solve rate·x = ln(1/ε) + power·ln(x) + margin by fixed-point iteration.
                let mut x = (log_target / rate).max(1.0);
                for _ in 0..50 {
                    x = (log_target + power * (rate * x).ln().max(0.0) + 5.0) / rate;
                }
                x
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut result_k = fc * WGK[7];
    let mut result_g = fc * WG[3];
    let mut result_abs = result_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        result_k += WGK[j] * (f1 + f2);
        result_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            result_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * result_k;
    let mut result_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        result_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = result_k * half;
    let res_abs = result_abs * half.abs();
    let res_asc = result_asc * half.abs();
    let mut error = ((result_k - result_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel { a, b, value, error }
}

/// Adaptive integration of `f` over `[a, b]`.
///
/// `oscillation` is the largest angular frequency present in the integrand
/// (pass 0 for none); panels start no wider than `π/(2·oscillation)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    oscillation: f64,
    tol: &Tolerance,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!(
            "integration bounds must be finite: [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    let width = b - a;
    let mut initial = 4usize;
    if oscillation.abs() > 0.0 {
        let max_width = PI / (2.0 * oscillation.abs());
        initial = initial.max((width.abs() / max_width).ceil() as usize);
    }
    if initial > tol.max_panels {
        return Err(Error::Quadrature {
            achieved: f64::INFINITY,
            requested: tol.abs,
        });
    }

    let mut heap = BinaryHeap::with_capacity(initial * 2);
    let mut evaluations = 0;
    for k in 0..initial {
        let lo = a + width * k as f64 / initial as f64;
        let hi = if k + 1 == initial {
            b
        } else {
            a + width * (k + 1) as f64 / initial as f64
        };
        heap.push(gauss_kronrod_15(&f, lo, hi));
        evaluations += 15;
    }

    loop {
        let (value, error) = heap
            .iter()
            .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
        if error <= tol.target(value) {
            return Ok(Estimate {
                value,
                error,
                evaluations,
            });
        }
        if heap.len() >= tol.max_panels {
            return Err(Error::Quadrature {
                achieved: error,
                requested: tol.target(value),
            });
        }
        let worst = heap.pop().expect("panel heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split further in floating point.
            return Err(Error::Quadrature {
                achieved: error,
                requested: tol.target(value),
            });
        }
        heap.push(gauss_kronrod_15(&f, worst.a, mid));
        heap.push(gauss_kronrod_15(&f, mid, worst.b));
        evaluations += 30;
    }
}

/// Integral of `f` over `[0, ∞)`, truncated according to `tail`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    tail: Tail,
    oscillation: f64,
    tol: &Tolerance,
) -> Result<Estimate> {
    let upper = tail.cutoff(tol.rel.min(tol.abs).max(1e-18));
    integrate(f, 0.0, upper, oscillation, tol)
}
