//! Special functions shared by the spectral and thermal models.

use crate::error::{domain, Result};
use std::f64::consts::PI;

/// Error function, via the musl port in `libm` (about 1 ulp).
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

// Bernoulli numbers B_2 .. B_14 for the Euler-Maclaurin tail.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Riemann zeta function for real `s > 1`, by Euler-Maclaurin summation.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return domain(format!("zeta requires s > 1, got {s}"));
    }
    const N: usize = 16;
    let n = N as f64;
    let mut sum: f64 = (1..N).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);

    // Σ B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}
    let mut rising = s;
    let mut factorial = 2.0;
    let mut power = n.powf(-s - 1.0);
    for (k, b) in BERNOULLI.iter().enumerate() {
        sum += b / factorial * rising * power;
        let m = 2.0 * (k as f64 + 1.0);
        rising *= (s + m - 1.0) * (s + m);
        factorial *= (m + 1.0) * (m + 2.0);
        power /= n * n;
    }
    Ok(sum)
}

/// Bose integral constant `J(d) = ∫₀^∞ x^d/(eˣ-1) dx = Γ(1+d) ζ(1+d)`.
///
/// The two dimensions used in practice return the exact values π²/6 and π⁴/15.
pub fn bose_constant(d: u32) -> Result<f64> {
    match d {
        0 => domain("J(0) diverges"),
        1 => Ok(PI * PI / 6.0),
        3 => Ok(PI.powi(4) / 15.0),
        _ => {
            let s = d as f64 + 1.0;
            Ok(gamma(s) * zeta(s)?)
        }
    }
}
