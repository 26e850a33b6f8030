use mmi_web::{coherence_delay, spectral_curve, thermal_curve};

#[test]
fn quadrature_and_closed_curves_are_close() {
    let q = spectral_curve("coherent", 3.0, 3.15, 1.0, 6.0, 61, false).unwrap();
    let c = spectral_curve("coherent", 3.0, 3.15, 1.0, 6.0, 61, true).unwrap();
    let worst = q
        .iter()
        .zip(&c)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(worst < 2e-2, "{worst}");
}

#[test]
fn two_temperature_curve_approaches_asymptote() {
    let v = thermal_curve(1.01, 5.0, 101).unwrap();
    let target = 0.5 * (1.0 + 1.01f64.powi(-4));
    assert!((v[100] - target).abs() < 1e-6);
}

#[test]
fn coherence_time_is_monotone() {
    assert!(coherence_delay(0.02).unwrap() > coherence_delay(0.1).unwrap());
}

#[test]
fn rejects_unknown_scenario() {
    assert!(spectral_curve("squeezed", 3.0, 3.15, 1.0, 6.0, 10, true).is_err());
}
