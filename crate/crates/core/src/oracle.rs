//! Brute-force reference paths, independent of the intensity module.
//!
//! The Fock-space oracle applies annihilation operators to explicit sparse
//! state vectors on a discrete mode grid; the thermal oracle samples the
//! P-representation and averages coherent-state intensities. Both are slow and
//! simple on purpose.

use crate::error::{domain, Error, Result};
use crate::modes::ModeGrid;
use crate::optics::{detector_kernel, BeamSplitter, DelayLine};
use crate::spectra::SpectralDistribution;
use crate::states::{SpaceDimension, ThermalSampler};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Default cap on stored amplitudes of a joint state.
pub const DEFAULT_AMPLITUDE_CAP: usize = 1_000_000;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Sparse state over occupation-number configurations of `modes` modes with at
/// most `n_max` photons per mode.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedState {
    modes: usize,
    n_max: u8,
    amplitudes: HashMap<Vec<u8>, Complex64>,
}

impl TruncatedState {
    pub fn vacuum(modes: usize, n_max: u8) -> Self {
        let mut amplitudes = HashMap::new();
        amplitudes.insert(vec![0; modes], Complex64::new(1.0, 0.0));
        Self {
            modes,
            n_max,
            amplitudes,
        }
    }

    /// Superposition of single-photon configurations `Σ c_j |1_j⟩`.
    pub fn single_photon(coefficients: &[Complex64]) -> Self {
        let modes = coefficients.len();
        let amplitudes = coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(|(j, &c)| {
                let mut occ = vec![0u8; modes];
                occ[j] = 1;
                (occ, c)
            })
            .collect();
        Self {
            modes,
            n_max: 1,
            amplitudes,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn n_max(&self) -> u8 {
        self.n_max
    }

    /// Stored (non-zero) amplitudes.
    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Size `(n_max + 1)^modes` of the truncated basis.
    pub fn basis_dimension(&self) -> f64 {
        (self.n_max as f64 + 1.0).powi(self.modes as i32)
    }

    pub fn amplitude(&self, occupation: &[u8]) -> Complex64 {
        self.amplitudes.get(occupation).copied().unwrap_or(ZERO)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm_sqr().sqrt();
        if !(n > 0.0) {
            return domain("cannot normalize the zero vector");
        }
        for c in self.amplitudes.values_mut() {
            *c /= n;
        }
        Ok(())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let (small, large, conj_small) = if self.len() <= other.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let mut acc = ZERO;
        for (k, a) in &small.amplitudes {
            if let Some(b) = large.amplitudes.get(k) {
                acc += if conj_small {
                    a.conj() * b
                } else {
                    b.conj() * a
                };
            }
        }
        acc
    }

    /// `self ⊗ other`, modes of `self` first.
    pub fn tensor(&self, other: &Self, cap: usize) -> Result<Self> {
        let size = self.len().saturating_mul(other.len());
        if size > cap {
            return Err(Error::Resource(format!(
                "joint state needs {size} amplitudes, cap is {cap}"
            )));
        }
        let mut amplitudes = HashMap::with_capacity(size);
        for (ka, a) in &self.amplitudes {
            for (kb, b) in &other.amplitudes {
                let mut key = Vec::with_capacity(ka.len() + kb.len());
                key.extend_from_slice(ka);
                key.extend_from_slice(kb);
                amplitudes.insert(key, a * b);
            }
        }
        Ok(Self {
            modes: self.modes + other.modes,
            n_max: self.n_max.max(other.n_max),
            amplitudes,
        })
    }

    /// `a_mode |self⟩`.
    pub fn annihilate(&self, mode: usize) -> Self {
        let amplitudes = self
            .amplitudes
            .iter()
            .filter(|(k, _)| k[mode] > 0)
            .map(|(k, &c)| {
                let n = k[mode];
                let mut key = k.clone();
                key[mode] = n - 1;
                (key, c * (n as f64).sqrt())
            })
            .collect();
        Self {
            modes: self.modes,
            n_max: self.n_max,
            amplitudes,
        }
    }
}

/// Unnormalized discrete amplitudes `√δω_j f(ω_j)`.
pub fn one_photon_amplitudes(f: &SpectralDistribution, grid: &ModeGrid) -> Vec<f64> {
    grid.frequencies()
        .iter()
        .zip(grid.spacings())
        .map(|(&w, &dw)| dw.sqrt() * f.amplitude(w))
        .collect()
}

/// Discretized one-photon wavepacket, renormalized to unit norm.
pub fn build_one_photon(f: &SpectralDistribution, grid: &ModeGrid) -> Result<TruncatedState> {
    if grid.len() > 1 {
        let (lo, hi) = grid.span();
        let need_lo = (f.mean_freq() - 6.0 * f.width()).max(0.0);
        let need_hi = f.mean_freq() + 6.0 * f.width();
        let slack = 1e-9 * need_hi;
        if lo > need_lo + slack || hi < need_hi - slack {
            return domain(format!(
                "grid [{lo}, {hi}] does not cover ω̄ ± 6σ = [{need_lo}, {need_hi}]"
            ));
        }
    }
    let c: Vec<Complex64> = if grid.len() == 1 {
        vec![Complex64::new(1.0, 0.0)]
    } else {
        one_photon_amplitudes(f, grid)
            .into_iter()
            .map(|c| Complex64::new(c, 0.0))
            .collect()
    };
    let mut state = TruncatedState::single_photon(&c);
    state.normalize()?;
    Ok(state)
}

/// Coherent-state eigenvalues `α_j = √δω_j f(ω_j)`.
pub fn coherent_amplitudes(f: &SpectralDistribution, grid: &ModeGrid) -> Vec<Complex64> {
    one_photon_amplitudes(f, grid)
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect()
}

/// Contents of one input port for the brute-force detector.
#[derive(Debug, Clone, PartialEq)]
pub enum PortInput {
    Vacuum,
    Fock(TruncatedState),
    Coherent(Vec<Complex64>),
}

// Per-mode Gram entries ⟨u|u⟩, ⟨w|w⟩, ⟨u|w⟩ with u = a0(ω_j)|i⟩, w = a1(ω_j)|i⟩.
type Gram = (f64, f64, Complex64);

fn mode_grams(signal: &PortInput, lo: &PortInput, modes: usize, cap: usize) -> Result<Vec<Gram>> {
    use PortInput::*;
    match (signal, lo) {
        (Coherent(_) | Vacuum, Coherent(_) | Vacuum) => {
            let amps = |p: &PortInput| -> Result<Vec<Complex64>> {
                match p {
                    Coherent(a) if a.len() == modes => Ok(a.clone()),
                    Coherent(a) => domain(format!(
                        "expected {modes} coherent amplitudes, got {}",
                        a.len()
                    )),
                    _ => Ok(vec![ZERO; modes]),
                }
            };
            let (s, l) = (amps(signal)?, amps(lo)?);
            Ok(s.iter()
                .zip(&l)
                .map(|(a1, a0)| (a0.norm_sqr(), a1.norm_sqr(), a0.conj() * a1))
                .collect())
        }
        (Fock(_) | Vacuum, Fock(_) | Vacuum) => {
            let state = |p: &PortInput| -> Result<TruncatedState> {
                match p {
                    Fock(s) if s.modes() == modes => Ok(s.clone()),
                    Fock(s) => domain(format!("expected {modes} modes, got {}", s.modes())),
                    _ => Ok(TruncatedState::vacuum(modes, 1)),
                }
            };
            // Port 0 (local oscillator) modes first, then port 1 (signal).
            let joint = state(lo)?.tensor(&state(signal)?, cap)?;
            Ok((0..modes)
                .into_par_iter()
                .map(|j| {
                    let u = joint.annihilate(j);
                    let w = joint.annihilate(modes + j);
                    (u.norm_sqr(), w.norm_sqr(), u.inner(&w))
                })
                .collect())
        }
        _ => domain("brute-force detector needs both ports Fock/vacuum or both coherent/vacuum"),
    }
}

/// Time-averaged Glauber intensity `Σ_j δω_j ω_j ‖(c_lo a0 + c_s a1)(ω_j)|i⟩‖²`.
pub fn detect_intensity_bruteforce(
    signal: &PortInput,
    lo: &PortInput,
    grid: &ModeGrid,
    taus: &[f64],
    splitter: &BeamSplitter,
    cap: usize,
) -> Result<Vec<f64>> {
    let grams = mode_grams(signal, lo, grid.len(), cap)?;
    let weights: Vec<f64> = grid
        .frequencies()
        .iter()
        .zip(grid.spacings())
        .map(|(w, dw)| w * dw)
        .collect();
    Ok(taus
        .iter()
        .map(|&tau| {
            let k = detector_kernel(splitter, DelayLine::new(tau));
            grid.frequencies()
                .iter()
                .zip(&grams)
                .zip(&weights)
                .map(|((&w, &(g00, g11, g01)), &m)| {
                    let c0 = k.lo_coefficient(w);
                    let c1 = k.signal_coefficient(w);
                    let v =
                        c0.norm_sqr() * g00 + c1.norm_sqr() * g11 + 2.0 * (c0.conj() * c1 * g01).re;
                    m * v
                })
                .sum()
        })
        .collect())
}

/// Coherent-state intensity averaged numerically over a finite window
/// `[-t_int/2, t_int/2]`. Cross-frequency terms survive as `sinc` leakage of
/// order `1/(t_int·δω)`; as `t_int → ∞` this tends to the analytic average.
pub fn coherent_intensity_time_window(
    signal: &[Complex64],
    lo: &[Complex64],
    grid: &ModeGrid,
    tau: f64,
    splitter: &BeamSplitter,
    t_int: f64,
    steps: usize,
) -> Result<f64> {
    if signal.len() != grid.len() || lo.len() != grid.len() {
        return domain("amplitude vectors must match the grid");
    }
    if steps == 0 || !(t_int > 0.0) {
        return domain("time window needs t_int > 0 and at least one step");
    }
    let k = detector_kernel(splitter, DelayLine::new(tau));
    let field: Vec<Complex64> = grid
        .frequencies()
        .iter()
        .zip(grid.spacings())
        .enumerate()
        .map(|(j, (&w, &dw))| {
            (dw * w).sqrt() * (k.lo_coefficient(w) * lo[j] + k.signal_coefficient(w) * signal[j])
        })
        .collect();
    let dt = t_int / steps as f64;
    let total: f64 = (0..steps)
        .map(|s| {
            let t = -0.5 * t_int + (s as f64 + 0.5) * dt;
            let e: Complex64 = grid
                .frequencies()
                .iter()
                .zip(&field)
                .map(|(&w, &c)| c * Complex64::from_polar(1.0, -w * t))
                .sum();
            e.norm_sqr()
        })
        .sum();
    Ok(total / steps as f64)
}

/// Monte-Carlo estimate at one delay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloPoint {
    pub tau: f64,
    pub ratio: f64,
    pub stderr: f64,
    /// Normalized cross-term estimator; averages to zero for chaotic light.
    pub cross: f64,
    pub cross_stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloInterferogram {
    pub points: Vec<MonteCarloPoint>,
    pub samples: usize,
    pub seed: u64,
}

const CHUNK: usize = 1000;

#[derive(Clone)]
struct Moments {
    n: usize,
    i0: f64,
    i0_sq: f64,
    it: Vec<f64>,
    it_sq: Vec<f64>,
    it_i0: Vec<f64>,
    x: Vec<f64>,
    x_sq: Vec<f64>,
}

impl Moments {
    fn new(k: usize) -> Self {
        Self {
            n: 0,
            i0: 0.0,
            i0_sq: 0.0,
            it: vec![0.0; k],
            it_sq: vec![0.0; k],
            it_i0: vec![0.0; k],
            x: vec![0.0; k],
            x_sq: vec![0.0; k],
        }
    }

    fn merge(mut self, o: &Self) -> Self {
        self.n += o.n;
        self.i0 += o.i0;
        self.i0_sq += o.i0_sq;
        for k in 0..self.it.len() {
            self.it[k] += o.it[k];
            self.it_sq[k] += o.it_sq[k];
            self.it_i0[k] += o.it_i0[k];
            self.x[k] += o.x[k];
            self.x_sq[k] += o.x_sq[k];
        }
        self
    }
}

/// Thermal interferogram by averaging coherent-state intensities over
/// P-representation draws. `theta_lo = None` puts vacuum in the local
/// oscillator. Draws are split into fixed chunks with independent ChaCha
/// streams, so results depend only on `seed`, never on the thread count.
pub fn thermal_intensity_montecarlo(
    theta_s: f64,
    theta_lo: Option<f64>,
    grid: &ModeGrid,
    d: SpaceDimension,
    taus: &[f64],
    samples: usize,
    seed: u64,
) -> Result<MonteCarloInterferogram> {
    if samples < 1000 {
        return domain(format!(
            "Monte-Carlo oracle needs at least 1000 samples, got {samples}"
        ));
    }
    let sig = ThermalSampler::new(theta_s, grid)?;
    let lo = theta_lo.map(|t| ThermalSampler::new(t, grid)).transpose()?;
    let m = grid.len();
    let weights: Vec<f64> = grid
        .measure(d.get())
        .iter()
        .zip(grid.frequencies())
        .map(|(mu, w)| mu * w)
        .collect();
    let bs = BeamSplitter::balanced();
    let coeffs = |tau: f64| -> (Vec<Complex64>, Vec<Complex64>) {
        let k = detector_kernel(&bs, DelayLine::new(tau));
        grid.frequencies()
            .iter()
            .map(|&w| (k.lo_coefficient(w), k.signal_coefficient(w)))
            .unzip()
    };
    let zero = coeffs(0.0);
    let per_tau: Vec<_> = taus.iter().map(|&t| coeffs(t)).collect();

    let chunks = samples.div_ceil(CHUNK);
    let moments = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut acc = Moments::new(taus.len());
            let mut a_s = vec![ZERO; m];
            let mut a_lo = vec![ZERO; m];
            for _ in 0..count {
                sig.draw_into(&mut rng, &mut a_s);
                if let Some(lo) = &lo {
                    lo.draw_into(&mut rng, &mut a_lo);
                }
                let intensity = |c0: &[Complex64], c1: &[Complex64]| -> (f64, f64) {
                    let mut total = 0.0;
                    let mut cross = 0.0;
                    for j in 0..m {
                        let e_lo = c0[j] * a_lo[j];
                        let e_s = c1[j] * a_s[j];
                        total += weights[j] * (e_lo + e_s).norm_sqr();
                        cross += weights[j] * 2.0 * (e_s.conj() * e_lo).re;
                    }
                    (total, cross)
                };
                let (i0, _) = intensity(&zero.0, &zero.1);
                acc.n += 1;
                acc.i0 += i0;
                acc.i0_sq += i0 * i0;
                for (k, (c0, c1)) in per_tau.iter().enumerate() {
                    let (it, x) = intensity(c0, c1);
                    acc.it[k] += it;
                    acc.it_sq[k] += it * it;
                    acc.it_i0[k] += it * i0;
                    acc.x[k] += x;
                    acc.x_sq[k] += x * x;
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .iter()
        .fold(Moments::new(taus.len()), |a, b| a.merge(b));

    let n = moments.n as f64;
    let mean0 = moments.i0 / n;
    let var0 = moments.i0_sq / n - mean0 * mean0;
    let points = taus
        .iter()
        .enumerate()
        .map(|(k, &tau)| {
            let mean_t = moments.it[k] / n;
            let var_t = moments.it_sq[k] / n - mean_t * mean_t;
            let cov = moments.it_i0[k] / n - mean_t * mean0;
            let ratio = mean_t / mean0;
            // Delta method for a ratio of correlated means.
            let var_r =
                (var_t - 2.0 * ratio * cov + ratio * ratio * var0).max(0.0) / (n * mean0 * mean0);
            let mean_x = moments.x[k] / n;
            let var_x = (moments.x_sq[k] / n - mean_x * mean_x).max(0.0);
            MonteCarloPoint {
                tau,
                ratio,
                stderr: var_r.sqrt(),
                cross: mean_x / mean0,
                cross_stderr: (var_x / n).sqrt() / mean0,
            }
        })
        .collect();
    Ok(MonteCarloInterferogram {
        points,
        samples,
        seed,
    })
}
