use super::{fit, FitModel, FitProblem};
use crate::error::{Error, Result};
use crate::intensity::Interferogram;
use crate::spectra::SpectralDistribution;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateClass {
    FockLike,
    CoherentLike,
    Indistinguishable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discrimination {
    pub class: StateClass,
    /// Fock-model residual over coherent-model residual.
    pub score: f64,
    pub fock_residual: f64,
    pub coherent_residual: f64,
}

const TIE: f64 = 0.01;

// Every nonzero delay has a partner at −τ carrying the same ratio.
fn is_even(data: &Interferogram) -> bool {
    let mut s = data.samples.clone();
    s.sort_by(|a, b| a.delay.total_cmp(&b.delay));
    if !s.iter().any(|p| p.delay < 0.0) {
        return false;
    }
    s.iter().filter(|p| p.delay != 0.0).all(|p| {
        s.iter().any(|q| {
            (q.delay + p.delay).abs() <= 1e-9 * (1.0 + p.delay.abs())
                && (q.ratio - p.ratio).abs() <= 1e-9
        })
    })
}

/// Fit the one-photon and coherent narrow-band models (free `ω̄_s`, `σ`) and
/// report which explains the data. The coherent cross term is odd in `τ`, so
/// even data cannot tell the two apart.
pub fn discriminate_state_class(
    data: &Interferogram,
    f_lo: &SpectralDistribution,
) -> Result<Discrimination> {
    let delays = data.delays();
    let (lo, hi) = delays
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(*v), b.max(*v))
        });
    let period = 2.0 * std::f64::consts::PI / f_lo.mean_freq();
    if data.is_empty() || !(hi - lo >= period) {
        return Err(Error::Identifiability(format!(
            "delays span {} but one fringe period is {period}",
            if data.is_empty() { 0.0 } else { hi - lo }
        )));
    }
    let lo_mean_freq = f_lo.mean_freq();
    let fock = fit(&FitProblem::new(
        data.clone(),
        FitModel::FockFock { lo_mean_freq },
    ))?;
    let coherent = fit(&FitProblem::new(
        data.clone(),
        FitModel::CoherentCoherent { lo_mean_freq },
    ))?;
    let (rf, rc) = (fock.residual_norm, coherent.residual_norm);
    let score = rf / rc.max(f64::MIN_POSITIVE);
    let class = if is_even(data) || (rf - rc).abs() <= TIE * rf.max(rc) {
        StateClass::Indistinguishable
    } else if rf < rc {
        StateClass::FockLike
    } else {
        StateClass::CoherentLike
    };
    Ok(Discrimination {
        class,
        score,
        fock_residual: rf,
        coherent_residual: rc,
    })
}
