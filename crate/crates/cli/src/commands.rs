use crate::args::{
    CoherenceArgs, FitArgs, FitModelArg, MethodArg, Scenario, SimulateArgs, VerifyArgs,
};
use mmi_core::inference::{
    coherence_time_si, estimate_coherence_time, fit as run_fit, FitModel, FitProblem, BOLTZMANN,
    HBAR,
};
use mmi_core::intensity::{DelayAxis, Interferogram};
use mmi_core::io::{read_interferogram_csv, write_dual_csv, write_interferogram_csv, Sidecar};
use mmi_core::verify::{run_verification, VerifyOptions};
use mmi_core::{
    BeamSplitter, Error, IntensityRequest, Method, PortState, Result, SpaceDimension,
    SpectralDistribution, Tolerance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Data(format!("{}: {e}", path.display()))
}

/// `start:stop:intervals`, inclusive of both ends.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || {
        usage(format!(
            "grid must look like start:stop:intervals, got {spec:?}"
        ))
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if n == 0 || stop <= start || !start.is_finite() || !stop.is_finite() {
        return Err(bad());
    }
    Ok((0..=n)
        .map(|k| start + (stop - start) * k as f64 / n as f64)
        .collect())
}

fn temperature(value: f64, si: bool) -> f64 {
    if si {
        BOLTZMANN * value / HBAR
    } else {
        value
    }
}

struct Plan {
    signal: PortState,
    lo: PortState,
    thermal: bool,
    /// Temperature that converts `a` to `τ` on thermal grids.
    theta_ref: f64,
}

fn plan(a: &SimulateArgs) -> Result<Plan> {
    let spectral = |w: f64| SpectralDistribution::new(w, a.sigma);
    Ok(match a.scenario {
        Scenario::Fock => Plan {
            signal: PortState::OnePhoton(spectral(a.wbar_s)?),
            lo: PortState::OnePhoton(spectral(a.wbar_lo)?),
            thermal: false,
            theta_ref: 1.0,
        },
        Scenario::Coherent => Plan {
            signal: PortState::Coherent(spectral(a.wbar_s)?),
            lo: PortState::Coherent(spectral(a.wbar_lo)?),
            thermal: false,
            theta_ref: 1.0,
        },
        Scenario::OnePhotonVacuum => Plan {
            signal: PortState::OnePhoton(spectral(a.wbar_s)?),
            lo: PortState::Vacuum,
            thermal: false,
            theta_ref: 1.0,
        },
        Scenario::ThermalVacuum => {
            let theta = temperature(a.theta, a.si);
            Plan {
                signal: PortState::thermal(theta)?,
                lo: PortState::Vacuum,
                thermal: true,
                theta_ref: theta,
            }
        }
        Scenario::ThermalThermal => {
            let t0 = temperature(a.t0, a.si);
            Plan {
                signal: PortState::thermal(t0 * a.temperature_ratio)?,
                lo: PortState::thermal(t0)?,
                thermal: true,
                theta_ref: t0,
            }
        }
    })
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_err(p, e))?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_sidecar(
    path: &Path,
    config: serde_json::Value,
    method: &str,
    seed: Option<u64>,
) -> Result<()> {
    let sidecar = Sidecar {
        config,
        method: method.to_string(),
        seed,
        version: mmi_core::VERSION.to_string(),
        timestamp: chrono::Utc::now().to_rfc3339(),
    };
    let target = path.with_extension("json");
    std::fs::write(&target, sidecar.to_json()? + "\n").map_err(|e| io_err(&target, e))
}

fn config_echo(command: &str, args: &impl serde::Serialize) -> serde_json::Value {
    serde_json::json!({
        "command": command,
        "args": args,
        "argv": std::env::args().collect::<Vec<_>>(),
    })
}

pub fn simulate(a: &SimulateArgs) -> Result<u8> {
    let plan = plan(a)?;
    let default_grid = if plan.thermal { "0:5:500" } else { "0:6:600" };
    let grid = parse_grid(a.grid.as_deref().unwrap_or(default_grid))?;
    let delays: Vec<f64> = if plan.thermal && !a.si {
        grid.iter().map(|x| x / plan.theta_ref).collect()
    } else {
        grid.clone()
    };
    let axis_values: Vec<f64> = if plan.thermal && a.si {
        grid.iter().map(|t| t * plan.theta_ref).collect()
    } else {
        grid.clone()
    };
    let axis = if plan.thermal {
        DelayAxis::A
    } else {
        DelayAxis::Tau
    };
    let dimension = match a.d {
        Some(d) => SpaceDimension::new(d)?,
        None if plan.thermal => SpaceDimension::THREE,
        None => SpaceDimension::ONE,
    };
    let base = IntensityRequest::new(plan.signal, plan.lo, delays)
        .with_dimension(dimension)
        .with_tolerance(Tolerance::new(a.abs_tol, a.rel_tol))
        .with_splitter(BeamSplitter::new(a.transmittance)?);
    let run = |m: Method| -> Result<Interferogram> {
        let mut out = base.clone().with_method(m).evaluate()?;
        out.axis = axis;
        for (s, x) in out.samples.iter_mut().zip(&axis_values) {
            s.delay = *x;
        }
        Ok(out)
    };

    let mut sink = open_output(a.output.as_deref())?;
    let method_name = match a.method {
        MethodArg::Both => {
            if a.noise.is_some() {
                return Err(usage("--noise cannot be combined with --method both"));
            }
            let closed = run(Method::ClosedForm)?;
            let quad = run(Method::Quadrature)?;
            write_dual_csv(
                &mut sink,
                axis,
                &axis_values,
                &closed.ratios(),
                &quad.ratios(),
            )?;
            "both".to_string()
        }
        m => {
            let method = match m {
                MethodArg::Closed => Method::ClosedForm,
                MethodArg::Quadrature => Method::Quadrature,
                _ => Method::Auto,
            };
            let resolved = base.clone().with_method(method).resolved_method()?;
            let mut data = run(method)?;
            let noise = match a.noise {
                Some(sd) if sd > 0.0 && sd.is_finite() => {
                    let dist = Normal::new(0.0, sd).map_err(|e| usage(e.to_string()))?;
                    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
                    for s in &mut data.samples {
                        s.ratio += dist.sample(&mut rng);
                    }
                    Some(vec![sd; data.len()])
                }
                Some(sd) => return Err(usage(format!("noise level must be positive, got {sd}"))),
                None => None,
            };
            write_interferogram_csv(&mut sink, &data, noise.as_deref())?;
            resolved.name().to_string()
        }
    };
    sink.flush().map_err(|e| Error::Data(e.to_string()))?;
    if let Some(path) = &a.output {
        write_sidecar(path, config_echo("simulate", a), &method_name, Some(a.seed))?;
    }
    Ok(0)
}

pub fn verify(a: &VerifyArgs) -> Result<u8> {
    let opts = VerifyOptions {
        quick: a.quick,
        mc_samples: a.samples,
        seed: a.seed,
        mutation: None,
    };
    let report = run_verification(&opts)?;
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).map_err(|e| Error::Data(e.to_string()))?
        );
    } else {
        for s in &report.scenarios {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            let detail: Vec<String> = s
                .checks
                .iter()
                .map(|c| format!("{} {:.3e} (tol {:.0e})", c.name, c.deviation, c.tolerance))
                .collect();
            println!("{status} {}: {}", s.name, detail.join(", "));
        }
        if a.quick {
            println!("quick mode: Monte-Carlo checks skipped");
        }
    }
    if report.passed() {
        Ok(0)
    } else {
        eprintln!("verification failed: {}", report.failing().join(", "));
        Ok(1)
    }
}

fn parse_bounds(specs: &[String]) -> Result<Vec<(f64, f64)>> {
    specs
        .iter()
        .map(|s| {
            let (lo, hi) = s
                .split_once(':')
                .ok_or_else(|| usage(format!("bound must be lo:hi, got {s:?}")))?;
            let p = |v: &str| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| usage(format!("bad bound {s:?}")))
            };
            Ok((p(lo)?, p(hi)?))
        })
        .collect()
}

pub fn fit(a: &FitArgs) -> Result<u8> {
    let file = File::open(&a.data).map_err(|e| io_err(&a.data, e))?;
    let (data, noise) = read_interferogram_csv(file)?;
    let model = match a.model {
        FitModelArg::ThermalThermal => FitModel::ThermalThermal { theta0: a.t0 },
        FitModelArg::OnePhotonVacuum => FitModel::OnePhotonVacuum,
        FitModelArg::FockFock => FitModel::FockFock {
            lo_mean_freq: a.wbar_lo,
        },
    };
    let mut problem = FitProblem::new(data, model);
    if let Some(p) = &a.initial {
        problem = problem.with_initial(p.clone());
    }
    if let Some(b) = &a.bounds {
        problem = problem.with_bounds(parse_bounds(b)?);
    }
    if let (Some(n), false) = (noise, a.unweighted) {
        problem = problem.with_noise(n);
    }
    let result = run_fit(&problem)?;
    let text = serde_json::to_string_pretty(&result).map_err(|e| Error::Data(e.to_string()))?;
    println!("{text}");
    if let Some(path) = &a.output {
        std::fs::write(path, text + "\n").map_err(|e| io_err(path, e))?;
    }
    Ok(0)
}

pub fn coherence(a: &CoherenceArgs) -> Result<u8> {
    let report = if a.si {
        coherence_time_si(a.theta, a.threshold)?
    } else {
        estimate_coherence_time(a.theta, a.threshold)?
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(|e| Error::Data(e.to_string()))?
    );
    Ok(0)
}
