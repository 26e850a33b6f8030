use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "mmi",
    version,
    about = "Michelson-Morley interferometer intensities, verification and fits"
)]
pub struct Cli {
    /// Worker threads for grid evaluation.
    #[arg(long, global = true, env = "MMI_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Write a normalized interferogram as CSV plus a JSON sidecar.
    Simulate(SimulateArgs),
    /// Cross-check closed forms, quadrature and oracles on the reference scenarios.
    Verify(VerifyArgs),
    /// Fit a model to an interferogram CSV and print the result as JSON.
    Fit(FitArgs),
    /// Thermal coherence time for thermal light against vacuum.
    Coherence(CoherenceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Fock,
    Coherent,
    OnePhotonVacuum,
    ThermalVacuum,
    ThermalThermal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    Closed,
    Quadrature,
    Auto,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct SimulateArgs {
    pub scenario: Scenario,
    /// Signal mean frequency.
    #[arg(long, default_value_t = 3.0)]
    pub wbar_s: f64,
    /// Local-oscillator mean frequency.
    #[arg(long, default_value_t = 3.15)]
    pub wbar_lo: f64,
    /// Common spectral width.
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Signal temperature for thermal-vacuum.
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// Local-oscillator temperature for thermal-thermal.
    #[arg(long, default_value_t = 1.0)]
    pub t0: f64,
    /// Signal over local-oscillator temperature for thermal-thermal.
    #[arg(long = "t1/t0", visible_alias = "ratio", default_value_t = 1.01)]
    pub temperature_ratio: f64,
    /// Space dimension (1 or 3); defaults to 3 for thermal light, 1 otherwise.
    #[arg(long)]
    pub d: Option<u32>,
    /// Delay grid `start:stop:intervals`, in τ (spectral) or a = τθ (thermal, θ of the local oscillator for thermal-thermal).
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    #[arg(long, default_value_t = 0.5)]
    pub transmittance: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub rel_tol: f64,
    /// Add Gaussian noise of this standard deviation and write a `noise` column.
    #[arg(long)]
    pub noise: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Temperatures in kelvin, frequencies in rad/s, grid in seconds.
    #[arg(long)]
    pub si: bool,
    /// Output CSV; the sidecar goes next to it with a `.json` extension.
    /// Without it the CSV goes to stdout and no sidecar is written.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// Skip the Monte-Carlo checks.
    #[arg(long)]
    pub quick: bool,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FitModelArg {
    ThermalThermal,
    OnePhotonVacuum,
    FockFock,
}

#[derive(Debug, Args, Serialize)]
pub struct FitArgs {
    pub model: FitModelArg,
    /// Interferogram CSV in the simulate schema.
    #[arg(long)]
    pub data: PathBuf,
    /// Known local-oscillator temperature (thermal-thermal).
    #[arg(long, default_value_t = 1.0)]
    pub t0: f64,
    /// Known local-oscillator mean frequency (fock-fock).
    #[arg(long, default_value_t = 3.15)]
    pub wbar_lo: f64,
    /// Starting values, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub initial: Option<Vec<f64>>,
    /// Bounds `lo:hi`, comma separated, one per parameter.
    #[arg(long, value_delimiter = ',')]
    pub bounds: Option<Vec<String>>,
    /// Ignore the noise column.
    #[arg(long)]
    pub unweighted: bool,
    /// Write the JSON result here as well as to stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CoherenceArgs {
    /// Envelope threshold ε in (0, 0.5).
    #[arg(long, default_value_t = mmi_core::inference::DEFAULT_COHERENCE_THRESHOLD)]
    pub threshold: f64,
    /// Dimensionless temperature, or kelvin with `--si`.
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// Read `--theta` in kelvin and report τ_c in seconds and l_c in metres.
    #[arg(long)]
    pub si: bool,
}
