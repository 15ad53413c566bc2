use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use equilibria::{NormalizationMode, DEFAULT_REL_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "equilibria",
    version,
    about = "Find, verify and classify fixed equilibria of planar point singularities"
)]
pub struct Cli {
    /// Relative rank tolerance for the nullspace.
    #[arg(long, global = true, default_value_t = DEFAULT_REL_TOL)]
    pub tol: f64,
    /// Seed for random placement.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Singular value normalisation.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Power)]
    pub mode: Mode,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Power,
    Linear,
}

impl From<Mode> for NormalizationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Power => NormalizationMode::Power,
            Mode::Linear => NormalizationMode::Linear,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a point configuration.
    Generate(GenerateArgs),
    /// Solve for equilibrium strengths and write a report.
    Solve(InputArgs),
    /// Integrate a configuration with strengths and check it stays put.
    Verify(VerifyArgs),
    /// Sample the velocity field on a grid as CSV.
    Field(FieldArgs),
    /// Print the singular spectrum table.
    Spectrum(InputArgs),
    /// Compare the analytic orbit around one singularity with RK4.
    Orbit(OrbitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveName {
    Flower,
    FigureEight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveSpacing {
    Parameter,
    Arclength,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("shape").required(true).args(["line", "circle", "curve", "plane"])))]
pub struct GenerateArgs {
    /// Points on the segment [0, 1].
    #[arg(long)]
    pub line: bool,
    /// Points on a circle about the origin.
    #[arg(long)]
    pub circle: bool,
    /// Points on a polar curve.
    #[arg(long, value_enum)]
    pub curve: Option<CurveName>,
    /// Uniform random points in a rectangle.
    #[arg(long)]
    pub plane: bool,
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "random")]
    pub even: bool,
    #[arg(long)]
    pub random: bool,
    /// Even spacing along a curve, in parameter or in arclength.
    #[arg(long, value_enum)]
    pub spacing: Option<CurveSpacing>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase: f64,
    /// `x_min,x_max,y_min,y_max` for `--plane`; the unit square by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub region: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Configuration or report file.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub t_final: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Largest allowed displacement of any point.
    #[arg(long, default_value_t = 1e-6)]
    pub drift_tol: f64,
    /// Largest allowed `‖AΓ‖/‖Γ‖`.
    #[arg(long, default_value_t = 1e-8)]
    pub residual_tol: f64,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 101)]
    pub nx: usize,
    #[arg(long, default_value_t = 101)]
    pub ny: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y_max: Option<f64>,
    /// Multiply all strengths by i before sampling.
    #[arg(long)]
    pub ortho: bool,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gamma_im: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_final: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Table rows after the initial one.
    #[arg(long, default_value_t = 10)]
    pub rows: usize,
}
