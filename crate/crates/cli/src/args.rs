use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scarf2_core::ComplexScalar;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "scarf2",
    version,
    about = "Scarf II spectra, pseudo-norms and closed-form checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for oracle spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Target absolute error of the quadrature oracle.
    #[arg(long, global = true, env = "SCARF2_QUAD_TOL", default_value_t = scarf2_core::quadrature::DEFAULT_ABS_TOL)]
    pub quad_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies.
    Spectrum(SpectrumArgs),
    /// Diagonal PT pseudo-norms or cross-parity overlaps.
    Pseudonorm(PseudonormArgs),
    /// Inner-product matrix between all bound states.
    Matrix(MatrixArgs),
    /// Compare every closed form against the quadrature oracle.
    Verify(VerifyArgs),
    /// Follow one state along an alpha path through the PT-breaking point.
    Sweep(SweepArgs),
    /// Prove the binomial sum rules in exact arithmetic.
    Identities(IdentitiesArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum(_) => "spectrum",
            Command::Pseudonorm(_) => "pseudonorm",
            Command::Matrix(_) => "matrix",
            Command::Verify(_) => "verify",
            Command::Sweep(_) => "sweep",
            Command::Identities(_) => "identities",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityChoice {
    Both,
    #[value(name = "+1", alias = "plus", alias = "1")]
    Plus,
    #[value(name = "-1", alias = "minus")]
    Minus,
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s.trim() {
        "1" | "+1" | "+" => Ok(1),
        "-1" | "-" => Ok(-1),
        other => Err(format!("`{other}` is not +1 or -1")),
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectrumArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: ComplexScalar,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: ComplexScalar,
    #[arg(long, value_enum, default_value_t = ParityChoice::Both, allow_hyphen_values = true)]
    pub parity: ParityChoice,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PseudonormArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: ComplexScalar,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: ComplexScalar,
    /// +1 pairs states of equal quasi-parity, -1 opposite ones.
    #[arg(long, default_value = "1", value_parser = parse_sign, allow_hyphen_values = true)]
    pub delta_sign: i8,
    /// Add quadrature oracle columns.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductChoice {
    Pt,
    Standard,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MatrixArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: ComplexScalar,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: ComplexScalar,
    #[arg(long, value_enum, default_value_t = ProductChoice::Pt)]
    pub product: ProductChoice,
    /// Include the quasi-parity -1 family.
    #[arg(long)]
    pub both_parities: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    /// Lines of `alpha,beta`; defaults to the standard grid.
    #[arg(long)]
    pub grid_file: Option<PathBuf>,
    /// Absolute tolerance; without --rel-tol the relative part is dropped.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    /// `real:a..b:steps,imag:c..d:steps` or comma-separated complex values.
    #[arg(long, allow_hyphen_values = true)]
    pub path: String,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IdentitiesArgs {
    #[arg(long, default_value_t = scarf2_core::identities::DEFAULT_MAX_N)]
    pub max_n: usize,
    #[arg(long, default_value_t = 20)]
    pub max_l: u32,
    #[arg(long, hide = true)]
    pub negative_control: bool,
}
