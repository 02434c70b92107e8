//! Command-line flags and the JSON config file that supplies their defaults.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(name = "lagfrac", version, about = "Laguerre fractional integrals, derivatives and Volterra solves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply a fractional integral or derivative to a catalog function on a grid.
    Apply(ApplyArgs),
    /// Tabulate the kernels k₊, k₋ and report the bound constants C₊, C₋.
    Kernel(KernelArgs),
    /// Tabulate an operator multiplier along a vertical contour.
    Mellin(MellinArgs),
    /// Solve f − λ L f = g on (0, l].
    Solve(SolveArgs),
    /// Run the verification suites and print a pass/fail table.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Apply(_) => "apply",
            Command::Kernel(_) => "kernel",
            Command::Mellin(_) => "mellin",
            Command::Solve(_) => "solve",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// JSON file with default parameters; flags override it.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Output CSV path; defaults to `<command>.csv` in $LAGFRAC_OUT_DIR, or stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ApplyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Order of the operator.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Function descriptor: monomial:<mu>, exp:<rate>, bump:<a>,<b>,<order>, poly:<c0>,<c1>,…, const:<c>.
    #[arg(long)]
    pub func: Option<String>,
    #[arg(long, value_enum)]
    pub op: Option<OperatorKind>,
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    /// Number of grid nodes.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Right end of the grid.
    #[arg(long)]
    pub length: Option<f64>,
    /// Grading exponent; nodes are l (i/N)^grading.
    #[arg(long)]
    pub grading: Option<f64>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct KernelArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Weight exponent of the bound constants.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Number of sample points.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Samples cover [1/vmax, vmax] geometrically.
    #[arg(long)]
    pub vmax: Option<f64>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct MellinArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum)]
    pub multiplier: Option<MultiplierArg>,
    /// Contour abscissa.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Samples τ in [0, height].
    #[arg(long)]
    pub height: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SolveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Coupling constant λ.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Source term g, as a function descriptor.
    #[arg(long)]
    pub func: Option<String>,
    /// Interval length l.
    #[arg(long)]
    pub length: Option<f64>,
    /// Weight exponent of the space the solution lives in.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Series truncation tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long)]
    pub grading: Option<f64>,
    #[arg(long, value_enum)]
    pub solver: Option<Solver>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Run only these suites.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Quadrature,
    Mellin,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorKind {
    /// Laguerre fractional integral.
    Integral,
    /// Laguerre fractional derivative.
    Derivative,
    /// Riemann–Liouville fractional integral.
    Rl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplierArg {
    IntLeft,
    IntRight,
    DerLeft,
    DerRight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Solver {
    Neumann,
    Resolvent,
    Direct,
}

/// Name of a value-enum variant as written on the command line.
pub fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

/// Contents of a `--config` file. Keys that do not apply to the command
/// being run are ignored; unknown keys are rejected.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub command: Option<String>,
    pub alpha: Option<f64>,
    pub func: Option<String>,
    pub op: Option<OperatorKind>,
    pub side: Option<SideArg>,
    pub nu: Option<f64>,
    pub lambda: Option<f64>,
    pub length: Option<f64>,
    pub tol: Option<f64>,
    pub grid: Option<usize>,
    pub grading: Option<f64>,
    pub method: Option<Method>,
    pub multiplier: Option<MultiplierArg>,
    pub height: Option<f64>,
    pub vmax: Option<f64>,
    pub solver: Option<Solver>,
    pub suite: Option<Vec<u32>>,
    pub out: Option<PathBuf>,
}
