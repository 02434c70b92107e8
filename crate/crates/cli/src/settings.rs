//! Merging flags over the config file and validating the result before any
//! computation starts.

use std::path::{Path, PathBuf};

use lagfrac_core::mellin::{admissible_strip, MultiplierDescriptor, MultiplierKind, Strip};
use lagfrac_core::{CatalogFunction, FractionalIntegral, KernelEval, Mesh, NeumannSolveConfig, Side};

use crate::args::{
    ApplyArgs, Command, Common, FileConfig, KernelArgs, Method, MellinArgs, MultiplierArg, OperatorKind, SideArg, SolveArgs, Solver,
    VerifyArgs,
};
use crate::error::{invalid, CliError};

/// Environment variable naming the directory for outputs without `--out`.
pub const OUT_DIR_VAR: &str = "LAGFRAC_OUT_DIR";

const DEFAULT_GRID: usize = 256;
const DEFAULT_LENGTH: f64 = 1.0;
const DEFAULT_GRADING: f64 = 2.0;
const DEFAULT_VMAX: f64 = 10.0;
const DEFAULT_HEIGHT: f64 = 20.0;
const MIN_GRID: usize = 16;

/// A validated run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub out: Option<PathBuf>,
    pub job: Job,
}

#[derive(Debug, Clone)]
pub enum Job {
    Apply(ApplyJob),
    Kernel(KernelJob),
    Mellin(MellinJob),
    Solve(SolveJob),
    Verify(VerifyJob),
}

impl Job {
    pub fn name(&self) -> &'static str {
        match self {
            Job::Apply(_) => "apply",
            Job::Kernel(_) => "kernel",
            Job::Mellin(_) => "mellin",
            Job::Solve(_) => "solve",
            Job::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ApplyJob {
    pub alpha: f64,
    pub func: CatalogFunction,
    pub op: OperatorKind,
    pub side: Side,
    pub mesh: Mesh,
    pub method: Method,
    /// Multiplier of the Mellin route, when it is requested.
    pub multiplier: Option<MultiplierDescriptor>,
}

#[derive(Debug, Clone)]
pub struct KernelJob {
    pub kernel: KernelEval,
    pub nu: f64,
    pub grid: usize,
    pub vmax: f64,
}

#[derive(Debug, Clone)]
pub struct MellinJob {
    pub multiplier: MultiplierDescriptor,
    pub nu: f64,
    pub height: f64,
    pub grid: usize,
}

#[derive(Debug, Clone)]
pub struct SolveJob {
    pub config: NeumannSolveConfig,
    pub func: CatalogFunction,
    pub mesh: Mesh,
    pub solver: Solver,
}

#[derive(Debug, Clone)]
pub struct VerifyJob {
    pub suites: Vec<u32>,
}

/// Reads the config file named by `--config`, if any.
pub fn load_file(path: Option<&Path>) -> Result<FileConfig, CliError> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::invalid(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))
}

/// Merges flags over the config file and validates the result.
pub fn resolve(command: &Command) -> Result<RunConfig, CliError> {
    let common = match command {
        Command::Apply(a) => &a.common,
        Command::Kernel(a) => &a.common,
        Command::Mellin(a) => &a.common,
        Command::Solve(a) => &a.common,
        Command::Verify(a) => &a.common,
    };
    let file = load_file(common.config.as_deref())?;
    if let Some(name) = &file.command {
        if name != command.name() {
            return Err(CliError::invalid(format!("config is for command '{name}', not '{}'", command.name())));
        }
    }
    let job = match command {
        Command::Apply(a) => Job::Apply(apply_job(a, &file)?),
        Command::Kernel(a) => Job::Kernel(kernel_job(a, &file)?),
        Command::Mellin(a) => Job::Mellin(mellin_job(a, &file)?),
        Command::Solve(a) => Job::Solve(solve_job(a, &file)?),
        Command::Verify(a) => Job::Verify(verify_job(a, &file)?),
    };
    Ok(RunConfig { out: output_path(common, &file, job.name()), job })
}

fn output_path(common: &Common, file: &FileConfig, command: &str) -> Option<PathBuf> {
    common
        .out
        .clone()
        .or_else(|| file.out.clone())
        .or_else(|| std::env::var_os(OUT_DIR_VAR).map(|dir| PathBuf::from(dir).join(format!("{command}.csv"))))
}

fn required<T>(value: Option<T>, name: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::invalid(format!("--{name} is required")))
}

fn alpha(value: Option<f64>) -> Result<f64, CliError> {
    let a = required(value, "alpha")?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(CliError::invalid(format!("alpha > 0 required, got {a}")));
    }
    Ok(a)
}

fn finite(value: f64, name: &str) -> Result<f64, CliError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::invalid(format!("{name} must be finite, got {value}")))
    }
}

fn grid(value: Option<usize>, min: usize) -> Result<usize, CliError> {
    let n = value.unwrap_or(DEFAULT_GRID);
    if n < min {
        return Err(CliError::invalid(format!("grid >= {min} required, got {n}")));
    }
    Ok(n)
}

fn function(value: Option<String>) -> Result<CatalogFunction, CliError> {
    required(value, "func")?.parse().map_err(invalid)
}

fn side(value: Option<SideArg>) -> Side {
    match value {
        Some(SideArg::Right) => Side::Right,
        _ => Side::Left,
    }
}

fn mesh(n: usize, length: Option<f64>, grading: Option<f64>) -> Result<Mesh, CliError> {
    let l = length.unwrap_or(DEFAULT_LENGTH);
    if !(l > 0.0 && l.is_finite()) {
        return Err(CliError::invalid(format!("length > 0 required, got {l}")));
    }
    let g = grading.unwrap_or(DEFAULT_GRADING);
    if !(g >= 1.0 && g.is_finite()) {
        return Err(CliError::invalid(format!("grading >= 1 required, got {g}")));
    }
    Mesh::new(n, l, g).map_err(invalid)
}

/// Nodes needed by the stencils of `θ^m` for a derivative of order `alpha`.
fn derivative_grid_minimum(alpha: f64) -> usize {
    let m = alpha.floor() as usize + 1;
    2 * (2 * m + 9)
}

fn apply_job(a: &ApplyArgs, file: &FileConfig) -> Result<ApplyJob, CliError> {
    let alpha = alpha(a.alpha.or(file.alpha))?;
    let func = function(a.func.clone().or_else(|| file.func.clone()))?;
    let op = a.op.or(file.op).unwrap_or(OperatorKind::Integral);
    let side = side(a.side.or(file.side));
    let method = a.method.or(file.method).unwrap_or(Method::Quadrature);
    let min = match op {
        OperatorKind::Derivative => derivative_grid_minimum(alpha),
        _ => MIN_GRID,
    };
    let mesh = mesh(grid(a.grid.or(file.grid), min)?, a.length.or(file.length), a.grading.or(file.grading))?;

    let inner = match op {
        OperatorKind::Integral => FractionalIntegral::laguerre(side, alpha),
        OperatorKind::Rl => FractionalIntegral::riemann_liouville(side, alpha),
        OperatorKind::Derivative => {
            let m = alpha.floor() + 1.0;
            FractionalIntegral::laguerre(side, m - alpha)
        }
    }
    .map_err(invalid)?;
    inner.check_operand(&func).map_err(|e| CliError::invalid(format!("{func} is outside the operator's domain: {e}")))?;

    let multiplier = if method == Method::Quadrature {
        None
    } else {
        let kind = match (op, side) {
            (OperatorKind::Integral, Side::Left) => MultiplierKind::LagIntLeft,
            (OperatorKind::Integral, Side::Right) => MultiplierKind::LagIntRight,
            (OperatorKind::Derivative, Side::Left) => MultiplierKind::LagDerLeft,
            (OperatorKind::Derivative, Side::Right) => MultiplierKind::LagDerRight,
            (OperatorKind::Rl, _) => return Err(CliError::invalid("the Mellin route is available for Laguerre operators only")),
        };
        let md = MultiplierDescriptor::new(kind, alpha).map_err(invalid)?;
        let strip = admissible_strip(&func, std::slice::from_ref(&md));
        if strip.is_empty() {
            return Err(CliError::invalid(format!("no admissible Mellin contour for {func}: the transform's strip and the multiplier's do not overlap")));
        }
        Some(md)
    };
    Ok(ApplyJob { alpha, func, op, side, mesh, method, multiplier })
}

fn kernel_job(a: &KernelArgs, file: &FileConfig) -> Result<KernelJob, CliError> {
    let alpha = alpha(a.alpha.or(file.alpha))?;
    let kernel = KernelEval::from_alpha(alpha).map_err(invalid)?;
    let nu = finite(a.nu.or(file.nu).unwrap_or(0.5 * (1.0 - alpha)), "nu")?;
    let vmax = a.vmax.or(file.vmax).unwrap_or(DEFAULT_VMAX);
    if !(vmax > 1.0 && vmax.is_finite()) {
        return Err(CliError::invalid(format!("vmax > 1 required, got {vmax}")));
    }
    Ok(KernelJob { kernel, nu, grid: grid(a.grid.or(file.grid), 2)?, vmax })
}

/// Default contour abscissa. For the left integral it is `(1 − α)/2` while
/// that lies below the pole at `1 − α`, and the midpoint `1/2 − α` of the
/// strip left by exponentially decaying functions otherwise. The right
/// integral uses `1/2`; derivatives shift both by `α`.
fn default_abscissa(kind: MultiplierKind, alpha: f64) -> f64 {
    let left = if alpha < 1.0 { 0.5 * (1.0 - alpha) } else { 0.5 - alpha };
    match kind {
        MultiplierKind::LagIntLeft => left,
        MultiplierKind::LagIntRight => 0.5,
        MultiplierKind::LagDerLeft => left + alpha,
        MultiplierKind::LagDerRight => 0.5 + alpha,
    }
}

fn mellin_job(a: &MellinArgs, file: &FileConfig) -> Result<MellinJob, CliError> {
    let alpha = alpha(a.alpha.or(file.alpha))?;
    let kind = match a.multiplier.or(file.multiplier).unwrap_or(MultiplierArg::IntLeft) {
        MultiplierArg::IntLeft => MultiplierKind::LagIntLeft,
        MultiplierArg::IntRight => MultiplierKind::LagIntRight,
        MultiplierArg::DerLeft => MultiplierKind::LagDerLeft,
        MultiplierArg::DerRight => MultiplierKind::LagDerRight,
    };
    let multiplier = MultiplierDescriptor::new(kind, alpha).map_err(invalid)?;
    let nu = finite(a.nu.or(file.nu).unwrap_or_else(|| default_abscissa(kind, alpha)), "nu")?;
    let strip: Strip = multiplier.strip();
    if !strip.contains(nu) {
        return Err(CliError::invalid(format!("nu inside the multiplier's strip {strip} required, got {nu}")));
    }
    let height = a.height.or(file.height).unwrap_or(DEFAULT_HEIGHT);
    if !(height > 0.0 && height.is_finite()) {
        return Err(CliError::invalid(format!("height > 0 required, got {height}")));
    }
    Ok(MellinJob { multiplier, nu, height, grid: grid(a.grid.or(file.grid), 2)? })
}

fn solve_job(a: &SolveArgs, file: &FileConfig) -> Result<SolveJob, CliError> {
    let alpha = alpha(a.alpha.or(file.alpha))?;
    let lambda = finite(required(a.lambda.or(file.lambda), "lambda")?, "lambda")?;
    let func = function(a.func.clone().or_else(|| file.func.clone()))?;
    let length = a.length.or(file.length).unwrap_or(DEFAULT_LENGTH);
    let nu = a.nu.or(file.nu).unwrap_or(NeumannSolveConfig::DEFAULT_NU);
    let mut config = NeumannSolveConfig::new(alpha, nu, lambda, length).map_err(invalid)?;
    if let Some(tol) = a.tol.or(file.tol) {
        config = config.with_tol(tol).map_err(invalid)?;
    }
    let mesh = mesh(grid(a.grid.or(file.grid), MIN_GRID)?, Some(length), a.grading.or(file.grading))?;
    FractionalIntegral::laguerre(Side::Left, alpha)
        .map_err(invalid)?
        .check_operand(&func)
        .map_err(|e| CliError::invalid(format!("source {func} is outside the operator's domain: {e}")))?;
    Ok(SolveJob { config, func, mesh, solver: a.solver.or(file.solver).unwrap_or(Solver::Neumann) })
}

fn verify_job(a: &VerifyArgs, file: &FileConfig) -> Result<VerifyJob, CliError> {
    let suites = if a.suite.is_empty() { file.suite.clone().unwrap_or_default() } else { a.suite.clone() };
    for &id in &suites {
        if lagfrac_core::verify::suite_by_id(id).is_none() {
            return Err(CliError::invalid(format!("unknown suite {id}; suites are numbered 1 to {}", lagfrac_core::verify::suites().len())));
        }
    }
    Ok(VerifyJob { suites })
}
