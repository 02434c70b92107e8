//! Execution of validated runs.

use lagfrac_core::mellin::{apply_multiplier, MultiplierKind};
use lagfrac_core::operators::{laguerre_d_left, laguerre_d_right};
use lagfrac_core::verify;
use lagfrac_core::volterra::{direct_solve, neumann_solve, residuals, resolvent_solve};
use lagfrac_core::{c_minus, c_plus, FractionalIntegral, Side};
use num_complex::Complex64;

use crate::args::{value_name, Method, OperatorKind, Solver};
use crate::error::CliError;
use crate::settings::{ApplyJob, Job, KernelJob, MellinJob, RunConfig, SolveJob, VerifyJob};
use crate::table::Table;

pub fn execute(cfg: &RunConfig) -> Result<(), CliError> {
    if let Job::Verify(job) = &cfg.job {
        return verify_all(job, cfg);
    }
    let mut table = match &cfg.job {
        Job::Apply(job) => apply(job)?,
        Job::Kernel(job) => kernel(job)?,
        Job::Mellin(job) => mellin(job)?,
        Job::Solve(job) => solve(job)?,
        Job::Verify(_) => unreachable!("handled above"),
    };
    let mut header = vec![
        ("lagfrac".to_string(), env!("CARGO_PKG_VERSION").to_string()),
        ("command".to_string(), cfg.job.name().to_string()),
    ];
    header.append(&mut table.metadata);
    table.metadata = header;
    table.write(cfg.out.as_deref())?;
    Ok(())
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

/// `|a − b|` relative to the larger magnitude, 0 when both vanish.
fn agreement(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn apply(job: &ApplyJob) -> Result<Table, CliError> {
    let nodes = job.mesh.nodes();
    let quadrature = if job.method == Method::Mellin {
        None
    } else {
        Some(match job.op {
            OperatorKind::Integral => FractionalIntegral::laguerre(job.side, job.alpha)?.eval_many(&job.func, &nodes)?,
            OperatorKind::Rl => FractionalIntegral::riemann_liouville(job.side, job.alpha)?.eval_many(&job.func, &nodes)?,
            OperatorKind::Derivative => {
                let g = match job.side {
                    Side::Left => laguerre_d_left(&job.func, job.alpha, &job.mesh)?,
                    Side::Right => laguerre_d_right(&job.func, job.alpha, &job.mesh)?,
                };
                g.values().to_vec()
            }
        })
    };
    let mellin = match &job.multiplier {
        Some(md) => Some(nodes.iter().map(|&x| apply_multiplier(&job.func, md, None, x)).collect::<Result<Vec<_>, _>>()?),
        None => None,
    };

    let mut columns = vec!["x"];
    match job.method {
        Method::Quadrature => columns.push("value"),
        Method::Mellin => columns.push("value_mellin"),
        Method::Both => columns.extend(["value", "value_mellin", "agreement"]),
    }
    let mut table = Table::new(columns);
    table
        .meta("operator", value_name(&job.op))
        .meta("side", side_name(job.side))
        .meta("alpha", job.alpha)
        .meta("func", &job.func)
        .meta("grid", job.mesh.len())
        .meta("length", job.mesh.length())
        .meta("grading", job.mesh.grading())
        .meta("method", value_name(&job.method));
    for (i, &x) in nodes.iter().enumerate() {
        let mut row = vec![x];
        match (&quadrature, &mellin) {
            (Some(q), Some(m)) => row.extend([q[i], m[i], agreement(q[i], m[i])]),
            (Some(q), None) => row.push(q[i]),
            (None, Some(m)) => row.push(m[i]),
            (None, None) => unreachable!("at least one route is requested"),
        }
        table.rows.push(row);
    }
    Ok(table)
}

fn kernel(job: &KernelJob) -> Result<Table, CliError> {
    let alpha = job.kernel.alpha();
    let mut table = Table::new(vec!["v", "k_plus", "k_minus"]);
    table.meta("alpha", alpha).meta("nu", job.nu).meta("grid", job.grid).meta("vmax", job.vmax);
    // a constant is reported only where it exists
    for (name, value) in [("c_plus", c_plus(alpha, job.nu)), ("c_minus", c_minus(alpha, job.nu))] {
        match value {
            Ok(c) => table.meta(name, c),
            Err(e) => table.meta(name, format!("undefined ({e})")),
        };
    }
    let (lo, hi) = (-job.vmax.ln(), job.vmax.ln());
    for i in 0..job.grid {
        let v = (lo + (hi - lo) * i as f64 / (job.grid - 1) as f64).exp();
        table.rows.push(vec![v, job.kernel.k_plus(v)?, job.kernel.k_minus(v)?]);
    }
    Ok(table)
}

fn mellin(job: &MellinJob) -> Result<Table, CliError> {
    let md = &job.multiplier;
    let kind = match md.kind() {
        MultiplierKind::LagIntLeft => "int-left",
        MultiplierKind::LagIntRight => "int-right",
        MultiplierKind::LagDerLeft => "der-left",
        MultiplierKind::LagDerRight => "der-right",
    };
    let mut table = Table::new(vec!["tau", "re", "im", "abs"]);
    table
        .meta("multiplier", kind)
        .meta("alpha", md.alpha())
        .meta("nu", job.nu)
        .meta("height", job.height)
        .meta("grid", job.grid);
    for i in 0..job.grid {
        let tau = job.height * i as f64 / (job.grid - 1) as f64;
        let m = md.eval(Complex64::new(job.nu, tau))?;
        table.rows.push(vec![tau, m.re, m.im, m.norm()]);
    }
    Ok(table)
}

fn solve(job: &SolveJob) -> Result<Table, CliError> {
    let cfg = &job.config;
    let f = match job.solver {
        Solver::Neumann => neumann_solve(&job.func, cfg, &job.mesh)?,
        Solver::Resolvent => resolvent_solve(&job.func, cfg, &job.mesh)?,
        Solver::Direct => direct_solve(&job.func, cfg, &job.mesh)?,
    };
    let r = residuals(&f, &job.func, cfg)?;
    let mut table = Table::new(vec!["x", "f", "residual"]);
    table
        .meta("alpha", cfg.alpha())
        .meta("lambda", cfg.lambda())
        .meta("func", &job.func)
        .meta("length", cfg.length())
        .meta("nu", cfg.nu())
        .meta("tol", cfg.tol())
        .meta("c_plus", cfg.c_plus())
        .meta("grid", job.mesh.len())
        .meta("grading", job.mesh.grading())
        .meta("solver", value_name(&job.solver));
    for ((&x, &v), &res) in f.nodes().iter().zip(f.values()).zip(&r) {
        table.rows.push(vec![x, v, res]);
    }
    Ok(table)
}

fn verify_all(job: &VerifyJob, cfg: &RunConfig) -> Result<(), CliError> {
    let suites = if job.suites.is_empty() {
        verify::suites()
    } else {
        job.suites.iter().filter_map(|&id| verify::suite_by_id(id)).collect()
    };
    let mut table = Table::new(vec!["suite", "passed", "checks", "worst_ratio"]);
    table.meta("lagfrac", env!("CARGO_PKG_VERSION")).meta("command", "verify");
    let total = suites.len();
    let mut failed = 0;
    for suite in &suites {
        let report = suite.run();
        println!("{report}");
        if !report.passed() {
            failed += 1;
            if let Some(msg) = &report.failure {
                println!("      error: {msg}");
            }
            for c in report.checks.iter().filter(|c| !c.passed()) {
                println!("      {} = {:.3e} > {:.1e}", c.label, c.error, c.tolerance);
            }
        }
        let worst = report.checks.iter().map(|c| if c.tolerance > 0.0 { c.error / c.tolerance } else { c.error }).fold(0.0, f64::max);
        table.rows.push(vec![f64::from(suite.id), f64::from(u8::from(report.passed())), report.checks.len() as f64, worst]);
    }
    println!("{} of {total} suites pass", total - failed);
    if cfg.out.is_some() {
        table.write(cfg.out.as_deref())?;
    }
    if failed > 0 {
        return Err(CliError::Verification { failed, total });
    }
    Ok(())
}
