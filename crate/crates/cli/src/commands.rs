//! One function per subcommand.

use std::path::Path;

use etafloor_core::decomposition::{
    decompose_tail, inner_product_check, maximizing_theta, tail_vector,
};
use etafloor_core::eta::zeta_from_eta;
use etafloor_core::propositions::suite::run_all;
use etafloor_core::scanner::{default_workers, find_zeros, grid, scan_grid, ZeroFinder};
use etafloor_core::{ComplexPoint, EvalResult, Evaluator, ScanConfig};

use crate::documents::{merge, Document, EvalDoc, PcaDoc, PcaRow, PropsDoc, ScanDoc, ZerosDoc};
use crate::output::{json, real, write_atomic, Format, Table};
use crate::{exit, CliError, Command, MAX_WORKERS_ENV};

pub fn run(command: &Command) -> Result<i32, CliError> {
    let (doc, table, out, strict) = match command {
        Command::Eval(a) => {
            let (d, t) = eval(a)?;
            (d, t, &a.out, false)
        }
        Command::Props(a) => {
            let (d, t) = props(a)?;
            (d, t, &a.out, false)
        }
        Command::Pca(a) => {
            let (d, t) = pca(a)?;
            (d, t, &a.out, false)
        }
        Command::Scan(a) => {
            let (d, t) = scan(a)?;
            (d, t, &a.out, a.strict)
        }
        Command::Zeros(a) => {
            let (d, t) = zeros(a)?;
            (d, t, &a.out, false)
        }
        Command::Report(a) => {
            let (d, t) = report(a)?;
            (d, t, &a.out, a.strict)
        }
    };
    let bytes = match out.format {
        Format::Csv => table.to_csv(),
        Format::Json => json(&doc),
    };
    emit(out.output.as_deref(), &bytes)?;
    eprintln!("{}", summary(&doc));
    Ok(exit_code(&doc, strict))
}

/// Numerical failures take precedence over violations.
pub fn exit_code(doc: &Document, strict: bool) -> i32 {
    if doc.numerical_failures() > 0 {
        exit::NUMERICAL
    } else if strict && doc.violation_count() > 0 {
        exit::VIOLATION
    } else {
        exit::OK
    }
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    use std::io::Write;
    let result = match path {
        Some(p) => write_atomic(p, bytes).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|e| format!("stdout: {e}")),
    };
    result.map_err(CliError::Io)
}

fn summary(doc: &Document) -> String {
    let mut line = format!(
        "{}: {} item(s), {} violation(s), {} numerical failure(s)",
        doc.command(),
        doc.items(),
        doc.violation_count(),
        doc.numerical_failures()
    );
    if let Document::Scan(d) = doc {
        if let (Some(m), Some(s)) = (d.report.min_eta_abs, d.report.argmin) {
            line.push_str(&format!("; min |eta| = {} at {s}", real(m)));
        }
    }
    line
}

/// Worker count after the environment cap; zero is a usage error.
pub fn resolve_workers(requested: Option<usize>) -> Result<usize, CliError> {
    let mut n = requested.unwrap_or_else(default_workers);
    if n == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    if let Ok(cap) = std::env::var(MAX_WORKERS_ENV) {
        let cap: usize = cap.trim().parse().ok().filter(|&c| c >= 1).ok_or_else(|| {
            CliError::Usage(format!(
                "{MAX_WORKERS_ENV} must be a positive integer, got {cap:?}"
            ))
        })?;
        n = n.min(cap);
    }
    Ok(n)
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be positive and finite, got {v}"
        )))
    }
}

fn eval_row(table: &mut Table, quantity: &str, doc: &EvalDoc, r: &EvalResult) {
    table.push(vec![
        quantity.into(),
        real(doc.s.alpha),
        real(doc.s.beta),
        doc.engine.as_str().into(),
        r.method.as_str().into(),
        real(r.value.re),
        real(r.value.im),
        real(r.abs_error_estimate),
        r.terms_used.to_string(),
    ]);
}

fn eval(a: &crate::EvalArgs) -> Result<(Document, Table), CliError> {
    positive("tol", a.tol)?;
    let ev = Evaluator::new(a.engine.engine);
    let eta = ev.eval(a.s, a.tol)?;
    let zeta = if a.zeta {
        Some(zeta_from_eta(&ev, a.s, a.tol)?)
    } else {
        None
    };
    let doc = EvalDoc {
        s: a.s,
        tol: a.tol,
        engine: a.engine.engine,
        eta,
        zeta,
    };
    let mut table = Table::new(&[
        "quantity",
        "alpha",
        "beta",
        "engine",
        "method",
        "re",
        "im",
        "abs_error_estimate",
        "terms_used",
    ]);
    eval_row(&mut table, "eta", &doc, &doc.eta);
    if let Some(z) = &doc.zeta {
        eval_row(&mut table, "zeta", &doc, z);
    }
    Ok((Document::Eval(doc), table))
}

fn props(a: &crate::PropsArgs) -> Result<(Document, Table), CliError> {
    if a.cases == 0 {
        return Err(CliError::Usage("--cases must be at least 1".into()));
    }
    let suites = run_all(a.seed, a.cases);
    let mut table = Table::new(&[
        "suite",
        "cases",
        "failures",
        "max_error",
        "passed",
        "first_failure",
    ]);
    for s in &suites {
        table.push(vec![
            s.name.clone(),
            s.cases.to_string(),
            s.failures.to_string(),
            real(s.max_error),
            s.passed().to_string(),
            s.first_failure.clone().unwrap_or_default(),
        ]);
    }
    Ok((
        Document::Props(PropsDoc {
            seed: a.seed,
            cases: a.cases,
            suites,
        }),
        table,
    ))
}

fn pca(a: &crate::PcaArgs) -> Result<(Document, Table), CliError> {
    positive("tol", a.tol)?;
    let points: Vec<ComplexPoint> = match (a.s, a.alpha, a.beta) {
        (Some(s), _, _) => vec![s],
        (None, Some(alpha), Some(beta)) => grid(beta.lo, beta.hi, a.step)?
            .into_iter()
            .map(|b| ComplexPoint::new(alpha, b))
            .collect(),
        _ => {
            return Err(CliError::Usage(
                "pca needs --s, or --alpha with --beta lo:hi".into(),
            ))
        }
    };
    if let Some(theta) = a.theta {
        if !theta.is_finite() {
            return Err(CliError::Usage("--theta must be finite".into()));
        }
    }
    for s in &points {
        s.require_series_domain()?;
    }

    let ev = Evaluator::new(a.engine.engine);
    let mut rows = Vec::with_capacity(points.len());
    for s in points {
        let tail = tail_vector(&ev, s, a.tol)?;
        let theta = a.theta.unwrap_or_else(|| maximizing_theta(tail));
        let ip = inner_product_check(s, tail, a.tol.max(1e-9))?;
        rows.push(PcaRow {
            decomposition: decompose_tail(s, tail, theta),
            inner_product_quadrature: ip.quadrature,
        });
    }

    let mut table = Table::new(&[
        "alpha",
        "beta",
        "theta",
        "tail_re",
        "tail_im",
        "tail3_re",
        "tail3_im",
        "w",
        "w1",
        "w2",
        "variance1",
        "variance2",
        "inner_product",
        "inner_product_quadrature",
        "leading",
    ]);
    for r in &rows {
        let d = &r.decomposition;
        table.push(vec![
            real(d.s.alpha),
            real(d.s.beta),
            real(d.theta),
            real(d.tail.re),
            real(d.tail.im),
            real(d.tail3.re),
            real(d.tail3.im),
            real(d.w),
            real(d.w1),
            real(d.w2),
            real(d.variance1),
            real(d.variance2),
            real(d.inner_product),
            real(r.inner_product_quadrature),
            d.leading.as_str().into(),
        ]);
    }
    Ok((
        Document::Pca(PcaDoc {
            tol: a.tol,
            engine: a.engine.engine,
            rows,
        }),
        table,
    ))
}

pub const SCAN_HEADER: [&str; 9] = [
    "alpha",
    "beta",
    "eta_abs",
    "floor",
    "margin",
    "tail_abs",
    "tail_bound",
    "leading",
    "tail_ineq_holds",
];

fn scan(a: &crate::ScanArgs) -> Result<(Document, Table), CliError> {
    positive("tol", a.tol)?;
    let config = ScanConfig {
        evaluator: Evaluator::new(a.engine.engine),
        tol: a.tol,
        workers: resolve_workers(a.workers)?,
        refine: !a.no_refine,
        ..ScanConfig::default()
    };
    let report = scan_grid(
        a.alpha.lo,
        a.alpha.hi,
        a.alpha_step,
        a.beta.lo,
        a.beta.hi,
        a.step,
        &config,
    )?;
    let mut table = Table::new(&SCAN_HEADER);
    for b in report.lines.iter().flat_map(|l| l.samples.iter()) {
        table.push(vec![
            real(b.s.alpha),
            real(b.s.beta),
            real(b.eta_abs),
            real(b.floor_value),
            real(b.margin),
            real(b.tail_abs),
            real(b.tail_bound),
            b.leading.as_str().into(),
            b.tail_inequality_holds.to_string(),
        ]);
    }
    Ok((
        Document::Scan(ScanDoc {
            tol: a.tol,
            engine: a.engine.engine,
            report,
        }),
        table,
    ))
}

fn zeros(a: &crate::ZerosArgs) -> Result<(Document, Table), CliError> {
    positive("tol", a.tol)?;
    let finder = ZeroFinder {
        evaluator: Evaluator::new(a.engine.engine),
        workers: resolve_workers(a.workers)?,
        ..ZeroFinder::default()
    };
    let report = find_zeros(&finder, a.t.lo, a.t.hi, a.tol)?;
    let mut table = Table::new(&[
        "t",
        "residual",
        "engine_gap",
        "bracket_lo",
        "bracket_hi",
        "angle",
        "in_claimed_range",
        "closure",
    ]);
    for (z, g) in report.zeros.iter().zip(&report.geometry) {
        table.push(vec![
            real(z.t),
            real(z.residual),
            real(z.engine_gap),
            real(z.bracket_lo),
            real(z.bracket_hi),
            real(g.angle),
            g.in_claimed_range.to_string(),
            real(g.closure),
        ]);
    }
    Ok((
        Document::Zeros(ZerosDoc {
            engine: a.engine.engine,
            report,
        }),
        table,
    ))
}

fn report(a: &crate::ReportArgs) -> Result<(Document, Table), CliError> {
    positive("tol", a.tol)?;
    let mut inputs = Vec::with_capacity(a.inputs.len());
    for path in &a.inputs {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let doc: Document = serde_json::from_str(&text).map_err(|e| {
            CliError::Usage(format!(
                "{} is not an etafloor JSON report: {e}",
                path.display()
            ))
        })?;
        inputs.push((path.display().to_string(), doc));
    }
    let merged = merge(&inputs, a.tol);
    let mut table = Table::new(&[
        "kind",
        "source",
        "other",
        "command",
        "items",
        "violations",
        "numerical_failures",
        "max_abs_diff",
        "agree",
    ]);
    for i in &merged.inputs {
        table.push(vec![
            "input".into(),
            i.source.clone(),
            String::new(),
            i.command.clone(),
            i.items.to_string(),
            i.violations.to_string(),
            i.numerical_failures.to_string(),
            String::new(),
            String::new(),
        ]);
    }
    for c in &merged.comparisons {
        table.push(vec![
            "comparison".into(),
            c.source.clone(),
            c.other.clone(),
            String::new(),
            c.matched.to_string(),
            String::new(),
            String::new(),
            c.max_abs_diff.map(real).unwrap_or_default(),
            c.agree.to_string(),
        ]);
    }
    Ok((Document::Report(merged), table))
}
