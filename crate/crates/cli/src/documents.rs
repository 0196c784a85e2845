//! JSON documents written by every command and read back by `report`.

use serde::{Deserialize, Serialize};

use etafloor_core::decomposition::TailDecomposition;
use etafloor_core::propositions::suite::SuiteReport;
use etafloor_core::scanner::ZeroScanReport;
use etafloor_core::{BoundSample, ComplexPoint, Engine, EvalResult, GridReport, Real};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Document {
    Eval(EvalDoc),
    Props(PropsDoc),
    Pca(PcaDoc),
    Scan(ScanDoc),
    Zeros(ZerosDoc),
    Report(ReportDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalDoc {
    pub s: ComplexPoint,
    pub tol: Real,
    pub engine: Engine,
    pub eta: EvalResult,
    pub zeta: Option<EvalResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropsDoc {
    pub seed: u64,
    pub cases: usize,
    pub suites: Vec<SuiteReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaRow {
    pub decomposition: TailDecomposition,
    pub inner_product_quadrature: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaDoc {
    pub tol: Real,
    pub engine: Engine,
    pub rows: Vec<PcaRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanDoc {
    pub tol: Real,
    pub engine: Engine,
    pub report: GridReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZerosDoc {
    pub engine: Engine,
    pub report: ZeroScanReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub source: String,
    pub command: String,
    pub items: usize,
    pub violations: usize,
    pub numerical_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub source: String,
    pub other: String,
    pub matched: usize,
    pub max_abs_diff: Option<Real>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub tol: Real,
    pub inputs: Vec<InputSummary>,
    pub comparisons: Vec<Comparison>,
    /// Every bound violation carried by the inputs.
    pub violations: Vec<BoundSample>,
    pub violation_count: usize,
    pub numerical_failures: usize,
}

impl Document {
    pub fn command(&self) -> &'static str {
        match self {
            Self::Eval(_) => "eval",
            Self::Props(_) => "props",
            Self::Pca(_) => "pca",
            Self::Scan(_) => "scan",
            Self::Zeros(_) => "zeros",
            Self::Report(_) => "report",
        }
    }

    pub fn items(&self) -> usize {
        match self {
            Self::Eval(_) => 1,
            Self::Props(d) => d.suites.len(),
            Self::Pca(d) => d.rows.len(),
            Self::Scan(d) => d.report.lines.iter().map(|l| l.samples.len()).sum(),
            Self::Zeros(d) => d.report.zeros.len(),
            Self::Report(d) => d.inputs.len(),
        }
    }

    pub fn violations(&self) -> Vec<BoundSample> {
        match self {
            Self::Scan(d) => d
                .report
                .lines
                .iter()
                .flat_map(|l| l.violations.iter().copied())
                .collect(),
            Self::Report(d) => d.violations.clone(),
            _ => Vec::new(),
        }
    }

    /// Violations as counted by the document itself.
    pub fn violation_count(&self) -> usize {
        match self {
            Self::Scan(d) => d.report.violation_count,
            Self::Report(d) => d.violation_count,
            _ => 0,
        }
    }

    /// Cross-check failures, refused evaluations and failed property suites.
    pub fn numerical_failures(&self) -> usize {
        match self {
            Self::Props(d) => d.suites.iter().filter(|s| !s.passed()).count(),
            Self::Scan(d) => d
                .report
                .lines
                .iter()
                .flat_map(|l| l.failures.iter())
                .filter(|f| f.numerical)
                .count(),
            Self::Report(d) => d.numerical_failures,
            _ => 0,
        }
    }
}

fn bits(s: ComplexPoint) -> (u64, u64) {
    (s.alpha.to_bits(), s.beta.to_bits())
}

/// Matched pairs and the largest difference, comparing like with like.
fn difference(a: &Document, b: &Document) -> Option<(usize, Option<Real>)> {
    let max = |it: &mut dyn Iterator<Item = Real>| {
        it.fold(None, |m: Option<Real>, d| Some(m.map_or(d, |m| m.max(d))))
    };
    match (a, b) {
        (Document::Eval(x), Document::Eval(y)) if bits(x.s) == bits(y.s) => {
            Some((1, Some((x.eta.value - y.eta.value).norm())))
        }
        (Document::Scan(x), Document::Scan(y)) => {
            let index: std::collections::HashMap<_, _> = y
                .report
                .lines
                .iter()
                .flat_map(|l| l.samples.iter())
                .filter(|b| !b.refined)
                .map(|b| (bits(b.s), b.eta_abs))
                .collect();
            let diffs: Vec<Real> = x
                .report
                .lines
                .iter()
                .flat_map(|l| l.samples.iter())
                .filter(|b| !b.refined)
                .filter_map(|b| index.get(&bits(b.s)).map(|v| (v - b.eta_abs).abs()))
                .collect();
            Some((diffs.len(), max(&mut diffs.iter().copied())))
        }
        (Document::Zeros(x), Document::Zeros(y)) => {
            let (zx, zy) = (&x.report.zeros, &y.report.zeros);
            if zx.len() != zy.len() {
                return Some((0, None));
            }
            Some((
                zx.len(),
                max(&mut zx.iter().zip(zy).map(|(p, q)| (p.t - q.t).abs())),
            ))
        }
        _ => None,
    }
}

/// Summaries of each input plus a comparison of every later input against
/// the first one of the same kind.
pub fn merge(inputs: &[(String, Document)], tol: Real) -> ReportDoc {
    let summaries = inputs
        .iter()
        .map(|(source, d)| InputSummary {
            source: source.clone(),
            command: d.command().to_string(),
            items: d.items(),
            violations: d.violation_count(),
            numerical_failures: d.numerical_failures(),
        })
        .collect();

    let mut comparisons = Vec::new();
    for (j, (source, doc)) in inputs.iter().enumerate() {
        let Some((other, first)) = inputs[..j]
            .iter()
            .find(|(_, d)| d.command() == doc.command())
        else {
            continue;
        };
        let Some((matched, max_abs_diff)) = difference(first, doc) else {
            continue;
        };
        let agree = matched > 0 && max_abs_diff.is_some_and(|d| d <= tol);
        comparisons.push(Comparison {
            source: source.clone(),
            other: other.clone(),
            matched,
            max_abs_diff,
            agree,
        });
    }

    let violations: Vec<BoundSample> = inputs.iter().flat_map(|(_, d)| d.violations()).collect();
    let disagreements = comparisons.iter().filter(|c| !c.agree).count();
    ReportDoc {
        tol,
        inputs: summaries,
        violation_count: inputs.iter().map(|(_, d)| d.violation_count()).sum(),
        numerical_failures: inputs
            .iter()
            .map(|(_, d)| d.numerical_failures())
            .sum::<usize>()
            + disagreements,
        comparisons,
        violations,
    }
}
