use std::cell::RefCell;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{finite_positive, grid, tail_inequality_check, with_pool, BoundSample, ScanConfig};
use crate::error::{Error, Result};
use crate::minimize::{golden_section, polish_squared};
use crate::point::ComplexPoint;
use crate::Real;

const POLISH_STEPS: usize = 4;

/// A grid or refinement point whose evaluation was refused.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub s: ComplexPoint,
    pub numerical: bool,
    pub message: String,
}

impl SampleFailure {
    fn new(s: ComplexPoint, e: &Error) -> Self {
        Self {
            s,
            numerical: e.is_numerical(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineScanReport {
    pub alpha: Real,
    pub beta_min: Real,
    pub beta_max: Real,
    pub step: Real,
    pub tol: Real,
    /// Grid samples and refined minima, ordered by β.
    pub samples: Vec<BoundSample>,
    pub min_eta_abs: Option<Real>,
    pub argmin_beta: Option<Real>,
    /// Samples with `margin < -tol`.
    pub violations: Vec<BoundSample>,
    pub failures: Vec<SampleFailure>,
}

impl LineScanReport {
    pub fn min_margin(&self) -> Option<&BoundSample> {
        self.samples
            .iter()
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
    }

    pub fn has_numerical_failure(&self) -> bool {
        self.failures.iter().any(|f| f.numerical)
    }
}

/// Sample the bound on `α + iβ` for `β = beta_min + j*step`, then refine
/// each interior local minimum of `|η|` to `config.resolution`.
pub fn scan_line(
    alpha: Real,
    beta_min: Real,
    beta_max: Real,
    step: Real,
    config: &ScanConfig,
) -> Result<LineScanReport> {
    finite_positive("alpha", alpha)?;
    finite_positive("tol", config.tol)?;
    let betas = grid(beta_min, beta_max, step)?;
    let ev = config.evaluator;
    let tol = config.tol;

    let (grid_results, refined) = with_pool(config.workers, || {
        let grid_results: Vec<Result<BoundSample, SampleFailure>> = betas
            .par_iter()
            .map(|&beta| {
                let s = ComplexPoint::new(alpha, beta);
                tail_inequality_check(&ev, s, tol).map_err(|e| SampleFailure::new(s, &e))
            })
            .collect();

        let basins: Vec<usize> = if config.refine {
            (1..grid_results.len().saturating_sub(1))
                .filter(
                    |&j| match (&grid_results[j - 1], &grid_results[j], &grid_results[j + 1]) {
                        (Ok(l), Ok(m), Ok(r)) => m.eta_abs <= l.eta_abs && m.eta_abs < r.eta_abs,
                        _ => false,
                    },
                )
                .collect()
        } else {
            Vec::new()
        };

        let refined: Vec<Result<BoundSample, SampleFailure>> = basins
            .par_iter()
            .map(|&j| {
                let coarse = grid_results[j].as_ref().expect("basin centre evaluated");
                refine_minimum(alpha, betas[j - 1], betas[j + 1], coarse, config)
            })
            .collect();
        (grid_results, refined)
    })?;

    let mut samples = Vec::with_capacity(grid_results.len() + refined.len());
    let mut failures = Vec::new();
    for r in grid_results.into_iter().chain(refined) {
        match r {
            Ok(b) => samples.push(b),
            Err(f) => failures.push(f),
        }
    }
    // stable: a refined point never precedes a grid point at the same β
    samples.sort_by(|a, b| a.s.beta.total_cmp(&b.s.beta));

    let best = samples
        .iter()
        .min_by(|a, b| a.eta_abs.total_cmp(&b.eta_abs));
    let violations = samples
        .iter()
        .filter(|b| b.margin < -tol)
        .copied()
        .collect();
    Ok(LineScanReport {
        alpha,
        beta_min,
        beta_max,
        step,
        tol,
        min_eta_abs: best.map(|b| b.eta_abs),
        argmin_beta: best.map(|b| b.s.beta),
        samples,
        violations,
        failures,
    })
}

fn refine_minimum(
    alpha: Real,
    lo: Real,
    hi: Real,
    coarse: &BoundSample,
    config: &ScanConfig,
) -> Result<BoundSample, SampleFailure> {
    let ev = config.evaluator;
    let first_error: RefCell<Option<SampleFailure>> = RefCell::new(None);
    let f = |beta: Real| {
        let s = ComplexPoint::new(alpha, beta);
        match ev.eval(s, config.tol) {
            Ok(r) => r.value.norm(),
            Err(e) => {
                first_error
                    .borrow_mut()
                    .get_or_insert_with(|| SampleFailure::new(s, &e));
                Real::INFINITY
            }
        }
    };
    let golden = golden_section(f, lo, hi, config.resolution);
    let polished = polish_squared(f, golden, config.resolution, POLISH_STEPS);
    if let Some(failure) = first_error.into_inner() {
        return Err(failure);
    }
    // never report a refined value worse than the grid point it started from
    let beta = if polished.value <= coarse.eta_abs {
        polished.x
    } else {
        coarse.s.beta
    };
    let s = ComplexPoint::new(alpha, beta);
    let mut sample =
        tail_inequality_check(&ev, s, config.tol).map_err(|e| SampleFailure::new(s, &e))?;
    sample.refined = true;
    Ok(sample)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub alpha_min: Real,
    pub alpha_max: Real,
    pub alpha_step: Real,
    pub lines: Vec<LineScanReport>,
    pub min_eta_abs: Option<Real>,
    pub argmin: Option<ComplexPoint>,
    pub min_margin: Option<Real>,
    pub argmin_margin: Option<ComplexPoint>,
    pub violation_count: usize,
    pub failure_count: usize,
}

/// [`scan_line`] for each `α = alpha_min + i*alpha_step` up to `alpha_max`.
pub fn scan_grid(
    alpha_min: Real,
    alpha_max: Real,
    alpha_step: Real,
    beta_min: Real,
    beta_max: Real,
    beta_step: Real,
    config: &ScanConfig,
) -> Result<GridReport> {
    finite_positive("alpha", alpha_min)?;
    grid(beta_min, beta_max, beta_step)?;
    let lines = grid(alpha_min, alpha_max, alpha_step)?
        .into_iter()
        .map(|alpha| scan_line(alpha, beta_min, beta_max, beta_step, config))
        .collect::<Result<Vec<_>>>()?;

    let all = || lines.iter().flat_map(|l| l.samples.iter());
    let best = all().min_by(|a, b| a.eta_abs.total_cmp(&b.eta_abs));
    let worst_margin = all().min_by(|a, b| a.margin.total_cmp(&b.margin));
    Ok(GridReport {
        alpha_min,
        alpha_max,
        alpha_step,
        min_eta_abs: best.map(|b| b.eta_abs),
        argmin: best.map(|b| b.s),
        min_margin: worst_margin.map(|b| b.margin),
        argmin_margin: worst_margin.map(|b| b.s),
        violation_count: lines.iter().map(|l| l.violations.len()).sum(),
        failure_count: lines.iter().map(|l| l.failures.len()).sum(),
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(workers: usize) -> ScanConfig {
        ScanConfig {
            workers,
            ..ScanConfig::default()
        }
    }

    #[test]
    fn single_point_line() {
        let r = scan_line(1.0, 0.0, 0.0, 0.01, &config(1)).unwrap();
        assert_eq!(r.samples.len(), 1);
        assert!((r.samples[0].margin - 0.400_253_961_746_492_8).abs() < 1e-9);
        assert!(r.violations.is_empty());
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(scan_line(1.0, 1.0, 0.0, 0.01, &config(1)).is_err());
        assert!(scan_line(0.0, 0.0, 1.0, 0.01, &config(1)).is_err());
        assert!(scan_line(1.0, 0.0, 1.0, -0.1, &config(1)).is_err());
    }

    #[test]
    fn refines_near_first_zero() {
        let r = scan_line(0.5, 14.0, 14.3, 0.01, &config(2)).unwrap();
        assert!(r.min_eta_abs.unwrap() < 1e-6, "{:?}", r.min_eta_abs);
        assert!((r.argmin_beta.unwrap() - 14.134_725_141_734_694).abs() < 1e-6);
        assert!(r.samples.iter().any(|b| b.refined));
        assert!(r.samples.windows(2).all(|w| w[0].s.beta <= w[1].s.beta));
        // the floor is zero on the critical line, so zeros are not violations
        assert!(r.violations.is_empty());
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let a = scan_line(0.75, 0.0, 20.0, 0.05, &config(1)).unwrap();
        let b = scan_line(0.75, 0.0, 20.0, 0.05, &config(4)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn grid_collects_lines() {
        let r = scan_grid(0.6, 1.0, 0.2, 0.0, 5.0, 0.5, &config(2)).unwrap();
        assert_eq!(r.lines.len(), 3);
        assert_eq!(r.failure_count, 0);
        assert!(r.min_margin.unwrap() > 0.0);
    }
}
