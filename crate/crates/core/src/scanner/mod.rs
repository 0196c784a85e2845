//! Empirical scans of |η| against the floor `|1 - √2/2^α|`.
//!
//! The floor is a hypothesis under test. Every sample records both the
//! bound margin and which tail inequality the variance classifier says
//! should apply, and reports whether it held. Nothing here asserts it.

mod line;
mod zeros;

use serde::{Deserialize, Serialize};

use crate::decomposition::{decompose_tail, maximizing_theta, Leading};
use crate::error::{Error, Result};
use crate::eta::Evaluator;
use crate::point::ComplexPoint;
use crate::Real;

pub use line::{scan_grid, scan_line, GridReport, LineScanReport, SampleFailure};
pub use zeros::{
    find_zeros, locate_zero, zero_geometry, ZeroFinder, ZeroGeometry, ZeroRecord, ZeroScanReport,
};

/// `|1 - √2 / 2^α|`.
pub fn bound_floor(alpha: Real) -> Real {
    (1.0 - tail_bound(alpha)).abs()
}

/// `√2 / 2^α`.
pub fn tail_bound(alpha: Real) -> Real {
    (0.5 - alpha).exp2()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSample {
    pub s: ComplexPoint,
    pub eta_abs: Real,
    pub floor_value: Real,
    /// `eta_abs - floor_value`
    pub margin: Real,
    pub tail_abs: Real,
    pub tail_bound: Real,
    /// Leading component by variance.
    pub leading: Leading,
    /// `|T| <= √2/2^α` under W1, `|T| >= √2/2^α` under W2.
    pub tail_inequality_holds: bool,
    /// Scenario by half-strip: W1 for α >= 1/2, W2 below.
    pub alpha_side: Leading,
    pub alpha_side_holds: bool,
    /// Produced by minimum refinement rather than the grid.
    #[serde(default)]
    pub refined: bool,
}

fn scenario_holds(leading: Leading, tail_abs: Real, bound: Real) -> bool {
    match leading {
        Leading::W1 => tail_abs <= bound,
        Leading::W2 => tail_abs >= bound,
    }
}

/// One point: |η|, the floor, the tail and the scenario inequality.
pub fn tail_inequality_check(ev: &Evaluator, s: ComplexPoint, tol: Real) -> Result<BoundSample> {
    let eta = ev.eval(s, tol)?;
    let tail = eta.value.conj() - 1.0;
    let decomposition = decompose_tail(s, tail, maximizing_theta(tail));
    let eta_abs = eta.value.norm();
    let floor_value = bound_floor(s.alpha);
    let tail_abs = tail.norm();
    let bound = tail_bound(s.alpha);
    let alpha_side = if s.alpha >= 0.5 {
        Leading::W1
    } else {
        Leading::W2
    };
    Ok(BoundSample {
        s,
        eta_abs,
        floor_value,
        margin: eta_abs - floor_value,
        tail_abs,
        tail_bound: bound,
        leading: decomposition.leading,
        tail_inequality_holds: scenario_holds(decomposition.leading, tail_abs, bound),
        alpha_side,
        alpha_side_holds: scenario_holds(alpha_side, tail_abs, bound),
        refined: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub evaluator: Evaluator,
    /// Evaluation tolerance; margins below `-tol` are violations.
    pub tol: Real,
    pub workers: usize,
    /// β-resolution of golden-section refinement.
    pub resolution: Real,
    /// Refine local minima of the grid.
    pub refine: bool,
}

pub const DEFAULT_SCAN_TOL: Real = 1e-9;
pub const DEFAULT_RESOLUTION: Real = 1e-6;
pub const DEFAULT_BETA_STEP: Real = 0.01;
pub const DEFAULT_ALPHA_STEP: Real = 0.05;

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            evaluator: Evaluator::default(),
            tol: DEFAULT_SCAN_TOL,
            workers: default_workers(),
            resolution: DEFAULT_RESOLUTION,
            refine: true,
        }
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

pub(crate) fn with_pool<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(job))
}

pub(crate) fn finite_positive(name: &str, v: Real) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

/// Equally spaced points `lo + j*step`, `j = 0..`, up to `hi` (inclusive within rounding).
pub fn grid(lo: Real, hi: Real, step: Real) -> Result<Vec<Real>> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidInput("range bounds must be finite".into()));
    }
    if lo > hi {
        return Err(Error::InvalidInput(format!("empty range {lo}:{hi}")));
    }
    finite_positive("step", step)?;
    let count = ((hi - lo) / step + 1e-9).floor() + 1.0;
    if count > 1e8 {
        return Err(Error::InvalidInput(format!(
            "range {lo}:{hi} with step {step} is too large"
        )));
    }
    Ok((0..count as usize).map(|j| lo + j as Real * step).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, SQRT_2};

    #[test]
    fn floor_values() {
        assert_eq!(bound_floor(0.5), 0.0);
        assert!((bound_floor(1.0) - 0.292_893_218_813_452_5).abs() < 1e-15);
        assert!((bound_floor(0.25) - 0.189_207_115_002_721_1).abs() < 1e-15);
        // branches meet continuously at 1/2
        assert!(bound_floor(0.5 + 1e-9) < 1e-8 && bound_floor(0.5 - 1e-9) < 1e-8);
    }

    #[test]
    fn check_at_one() {
        let b =
            tail_inequality_check(&Evaluator::default(), ComplexPoint::real(1.0), 1e-12).unwrap();
        assert!((b.tail_abs - (1.0 - LN_2)).abs() < 1e-12);
        assert!((b.tail_bound - SQRT_2 / 2.0).abs() < 1e-15);
        assert_eq!(b.margin, b.eta_abs - b.floor_value);
        assert!((b.margin - 0.400_253_961_746_492_8).abs() < 1e-12);
        assert_eq!(b.leading, Leading::W1);
        assert!(b.tail_inequality_holds);
    }

    #[test]
    fn check_at_half() {
        let b =
            tail_inequality_check(&Evaluator::default(), ComplexPoint::real(0.5), 1e-12).unwrap();
        assert!((b.tail_abs - (1.0 - 0.604_898_643_421_630_4)).abs() < 1e-12);
        assert!((b.tail_bound - 1.0).abs() < 1e-15);
        assert_eq!(b.margin, b.eta_abs - b.floor_value);
    }

    #[test]
    fn grid_points() {
        assert_eq!(grid(0.0, 0.0, 0.1).unwrap(), vec![0.0]);
        assert_eq!(grid(0.0, 1.0, 0.25).unwrap().len(), 5);
        assert_eq!(grid(0.0, 200.0, 0.01).unwrap().len(), 20_001);
        assert!(grid(1.0, 0.0, 0.1).is_err());
        assert!(grid(0.0, 1.0, 0.0).is_err());
    }
}
