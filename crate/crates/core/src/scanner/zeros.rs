use std::cell::RefCell;
use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{finite_positive, grid, with_pool};
use crate::decomposition::second_term;
use crate::error::{Error, Result};
use crate::eta::{Engine, Evaluator};
use crate::minimize::{golden_section, polish_squared};
use crate::point::ComplexPoint;
use crate::{Complex, Real};

/// Minima of `|η(1/2 + it)|` on the critical line, refined and cross-checked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFinder {
    /// Engine used while minimising.
    pub evaluator: Evaluator,
    /// Per-evaluation tolerance.
    pub eval_tol: Real,
    pub grid_step: Real,
    pub resolution: Real,
    /// Largest allowed `|η_euler - η_accel|` at an accepted zero.
    pub agreement: Real,
    pub workers: usize,
}

impl Default for ZeroFinder {
    fn default() -> Self {
        Self {
            evaluator: Evaluator::new(Engine::Accel),
            eval_tol: 1e-10,
            grid_step: 0.01,
            resolution: 1e-7,
            agreement: 1e-9,
            workers: super::default_workers(),
        }
    }
}

impl ZeroFinder {
    pub fn with_engine(engine: Engine) -> Self {
        Self {
            evaluator: Evaluator::new(engine),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub t: Real,
    /// `|η(1/2 + it)|` at the refined ordinate.
    pub residual: Real,
    pub engine_gap: Real,
    pub bracket_lo: Real,
    pub bracket_hi: Real,
}

/// Angle between `R = conj(η) - 1 - u2` and `u2` at a zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroGeometry {
    pub t: Real,
    pub u2: Complex,
    pub remainder: Complex,
    /// `(arg R - arg u2) mod 2π`, in `[0, 2π)`.
    pub angle: Real,
    pub in_claimed_range: bool,
    /// `|u2 + R + 1|`, which vanishes at an exact zero.
    pub closure: Real,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroScanReport {
    pub t_min: Real,
    pub t_max: Real,
    pub tol: Real,
    pub zeros: Vec<ZeroRecord>,
    pub geometry: Vec<ZeroGeometry>,
    /// Grid minima that did not refine to a zero.
    pub rejected_minima: usize,
}

fn critical_abs(ev: &Evaluator, tol: Real, t: Real, err: &RefCell<Option<Error>>) -> Real {
    match ev.eval(ComplexPoint::critical(t), tol) {
        Ok(r) => r.value.norm(),
        Err(e) => {
            err.borrow_mut().get_or_insert(e);
            Real::INFINITY
        }
    }
}

/// Refine the minimum of `|η(1/2+it)|` on `[lo, hi]` and test it as a zero.
fn refine(finder: &ZeroFinder, lo: Real, hi: Real, tol: Real) -> Result<ZeroRecord> {
    let err = RefCell::new(None);
    let f = |t: Real| critical_abs(&finder.evaluator, finder.eval_tol, t, &err);
    let golden = golden_section(f, lo, hi, finder.resolution);
    let best = polish_squared(f, golden, finder.resolution, 6);
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    if !(best.value < tol) {
        return Err(Error::NoZeroFound {
            lo,
            hi,
            min_abs: best.value,
            tol,
        });
    }
    let s = ComplexPoint::critical(best.x);
    let euler = Evaluator::new(Engine::Euler).eval(s, finder.eval_tol)?;
    let accel = Evaluator::new(Engine::Accel).eval(s, finder.eval_tol)?;
    let gap = (euler.value - accel.value).norm();
    if gap > finder.agreement {
        return Err(Error::CrossCheck {
            alpha: s.alpha,
            beta: s.beta,
            gap,
            allowed: finder.agreement,
        });
    }
    Ok(ZeroRecord {
        t: best.x,
        residual: best.value,
        engine_gap: gap,
        bracket_lo: lo,
        bracket_hi: hi,
    })
}

fn local_minima(values: &[Real]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&j| values[j] <= values[j - 1] && values[j] < values[j + 1])
        .collect()
}

fn sample_line(finder: &ZeroFinder, ts: &[Real]) -> Result<Vec<Real>> {
    ts.par_iter()
        .map(|&t| {
            finder
                .evaluator
                .eval(ComplexPoint::critical(t), finder.eval_tol)
                .map(|r| r.value.norm())
        })
        .collect()
}

/// A single zero of `η(1/2 + it)` with `t` in `[t_lo, t_hi]`, accepted when
/// its residual is below `tol` and the Euler and accelerated engines agree.
pub fn locate_zero(finder: &ZeroFinder, t_lo: Real, t_hi: Real, tol: Real) -> Result<ZeroRecord> {
    finite_positive("t_lo", t_lo)?;
    finite_positive("tol", tol)?;
    if !(t_hi > t_lo) || !t_hi.is_finite() {
        return Err(Error::InvalidInput(format!("empty bracket {t_lo}:{t_hi}")));
    }
    let step = finder.grid_step.min((t_hi - t_lo) / 16.0);
    let mut ts = grid(t_lo, t_hi, step)?;
    if *ts.last().unwrap() < t_hi {
        ts.push(t_hi);
    }
    with_pool(finder.workers, || {
        let values = sample_line(finder, &ts)?;
        let mut candidates: Vec<(usize, usize)> = local_minima(&values)
            .into_iter()
            .map(|j| (j - 1, j + 1))
            .collect();
        if candidates.is_empty() {
            // monotone on the grid: the minimum sits in an end cell
            let n = ts.len() - 1;
            candidates.push(if values[0] <= values[n] {
                (0, 1)
            } else {
                (n - 1, n)
            });
        }
        candidates.sort_by(|a, b| values[a.0 + 1].total_cmp(&values[b.0 + 1]));
        let mut closest = Real::INFINITY;
        for (a, b) in candidates {
            match refine(finder, ts[a], ts[b], tol) {
                Ok(z) if (t_lo..=t_hi).contains(&z.t) => return Ok(z),
                Ok(_) => {}
                Err(Error::NoZeroFound { min_abs, .. }) => closest = closest.min(min_abs),
                Err(e) => return Err(e),
            }
        }
        Err(Error::NoZeroFound {
            lo: t_lo,
            hi: t_hi,
            min_abs: closest,
            tol,
        })
    })?
}

/// All zeros with `t` in `[t_lo, t_hi]` resolved by `finder.grid_step`.
pub fn find_zeros(
    finder: &ZeroFinder,
    t_lo: Real,
    t_hi: Real,
    tol: Real,
) -> Result<ZeroScanReport> {
    if !(t_lo >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "t range must start at 0 or above, got {t_lo}"
        )));
    }
    finite_positive("tol", tol)?;
    let ts = grid(t_lo, t_hi, finder.grid_step)?;
    let (records, rejected) = with_pool(finder.workers, || -> Result<_> {
        let values = sample_line(finder, &ts)?;
        let outcomes: Vec<Result<ZeroRecord>> = local_minima(&values)
            .par_iter()
            .map(|&j| refine(finder, ts[j - 1], ts[j + 1], tol))
            .collect();
        let mut records = Vec::new();
        let mut rejected = 0;
        for o in outcomes {
            match o {
                Ok(z) => records.push(z),
                Err(Error::NoZeroFound { .. }) => rejected += 1,
                Err(e) => return Err(e),
            }
        }
        Ok((records, rejected))
    })??;

    let mut zeros: Vec<ZeroRecord> = Vec::with_capacity(records.len());
    for z in records {
        // neighbouring basins can refine to the same zero
        match zeros.last() {
            Some(prev) if (z.t - prev.t).abs() < 10.0 * finder.resolution => {}
            _ => zeros.push(z),
        }
    }
    let geometry = zeros
        .iter()
        .map(|z| zero_geometry(&finder.evaluator, z.t, finder.eval_tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroScanReport {
        t_min: t_lo,
        t_max: t_hi,
        tol,
        zeros,
        geometry,
        rejected_minima: rejected,
    })
}

const DEGENERATE: Real = 1e-14;

/// Relative angle of the remainder and second term at `s = 1/2 + it`.
pub fn zero_geometry(ev: &Evaluator, t: Real, tol: Real) -> Result<ZeroGeometry> {
    let s = ComplexPoint::critical(t);
    let eta_bar = ev.eval(s, tol)?.value.conj();
    let u2 = second_term(s);
    let remainder = eta_bar - 1.0 - u2;
    if u2.norm() < DEGENERATE || remainder.norm() < DEGENERATE {
        return Err(Error::Degenerate(format!(
            "angle undefined at t = {t}: |u2| = {:e}, |R| = {:e}",
            u2.norm(),
            remainder.norm()
        )));
    }
    let mut angle = (remainder.arg() - u2.arg()).rem_euclid(TAU);
    if angle >= TAU {
        angle -= TAU;
    }
    Ok(ZeroGeometry {
        t,
        u2,
        remainder,
        angle,
        in_claimed_range: (PI / 2.0..=1.5 * PI).contains(&angle),
        closure: (u2 + remainder + 1.0).norm(),
    })
}
