//! Evaluation of η(s) = Σ (-1)^(n+1) n^(-s) on Re(s) > 0.
//!
//! Three engines that share nothing but the term formula:
//!
//! - [`partial`]: plain partial sums. At β = 0 the alternating tail bound
//!   makes the error estimate rigorous.
//! - [`euler`]: a direct head followed by Euler's transformation of the
//!   remaining alternating tail.
//! - [`accel`]: the Chebyshev-weighted scheme with geometric convergence
//!   `(3 + √8)^-n`.
//!
//! [`Evaluator`] dispatches between them; [`Engine::Checked`] runs the two
//! accelerated engines and refuses to answer when they disagree.

pub mod accel;
pub mod euler;
pub mod factor;
pub mod gamma;
pub mod ln_cache;
pub mod partial;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::ComplexPoint;
use crate::{Complex, Real};

pub use accel::{eta_accel, stages_for_tolerance};
pub use euler::{eta_euler, EulerOptions};
pub use factor::{conversion_factor, factor_zero, zeta_from_eta, FACTOR_EXCLUSION};
pub use partial::{eta_partial, eta_partial_sum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Partial,
    Euler,
    Accel,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Partial => "partial",
            Method::Euler => "euler",
            Method::Accel => "accel",
        }
    }
}

/// A value of η together with how it was obtained and how far off it may be.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex,
    pub abs_error_estimate: Real,
    pub method: Method,
    pub terms_used: usize,
}

impl EvalResult {
    pub(crate) fn new(
        value: Complex,
        abs_error_estimate: Real,
        method: Method,
        terms_used: usize,
    ) -> Self {
        debug_assert!(abs_error_estimate.is_finite() && abs_error_estimate >= 0.0);
        debug_assert!(terms_used >= 1);
        Self {
            value,
            abs_error_estimate,
            method,
            terms_used,
        }
    }

    pub fn conj(self) -> Self {
        Self {
            value: self.value.conj(),
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Partial,
    Euler,
    Accel,
    /// Accel and Euler side by side; disagreement is an error.
    #[default]
    Checked,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Partial => "partial",
            Engine::Euler => "euler",
            Engine::Accel => "accel",
            Engine::Checked => "checked",
        }
    }
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partial" => Ok(Engine::Partial),
            "euler" => Ok(Engine::Euler),
            "accel" => Ok(Engine::Accel),
            "checked" => Ok(Engine::Checked),
            other => Err(Error::InvalidInput(format!("unknown engine `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluator {
    pub engine: Engine,
    pub euler: EulerOptions,
    /// Upper limit on the number of terms the partial engine may use.
    pub partial_cap: usize,
    /// Upper limit on the number of stages of the accelerated engine.
    pub max_stages: usize,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self {
            engine: Engine::Checked,
            euler: EulerOptions::default(),
            partial_cap: 10_000_000,
            max_stages: accel::MAX_STAGES,
        }
    }
}

impl Evaluator {
    pub fn new(engine: Engine) -> Self {
        Self {
            engine,
            ..Self::default()
        }
    }

    /// η(s) with `abs_error_estimate <= tol`.
    pub fn eval(&self, s: ComplexPoint, tol: Real) -> Result<EvalResult> {
        s.require_series_domain()?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        match self.engine {
            Engine::Partial => partial::eta_partial_to_tolerance(s, tol, self.partial_cap),
            Engine::Euler => euler::eta_euler_with(s, tol, &self.euler),
            Engine::Accel => self.accel(s, tol),
            Engine::Checked => self.checked(s, tol),
        }
    }

    fn accel(&self, s: ComplexPoint, tol: Real) -> Result<EvalResult> {
        let stages = stages_for_tolerance(s, tol);
        if stages > self.max_stages {
            return Err(Error::NonConvergence {
                method: "accel",
                tol,
                terms: self.max_stages,
            });
        }
        let r = eta_accel(s, stages)?;
        if r.abs_error_estimate > tol {
            return Err(Error::NonConvergence {
                method: "accel",
                tol,
                terms: stages,
            });
        }
        Ok(r)
    }

    fn checked(&self, s: ComplexPoint, tol: Real) -> Result<EvalResult> {
        let half = 0.5 * tol;
        let a = self.accel(s, half)?;
        let e = euler::eta_euler_with(s, half, &self.euler)?;
        let gap = (a.value - e.value).norm();
        let allowed = a.abs_error_estimate + e.abs_error_estimate;
        if gap > allowed {
            return Err(Error::CrossCheck {
                alpha: s.alpha,
                beta: s.beta,
                gap,
                allowed,
            });
        }
        Ok(EvalResult {
            abs_error_estimate: a.abs_error_estimate.max(gap),
            ..a
        })
    }

    /// η̄(s) = Σ (-1)^(n+1) e^(+iβ ln n) / n^α, evaluated as η at the conjugate point.
    pub fn conjugate(&self, s: ComplexPoint, tol: Real) -> Result<Complex> {
        Ok(self.eval(s.conj(), tol)?.value)
    }
}

/// η(s) with the default (checked) evaluator.
pub fn eta_eval(s: ComplexPoint, tol: Real) -> Result<EvalResult> {
    Evaluator::default().eval(s, tol)
}

/// η̄(s) with the default evaluator.
pub fn eta_conjugate(s: ComplexPoint, tol: Real) -> Result<Complex> {
    Evaluator::default().conjugate(s, tol)
}

/// The n-th term `(-1)^(n+1) n^(-s)` and a rounding-error scale for it.
#[inline]
pub(crate) fn signed_term(n: usize, s: ComplexPoint) -> (Complex, Real) {
    let ln_n = ln_cache::ln_index(n);
    let modulus = (-s.alpha * ln_n).exp();
    let phase = -s.beta * ln_n;
    let z = Complex::from_polar(modulus, phase);
    // relative error of the phase is about eps * |β ln n|
    let err_scale = modulus * (1.0 + phase.abs());
    if n % 2 == 1 {
        (z, err_scale)
    } else {
        (-z, err_scale)
    }
}

/// Rounding error model shared by the engines: root-sum-square of the
/// per-term error scales, times a safety factor.
pub(crate) const ROUNDING_SAFETY: Real = 4.0;

#[inline]
pub(crate) fn rounding_estimate(sum_sq_scales: Real, magnitude: Real) -> Real {
    ROUNDING_SAFETY * Real::EPSILON * (sum_sq_scales.sqrt() + magnitude)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn eval_at_one_is_ln2_for_every_engine() {
        for engine in [Engine::Euler, Engine::Accel, Engine::Checked] {
            let r = Evaluator::new(engine)
                .eval(ComplexPoint::real(1.0), 1e-12)
                .unwrap();
            assert!((r.value.re - LN_2).abs() < 1e-12, "{engine:?}");
            assert!(r.value.im.abs() < 1e-15);
            assert!(r.abs_error_estimate <= 1e-12);
        }
    }

    #[test]
    fn eval_at_two() {
        let r = eta_eval(ComplexPoint::real(2.0), 1e-12).unwrap();
        assert!((r.value.re - 0.822_467_033_424_113_2).abs() < 1e-12);
    }

    #[test]
    fn conjugate_point_gives_conjugate_value() {
        let s = ComplexPoint::new(0.5, 10.0);
        let a = eta_eval(s, 1e-12).unwrap().value;
        let b = eta_conjugate(s, 1e-12).unwrap();
        assert!((a.conj() - b).norm() < 2e-12);
        let s = ComplexPoint::new(0.6, 30.0);
        let a = eta_eval(s, 1e-12).unwrap().value;
        let b = eta_conjugate(s, 1e-12).unwrap();
        assert!((a.norm() - b.norm()).abs() < 2e-12);
        let real = eta_conjugate(ComplexPoint::real(1.0), 1e-12).unwrap();
        assert!((real.re - LN_2).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let ev = Evaluator::default();
        assert!(matches!(
            ev.eval(ComplexPoint::new(0.0, 1.0), 1e-9),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ev.eval(ComplexPoint::new(1.0, 1.0), 0.0),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            ev.eval(ComplexPoint::new(1.0, 1.0), Real::NAN),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn partial_engine_reports_unreachable_tolerance() {
        let ev = Evaluator {
            partial_cap: 100_000,
            ..Evaluator::new(Engine::Partial)
        };
        let err = ev.eval(ComplexPoint::real(0.5), 1e-12).unwrap_err();
        assert!(matches!(
            err,
            Error::NonConvergence {
                method: "partial",
                ..
            }
        ));
        // α = 3 needs only ~2·10^4 terms for 1e-12
        let r = ev.eval(ComplexPoint::real(3.0), 1e-12).unwrap();
        assert!((r.value.re - 0.901_542_677_369_695_7).abs() < 1e-12);
    }

    #[test]
    fn engine_parse() {
        assert_eq!("checked".parse::<Engine>().unwrap(), Engine::Checked);
        assert!("fast".parse::<Engine>().is_err());
    }
}
