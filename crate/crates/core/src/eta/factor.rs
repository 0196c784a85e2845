//! The factor `1 - 2^(1-s)` linking η and ζ, its zeros on Re(s) = 1, and ζ(s)
//! recovered as `η(s) / (1 - 2^(1-s))`.

use std::f64::consts::{LN_2, PI};

use super::{EvalResult, Evaluator};
use crate::error::{Error, Result};
use crate::point::ComplexPoint;
use crate::{Complex, Real};

/// Below this modulus of the factor, division is refused.
pub const FACTOR_EXCLUSION: Real = 1e-6;

/// `1 - 2^(1-s)` on the whole plane.
pub fn conversion_factor(s: ComplexPoint) -> Complex {
    let exponent = (Complex::new(1.0, 0.0) - s.to_complex()) * LN_2;
    Complex::new(1.0, 0.0) - exponent.exp()
}

/// `s_k = 1 + 2kπi / ln 2`, the zeros of the factor. `k = 0` is the ζ pole.
pub fn factor_zero(k: i64) -> Result<ComplexPoint> {
    if k == 0 {
        return Err(Error::Domain(
            "k = 0 is the pole s = 1, not a factor zero".into(),
        ));
    }
    Ok(ComplexPoint::new(1.0, 2.0 * k as Real * PI / LN_2))
}

/// ζ(s) from η(s); refuses points where the factor is within the exclusion radius.
pub fn zeta_from_eta(evaluator: &Evaluator, s: ComplexPoint, tol: Real) -> Result<EvalResult> {
    s.require_series_domain()?;
    let factor = conversion_factor(s);
    let factor_abs = factor.norm();
    if factor_abs < FACTOR_EXCLUSION {
        // the pole sits at s = 1; every other small factor is near some s_k
        let k = (s.beta * LN_2 / (2.0 * PI)).round();
        return if k == 0.0 {
            Err(Error::Singular { factor_abs })
        } else {
            Err(Error::IllConditioned { factor_abs })
        };
    }
    let eta = evaluator.eval(s, tol * factor_abs)?;
    let value = eta.value / factor;
    // relative rounding in the factor is about eps / |factor|
    let est = eta.abs_error_estimate / factor_abs + value.norm() * Real::EPSILON * 4.0 / factor_abs;
    Ok(EvalResult {
        value,
        abs_error_estimate: est,
        ..eta
    })
}
