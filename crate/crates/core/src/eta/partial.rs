//! Direct partial sums of the eta series.

use super::{rounding_estimate, signed_term, EvalResult, Method};
use crate::error::{Error, Result};
use crate::point::ComplexPoint;
use crate::{Complex, Real};

/// `Σ_{n=1}^{n_terms} (-1)^(n+1) n^(-α) e^(-iβ ln n)`, term by term.
pub fn eta_partial_sum(s: ComplexPoint, n_terms: usize) -> Result<Complex> {
    s.require_series_domain()?;
    if n_terms == 0 {
        return Err(Error::InvalidInput("n_terms must be at least 1".into()));
    }
    Ok(sum_terms(s, n_terms).0)
}

fn sum_terms(s: ComplexPoint, n_terms: usize) -> (Complex, Real) {
    let mut sum = Complex::new(0.0, 0.0);
    let mut sq = 0.0;
    for n in 1..=n_terms {
        let (t, e) = signed_term(n, s);
        sum += t;
        sq += e * e;
    }
    (sum, sq)
}

/// Truncation estimate for the first omitted index `n_terms + 1`.
///
/// On the real axis this is the alternating tail bound `a_{N+1}`; off the
/// axis the tail of a slowly rotating alternating sum is still of the order
/// of its first term, widened by the phase drift `|s| / N`.
pub fn truncation_estimate(s: ComplexPoint, n_terms: usize) -> Real {
    let next = (n_terms + 1) as Real;
    let first_omitted = next.powf(-s.alpha);
    if s.beta == 0.0 {
        first_omitted
    } else {
        first_omitted * (1.0 + s.abs() / next)
    }
}

/// Partial sum with its error estimate.
pub fn eta_partial(s: ComplexPoint, n_terms: usize) -> Result<EvalResult> {
    s.require_series_domain()?;
    if n_terms == 0 {
        return Err(Error::InvalidInput("n_terms must be at least 1".into()));
    }
    let (sum, sq) = sum_terms(s, n_terms);
    let err = truncation_estimate(s, n_terms) + rounding_estimate(sq, sum.norm());
    Ok(EvalResult::new(sum, err, Method::Partial, n_terms))
}

/// Smallest partial sum whose truncation estimate is below `tol`.
pub(crate) fn eta_partial_to_tolerance(
    s: ComplexPoint,
    tol: Real,
    cap: usize,
) -> Result<EvalResult> {
    // (N+1)^-α <= tol  =>  N >= tol^(-1/α)
    let guess = tol.powf(-1.0 / s.alpha);
    let unreachable = || Error::NonConvergence {
        method: "partial",
        tol,
        terms: cap,
    };
    if !guess.is_finite() || guess > cap as Real {
        return Err(unreachable());
    }
    let mut n = (guess.ceil() as usize).max(1);
    while truncation_estimate(s, n) > 0.5 * tol {
        n = n.saturating_mul(2);
        if n > cap {
            return Err(unreachable());
        }
    }
    let r = eta_partial(s, n)?;
    if r.abs_error_estimate > tol {
        return Err(unreachable());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term_is_one() {
        let v = eta_partial_sum(ComplexPoint::real(1.0), 1).unwrap();
        assert_eq!(v, Complex::new(1.0, 0.0));
        let v = eta_partial_sum(ComplexPoint::new(0.3, 7.0), 1).unwrap();
        assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_terms_by_hand() {
        let v = eta_partial_sum(ComplexPoint::real(2.0), 2).unwrap();
        assert!((v.re - 0.75).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            eta_partial_sum(ComplexPoint::real(-0.5), 10),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            eta_partial_sum(ComplexPoint::real(1.0), 0),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn real_axis_estimate_is_alternating_bound() {
        let r = eta_partial(ComplexPoint::real(1.0), 1000).unwrap();
        assert!((r.value.re - std::f64::consts::LN_2).abs() <= r.abs_error_estimate);
        assert!((r.abs_error_estimate - 1.0 / 1001.0).abs() < 1e-12);
    }
}
