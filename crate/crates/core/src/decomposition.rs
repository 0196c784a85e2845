//! Tail vector of the conjugate eta series and its two-component split.
//!
//! With `η̄(s) = Σ (-1)^(n+1) e^(iβ ln n) / n^α`:
//!
//! - tail `T(s) = η̄(s) - 1` (terms from n = 2),
//! - rotated tail `v(θ) = e^(iθ) T(s)`,
//! - objective `w(θ) = Re v + Im v = Re[(1 - i) T e^(iθ)]`,
//! - leading component `w1(θ) = -(√2/2^α) cos(β ln 2 + θ - π/4)`, the n = 2 term,
//! - remainder `w2 = w - w1`, which carries the terms from n = 3 (`tail3`).
//!
//! Both components are first-order trigonometric polynomials in θ, so over one
//! period: `∫ w1 w2 = 2π Re[u2 conj(tail3)]`, `∫ w1² = 2π/4^α` and
//! `∫ w2² = 2π |tail3|²`, where `u2 = -e^(iβ ln 2)/2^α`.

use std::f64::consts::{FRAC_PI_4, LN_2, SQRT_2, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::Evaluator;
use crate::point::ComplexPoint;
use crate::quadrature::{trapezoid_periodic, DEFAULT_PANELS};
use crate::{Complex, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Leading {
    W1,
    W2,
}

impl Leading {
    pub fn as_str(self) -> &'static str {
        match self {
            Leading::W1 => "w1",
            Leading::W2 => "w2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailDecomposition {
    pub s: ComplexPoint,
    pub theta: Real,
    /// Σ_{n>=2} of the conjugate series
    pub tail: Complex,
    /// Σ_{n>=3} of the conjugate series
    pub tail3: Complex,
    pub w: Real,
    pub w1: Real,
    pub w2: Real,
    pub variance1: Real,
    pub variance2: Real,
    pub inner_product: Real,
    pub leading: Leading,
}

/// `u2 = -e^(iβ ln 2) / 2^α`, the n = 2 term of the conjugate series.
pub fn second_term(s: ComplexPoint) -> Complex {
    -Complex::from_polar((-s.alpha * LN_2).exp(), s.beta * LN_2)
}

/// `T(s) = conj(η(s)) - 1`.
pub fn tail_vector(ev: &Evaluator, s: ComplexPoint, tol: Real) -> Result<Complex> {
    let eta = ev.eval(s, tol)?;
    Ok(eta.value.conj() - 1.0)
}

pub fn rotate(tail: Complex, theta: Real) -> Complex {
    Complex::from_polar(1.0, theta) * tail
}

/// `e^(iθ) T(s)`.
pub fn rotated_tail(ev: &Evaluator, s: ComplexPoint, theta: Real, tol: Real) -> Result<Complex> {
    Ok(rotate(tail_vector(ev, s, tol)?, theta))
}

/// `Re + Im` of the rotated tail.
pub fn w_from_tail(tail: Complex, theta: Real) -> Real {
    let v = rotate(tail, theta);
    v.re + v.im
}

pub fn w_objective(ev: &Evaluator, s: ComplexPoint, theta: Real, tol: Real) -> Result<Real> {
    Ok(w_from_tail(tail_vector(ev, s, tol)?, theta))
}

/// The rotation that maximises `w`: `w(θ) = √2 |T| cos(arg T + θ - π/4)`.
pub fn maximizing_theta(tail: Complex) -> Real {
    (FRAC_PI_4 - tail.arg()).rem_euclid(TAU)
}

fn w1_unchecked(s: ComplexPoint, theta: Real) -> Real {
    -(SQRT_2 * (-s.alpha * LN_2).exp()) * (s.beta * LN_2 + theta - FRAC_PI_4).cos()
}

/// `-(√2/2^α) cos(β ln 2 + θ - π/4)`.
pub fn w1_component(s: ComplexPoint, theta: Real) -> Result<Real> {
    s.require_series_domain()?;
    Ok(w1_unchecked(s, theta))
}

/// `w - w1`, never summed directly.
pub fn w2_component(ev: &Evaluator, s: ComplexPoint, theta: Real, tol: Real) -> Result<Real> {
    let w = w_objective(ev, s, theta, tol)?;
    Ok(w - w1_unchecked(s, theta))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerProduct {
    pub quadrature: Real,
    pub closed_form: Real,
}

/// `-(2π/2^α) Re[e^(-iβ ln 2) tail3]`.
pub fn inner_product_closed_form(s: ComplexPoint, tail3: Complex) -> Real {
    let rot = Complex::from_polar(1.0, -s.beta * LN_2);
    -TAU * (-s.alpha * LN_2).exp() * (rot * tail3).re
}

/// `∫_start^{start+2π} w1(θ) w2(θ) dθ` by the periodic trapezoid rule.
pub fn inner_product_quadrature(
    s: ComplexPoint,
    tail: Complex,
    start: Real,
    panels: usize,
) -> Real {
    trapezoid_periodic(
        |theta| {
            let w1 = w1_unchecked(s, theta);
            w1 * (w_from_tail(tail, theta) - w1)
        },
        start,
        panels,
    )
}

pub fn inner_product_w1_w2(ev: &Evaluator, s: ComplexPoint, tol: Real) -> Result<InnerProduct> {
    inner_product_check(s, tail_vector(ev, s, tol)?, tol)
}

/// Quadrature and closed form from an evaluated tail; they must agree to
/// `max(tol, 1e-13 (1 + |closed form|))`.
pub fn inner_product_check(s: ComplexPoint, tail: Complex, tol: Real) -> Result<InnerProduct> {
    let tail3 = tail - second_term(s);
    let quadrature = inner_product_quadrature(s, tail, 0.0, DEFAULT_PANELS);
    let closed_form = inner_product_closed_form(s, tail3);
    if (quadrature - closed_form).abs() > tol.max(1e-13 * (1.0 + closed_form.abs())) {
        return Err(Error::QuadratureMismatch {
            quadrature,
            closed_form,
        });
    }
    Ok(InnerProduct {
        quadrature,
        closed_form,
    })
}

/// `∫ w1² dθ = 2π / 4^α`.
pub fn variance_first(alpha: Real) -> Real {
    TAU * (-2.0 * alpha * LN_2).exp()
}

/// `∫ w2² dθ = 2π |tail3|²`.
pub fn variance_second(tail3: Complex) -> Real {
    TAU * tail3.norm_sqr()
}

/// Every field at a given rotation.
pub fn decompose(
    ev: &Evaluator,
    s: ComplexPoint,
    theta: Real,
    tol: Real,
) -> Result<TailDecomposition> {
    let tail = tail_vector(ev, s, tol)?;
    Ok(decompose_tail(s, tail, theta))
}

/// Decomposition from an already evaluated tail.
pub fn decompose_tail(s: ComplexPoint, tail: Complex, theta: Real) -> TailDecomposition {
    let tail3 = tail - second_term(s);
    let w = w_from_tail(tail, theta);
    let w1 = w1_unchecked(s, theta);
    let variance1 = variance_first(s.alpha);
    let variance2 = variance_second(tail3);
    // ties go to W1
    let leading = if variance1 >= variance2 {
        Leading::W1
    } else {
        Leading::W2
    };
    TailDecomposition {
        s,
        theta,
        tail,
        tail3,
        w,
        w1,
        w2: w - w1,
        variance1,
        variance2,
        inner_product: inner_product_closed_form(s, tail3),
        leading,
    }
}

/// Decomposition at the rotation maximising `w`, with the leading component
/// chosen by variance over one θ-period.
pub fn classify_leading(ev: &Evaluator, s: ComplexPoint, tol: Real) -> Result<TailDecomposition> {
    let tail = tail_vector(ev, s, tol)?;
    Ok(decompose_tail(s, tail, maximizing_theta(tail)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxStar {
    /// `√2 |η(α) - 1|`
    pub value: Real,
    /// `√2 / 2^α`
    pub bound: Real,
    pub holds: bool,
}

/// The objective at β = 0, θ = π/4 against the first-term bound.
pub fn max_star_w(ev: &Evaluator, alpha: Real, tol: Real) -> Result<MaxStar> {
    let eta = ev.eval(ComplexPoint::real(alpha), tol)?;
    let value = SQRT_2 * (eta.value.re - 1.0).abs();
    let bound = SQRT_2 * (-alpha * LN_2).exp();
    Ok(MaxStar {
        value,
        bound,
        holds: value <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TOL: Real = 1e-12;
    // Frozen reference values (30-digit evaluation of the alternating series).
    const ETA_2: Real = 0.822_467_033_424_113_2;
    const ETA_3: Real = 0.901_542_677_369_695_7;
    const ETA_4: Real = 0.947_032_829_497_245_9;

    fn ev() -> Evaluator {
        Evaluator::default()
    }

    #[test]
    fn tail_at_real_points() {
        let t1 = tail_vector(&ev(), ComplexPoint::real(1.0), TOL).unwrap();
        assert!((t1.re - (LN_2 - 1.0)).abs() < 1e-12 && t1.im.abs() < 1e-15);
        let t2 = tail_vector(&ev(), ComplexPoint::real(2.0), TOL).unwrap();
        assert!((t2.re - (-0.177_532_966_575_886_8)).abs() < 1e-12);
    }

    #[test]
    fn rotation_examples() {
        let s = ComplexPoint::real(1.0);
        let v0 = rotated_tail(&ev(), s, 0.0, TOL).unwrap();
        assert!((v0.re - (LN_2 - 1.0)).abs() < 1e-12);
        let vpi = rotated_tail(&ev(), s, PI, TOL).unwrap();
        assert!((vpi.re - (1.0 - LN_2)).abs() < 1e-12 && vpi.im.abs() < 1e-12);
        let s = ComplexPoint::new(0.5, 5.0);
        let t = tail_vector(&ev(), s, TOL).unwrap();
        let v = rotated_tail(&ev(), s, PI / 3.0, TOL).unwrap();
        assert!((v.norm() - t.norm()).abs() < 1e-12);
    }

    #[test]
    fn objective_values() {
        let w = w_objective(&ev(), ComplexPoint::real(1.0), FRAC_PI_4, TOL).unwrap();
        assert!((w - (-0.433_955_418_904_547_9)).abs() < 1e-11, "{w}");
        let w2 = w2_component(&ev(), ComplexPoint::real(1.0), FRAC_PI_4, TOL).unwrap();
        assert!((w2 - 0.273_151_362_281_999_7).abs() < 1e-11, "{w2}");
    }

    #[test]
    fn w1_examples() {
        let w = w1_component(ComplexPoint::real(1.0), FRAC_PI_4).unwrap();
        assert!((w + SQRT_2 / 2.0).abs() < 1e-15);
        let w = w1_component(ComplexPoint::real(0.5), FRAC_PI_4).unwrap();
        assert!((w + 1.0).abs() < 1e-15);
        let w = w1_component(ComplexPoint::new(1.0, TAU / LN_2), FRAC_PI_4).unwrap();
        assert!((w + SQRT_2 / 2.0).abs() < 1e-14);
        assert!(w1_component(ComplexPoint::real(0.0), 0.0).is_err());
    }

    #[test]
    fn w2_vanishes_for_large_alpha() {
        // T = conj(η) - 1 with η ≈ 1, so only absolute rounding of η is left
        let w2 = w2_component(&ev(), ComplexPoint::new(60.0, 3.0), 0.4, 1e-14).unwrap();
        assert!(w2.abs() < 2e-14, "{w2}");
    }

    #[test]
    fn inner_product_reference_points() {
        let ip = inner_product_w1_w2(&ev(), ComplexPoint::real(1.0), 1e-9).unwrap();
        let expected = -PI * (LN_2 - 0.5);
        assert!((ip.closed_form - expected).abs() < 1e-9);
        assert!((ip.quadrature - expected).abs() < 1e-9);

        let ip = inner_product_w1_w2(&ev(), ComplexPoint::real(3.0), 1e-10).unwrap();
        let r3 = ETA_3 - 1.0 + 0.125;
        assert!(ip.quadrature < 0.0);
        assert!((ip.quadrature - (-TAU / 8.0 * r3)).abs() < 1e-10);
    }

    #[test]
    fn inner_product_ignores_theta_origin() {
        let s = ComplexPoint::new(0.8, 12.0);
        let tail = tail_vector(&ev(), s, TOL).unwrap();
        let a = inner_product_quadrature(s, tail, 0.0, 256);
        let b = inner_product_quadrature(s, tail, 1.234, 256);
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn classification_examples() {
        let d = classify_leading(&ev(), ComplexPoint::real(2.0), TOL).unwrap();
        assert_eq!(d.leading, Leading::W1);
        assert!((d.tail3.re - (ETA_2 - 0.75)).abs() < 1e-12);
        assert!((variance_first(0.5) - PI).abs() < 1e-15);
        assert_eq!(d.w, d.w1 + d.w2);
        // θ maximising w gives w = √2 |T|
        assert!((d.w - SQRT_2 * d.tail.norm()).abs() < 1e-12);
    }

    #[test]
    fn max_star_examples() {
        let m = max_star_w(&ev(), 1.0, TOL).unwrap();
        assert!((m.value - 0.433_955_418_904_547_9).abs() < 1e-11);
        assert!((m.bound - SQRT_2 / 2.0).abs() < 1e-15 && m.holds);
        let m = max_star_w(&ev(), 0.5, TOL).unwrap();
        assert!((m.bound - 1.0).abs() < 1e-15 && m.holds);
        let m = max_star_w(&ev(), 4.0, TOL).unwrap();
        assert!((m.value - SQRT_2 * (1.0 - ETA_4)).abs() < 1e-11);
        assert!((m.bound - SQRT_2 / 16.0).abs() < 1e-15 && m.holds);
    }
}
