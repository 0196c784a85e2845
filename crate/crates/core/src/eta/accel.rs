//! Chebyshev-weighted acceleration of the alternating series.
//!
//! With `d_k = n Σ_{i=0}^{k} (n+i-1)! 4^i / ((n-i)! (2i)!)`,
//!
//! ```text
//! η(s) ≈ (1/d_n) Σ_{k=0}^{n-1} (-1)^k (d_n - d_k) / (k+1)^s
//! ```
//!
//! Writing `(k+1)^-s = ∫_0^1 x^k w(x) dx` with
//! `w(x) = (-ln x)^(s-1) / Γ(s)`, the truncation error is bounded by
//! `2 (3+√8)^-n ∫|w| = 2 (3+√8)^-n Γ(α) / |Γ(s)|`. That bound is the
//! error estimate, plus a rounding term.

use super::gamma::ln_gamma_abs;
use super::{rounding_estimate, signed_term, EvalResult, Method};
use crate::error::{Error, Result};
use crate::point::ComplexPoint;
use crate::{Complex, Real};

pub const MAX_STAGES: usize = 50_000;

/// ln(3 + √8)
pub const LN_RATE: Real = 1.762_747_174_039_086;

const RESCALE_ABOVE: Real = 1e250;
const RESCALE_BY: Real = 1e-250;

/// `(d_n - d_k) / d_n` for `k = 0..n`.
pub fn chebyshev_weights(n: usize) -> Vec<Real> {
    // t_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), t_0 = 1,
    // t_{i+1} / t_i = 2 (n+i)(n-i) / ((2i+1)(i+1))
    let mut t = Vec::with_capacity(n + 1);
    let mut cur: Real = 1.0;
    t.push(cur);
    let nf = n as Real;
    for i in 0..n {
        let fi = i as Real;
        cur *= 2.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (fi + 1.0));
        if cur > RESCALE_ABOVE {
            t.iter_mut().for_each(|v| *v *= RESCALE_BY);
            cur *= RESCALE_BY;
        }
        t.push(cur);
    }
    let mut suffix = vec![0.0; n + 2];
    for i in (0..=n).rev() {
        suffix[i] = suffix[i + 1] + t[i];
    }
    let total = suffix[0];
    (0..n).map(|k| suffix[k + 1] / total).collect()
}

/// `ln` of the truncation bound `2 (3+√8)^-n Γ(α)/|Γ(s)|`.
pub fn ln_truncation_bound(s: ComplexPoint, n_stages: usize) -> Real {
    std::f64::consts::LN_2 - n_stages as Real * LN_RATE + ln_gamma_abs(s.alpha, 0.0)
        - ln_gamma_abs(s.alpha, s.beta)
}

/// Stages needed for a truncation bound of `tol / 2`.
pub fn stages_for_tolerance(s: ComplexPoint, tol: Real) -> usize {
    let prefactor = ln_truncation_bound(s, 0);
    let needed = (prefactor - (0.5 * tol).ln()) / LN_RATE;
    if needed.is_finite() {
        (needed.ceil().max(1.0) as usize).min(MAX_STAGES + 1)
    } else {
        MAX_STAGES + 1
    }
}

pub fn eta_accel(s: ComplexPoint, n_stages: usize) -> Result<EvalResult> {
    s.require_series_domain()?;
    if n_stages == 0 || n_stages > MAX_STAGES {
        return Err(Error::InvalidInput(format!(
            "n_stages must be in 1..={MAX_STAGES}, got {n_stages}"
        )));
    }
    let weights = chebyshev_weights(n_stages);
    let mut sum = Complex::new(0.0, 0.0);
    let mut sq = 0.0;
    for (k, &c) in weights.iter().enumerate() {
        let (t, e) = signed_term(k + 1, s);
        sum += t * c;
        let scaled = e * c;
        sq += scaled * scaled;
    }
    let truncation = ln_truncation_bound(s, n_stages).exp();
    let est = truncation + rounding_estimate(sq, sum.norm());
    Ok(EvalResult::new(sum, est, Method::Accel, n_stages))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn rate_constant() {
        assert!((LN_RATE - (3.0 + 8.0_f64.sqrt()).ln()).abs() < 1e-15);
    }

    #[test]
    fn weights_small_case_by_hand() {
        // n = 2: t = [1, 8, 8]; d = [1, 9, 17]
        let w = chebyshev_weights(2);
        assert!((w[0] - 16.0 / 17.0).abs() < 1e-15);
        assert!((w[1] - 8.0 / 17.0).abs() < 1e-15);
    }

    #[test]
    fn weights_large_n_are_finite_and_decreasing() {
        let w = chebyshev_weights(2000);
        assert!(w.iter().all(|v| v.is_finite() && (0.0..=1.0).contains(v)));
        assert!(w.windows(2).all(|p| p[0] >= p[1]));
        assert!((w[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ln2_with_thirty_stages() {
        let r = eta_accel(ComplexPoint::real(1.0), 30).unwrap();
        assert!((r.value.re - LN_2).abs() < 1e-12);
        assert!(r.abs_error_estimate < 1e-12);
    }

    #[test]
    fn estimate_decays_geometrically() {
        let s = ComplexPoint::new(0.7, 5.0);
        let e10 = ln_truncation_bound(s, 10);
        let e20 = ln_truncation_bound(s, 20);
        assert!(((e10 - e20) - 10.0 * LN_RATE).abs() < 1e-12);
    }

    #[test]
    fn stage_count_for_ln2() {
        let n = stages_for_tolerance(ComplexPoint::real(1.0), 1e-12);
        assert!((10..=64).contains(&n), "{n}");
    }

    #[test]
    fn rejects_zero_stages() {
        assert!(eta_accel(ComplexPoint::real(1.0), 0).is_err());
    }
}
