//! Direct head plus Euler's transformation of the alternating tail.
//!
//! With `a_k = (h + 1 + k)^(-s)` the tail after `h` terms is
//! `(-1)^h Σ_k (-1)^k a_k = (-1)^h Σ_j (-1)^j Δ^j a_0 / 2^(j+1)`.
//! The forward differences are built one anti-diagonal at a time so each
//! new term costs O(j).
//!
//! For a tail whose phase advances by `ω ≈ β / h` per index the transformed
//! terms shrink roughly like `sin(ω/2)^j`, so the head grows with |β|.

use super::{rounding_estimate, signed_term, EvalResult, Method};
use crate::error::{Error, Result};
use crate::point::ComplexPoint;
use crate::{Complex, Real};

/// Safety factor applied to the last Euler correction.
pub const LAST_CORRECTION_SAFETY: Real = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerOptions {
    /// Minimum number of directly summed terms.
    pub head: usize,
    /// The head is at least `head_per_beta * |β|`.
    pub head_per_beta: Real,
    /// Cap on the number of transformed terms.
    pub max_terms: usize,
}

impl Default for EulerOptions {
    fn default() -> Self {
        Self {
            head: 32,
            head_per_beta: 2.0,
            max_terms: 400,
        }
    }
}

impl EulerOptions {
    pub fn head_for(&self, s: ComplexPoint) -> usize {
        let by_beta = (self.head_per_beta * s.beta.abs()).ceil();
        self.head.max(by_beta as usize).max(1)
    }
}

/// η(s) within `tol` using the default [`EulerOptions`].
pub fn eta_euler(s: ComplexPoint, tol: Real) -> Result<EvalResult> {
    eta_euler_with(s, tol, &EulerOptions::default())
}

pub fn eta_euler_with(s: ComplexPoint, tol: Real, opts: &EulerOptions) -> Result<EvalResult> {
    s.require_series_domain()?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let head = opts.head_for(s);

    let mut head_sum = Complex::new(0.0, 0.0);
    let mut sq = 0.0;
    for n in 1..=head {
        let (t, e) = signed_term(n, s);
        head_sum += t;
        sq += e * e;
    }

    let tail_sign = if head.is_multiple_of(2) { 1.0 } else { -1.0 };
    // diag[i] = Δ^i a_{j-i} after step j
    let mut diag: Vec<Complex> = Vec::with_capacity(64);
    let mut tail = Complex::new(0.0, 0.0);
    let mut weight = 0.5;
    let mut prev_small = false;
    let mut tail_scale = 0.0;

    for j in 0..opts.max_terms {
        let n = head + 1 + j;
        let (t, e) = signed_term(n, s);
        // undo the alternating sign: a_j itself
        let a_j = if n % 2 == 1 { t } else { -t };
        if j == 0 {
            tail_scale = e;
        }

        let mut carry_old = a_j;
        for d in diag.iter_mut() {
            // new Δ^i = new Δ^(i-1) - old Δ^(i-1)
            let old = *d;
            *d = carry_old;
            carry_old -= old;
        }
        diag.push(carry_old);
        let delta_j = diag[j];

        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let correction = delta_j * (sign * weight);
        tail += correction;
        weight *= 0.5;

        let value = head_sum + tail * tail_sign;
        let rounding = rounding_estimate(sq, value.norm())
            + rounding_estimate(0.0, tail_scale * (j as Real + 1.0));
        let est = LAST_CORRECTION_SAFETY * correction.norm() + rounding;
        let small = est <= tol;
        if small && prev_small {
            return Ok(EvalResult::new(value, est, Method::Euler, head + j + 1));
        }
        prev_small = small;
    }

    Err(Error::NonConvergence {
        method: "euler",
        tol,
        terms: head + opts.max_terms,
    })
}
