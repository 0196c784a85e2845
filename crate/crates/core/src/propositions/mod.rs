//! Executable forms of the elementary lemmas the lower-bound argument rests on.
//!
//! Each check returns the quantities it compares so callers can report
//! margins, not only a verdict. [`suite`] drives them with seeded random
//! inputs.

pub mod suite;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Complex, Real};

/// Absolute slack `1e-12 * (1 + magnitude)` for equality checks in binary64.
pub fn slack(magnitude: Real) -> Real {
    1e-12 * (1.0 + magnitude.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReverseTriangle {
    /// `|z1 + z2|`
    pub lhs: Real,
    /// `||z1| - |z2||`
    pub rhs: Real,
    pub holds: bool,
}

/// `|z1 + z2| >= ||z1| - |z2||`.
pub fn reverse_triangle_check(z1: Complex, z2: Complex) -> ReverseTriangle {
    let lhs = (z1 + z2).norm();
    let rhs = (z1.norm() - z2.norm()).abs();
    let holds = lhs >= rhs - slack(z1.norm() + z2.norm());
    ReverseTriangle { lhs, rhs, holds }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseParams {
    /// semi-major length
    pub a: Real,
    /// semi-minor length
    pub b: Real,
    pub t: Real,
}

impl EllipseParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.a >= self.b && self.a.is_finite() && self.t.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "ellipse needs a >= b > 0, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

/// `(a cos t, b sin t)`.
pub fn ellipse_point(p: EllipseParams) -> Result<(Real, Real)> {
    p.validate()?;
    Ok((p.a * p.t.cos(), p.b * p.t.sin()))
}

/// The parameter maximising `x_t + y_t` on the ellipse, with maximum `√(a² + b²)`.
pub fn ellipse_sum_argmax(a: Real, b: Real) -> Real {
    (b / a).atan()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdditiveModulus {
    /// `√(u² + v²)`
    pub modulus: Real,
    /// `u + v`
    pub sum: Real,
    /// `u v = 0` and `u + v >= 0`
    pub equal: bool,
}

/// The modulus of `(u, v)` equals `u + v` exactly when one coordinate
/// vanishes and the sum is non-negative.
pub fn additive_modulus_check(u: Real, v: Real) -> AdditiveModulus {
    let modulus = u.hypot(v);
    let sum = u + v;
    let tol = slack(u.abs().max(v.abs()));
    let one_vanishes = u.abs().min(v.abs()) <= tol;
    let equal = one_vanishes && sum >= -tol;
    AdditiveModulus {
        modulus,
        sum,
        equal,
    }
}

/// `r cos t + r sin t = a cos t + b sin(t + φ)` with `a = r + δ`,
/// `b = √(r² + δ²)`, `φ = -atan(δ/r)`.
///
/// The orderings asserted are the ones on the parameters: `δ >= 0` gives
/// `r <= b <= a` and `δ <= 0` gives `a <= r <= b`. An ordering that places
/// the circle modulus below `max(v_t)` follows from neither and is not checked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleDecomposition {
    pub r: Real,
    pub delta: Real,
    pub a: Real,
    pub b: Real,
    pub phi: Real,
}

pub fn circle_decomposition(r: Real, delta: Real) -> Result<CircleDecomposition> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    if !(delta.abs() <= r) {
        return Err(Error::Domain(format!(
            "|delta| = {} exceeds r = {r}",
            delta.abs()
        )));
    }
    Ok(CircleDecomposition {
        r,
        delta,
        a: r + delta,
        b: r.hypot(delta),
        phi: -(delta / r).atan(),
    })
}

impl CircleDecomposition {
    /// `u_t = a cos t`
    pub fn first(&self, t: Real) -> Real {
        self.a * t.cos()
    }

    /// `v_t = b sin(t + φ)`
    pub fn second(&self, t: Real) -> Real {
        self.b * (t + self.phi).sin()
    }

    pub fn circle_sum(&self, t: Real) -> Real {
        self.r * (t.cos() + t.sin())
    }

    /// `max_t |r cos t + r sin t - u_t - v_t|` over `points` equally spaced t in [0, 2π).
    pub fn reconstruction_error(&self, points: usize) -> Real {
        let h = std::f64::consts::TAU / points.max(1) as Real;
        (0..points.max(1))
            .map(|j| {
                let t = j as Real * h;
                (self.circle_sum(t) - self.first(t) - self.second(t)).abs()
            })
            .fold(0.0, Real::max)
    }

    /// The parameter orderings for the sign of δ.
    pub fn orderings_hold(&self) -> bool {
        let eps = slack(self.r);
        if self.delta >= 0.0 {
            self.r <= self.b + eps && self.b <= self.a + eps
        } else {
            self.a <= self.r + eps && self.r <= self.b + eps
        }
    }

    /// The first component carries most of the variance when `a >= b`.
    pub fn first_leads(&self) -> bool {
        self.a >= self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    /// `Σ_{n=m}^{N} (-1)^(n+1) a_n`, with half of `a_{N+1}` added for the bracket midpoint
    pub tail: Real,
    /// `a_m`
    pub bound: Real,
    pub holds: bool,
    /// Last index summed.
    pub last_index: u64,
}

/// Indices checked for positivity and monotonicity.
pub const MONOTONE_SPOT_CHECK: u64 = 10_000;

const MAX_TAIL_TERMS: u64 = 200_000_000;

/// Tail of an alternating series against its first term.
///
/// `sequence(n)` must be positive, non-increasing and vanishing for `n >= m`;
/// the first [`MONOTONE_SPOT_CHECK`] indices are verified. Summation runs
/// until `a_N < term_slack`.
pub fn alt_tail_bound<F>(sequence: F, m: u64, term_slack: Real) -> Result<TailBound>
where
    F: Fn(u64) -> Real,
{
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if !(term_slack > 0.0) {
        return Err(Error::InvalidInput("term slack must be positive".into()));
    }
    let mut prev = sequence(m);
    if !(prev > 0.0 && prev.is_finite()) {
        return Err(Error::Contract {
            index: m,
            reason: format!("a_m = {prev} is not positive"),
        });
    }
    for n in m + 1..m + MONOTONE_SPOT_CHECK {
        let a = sequence(n);
        if !(a > 0.0) {
            return Err(Error::Contract {
                index: n,
                reason: format!("a_n = {a} is not positive"),
            });
        }
        if a > prev {
            return Err(Error::Contract {
                index: n,
                reason: format!("sequence increases: {a} > {prev}"),
            });
        }
        prev = a;
    }

    let bound = sequence(m);
    let sign_of = |n: u64| if n % 2 == 1 { 1.0 } else { -1.0 };
    let mut tail = 0.0;
    let mut n = m;
    loop {
        let a = sequence(n);
        tail += sign_of(n) * a;
        if a < term_slack || n - m >= MAX_TAIL_TERMS {
            break;
        }
        n += 1;
    }
    // midpoint of the bracket [S^N, S^{N+1}]
    tail += 0.5 * sign_of(n + 1) * sequence(n + 1);
    let holds = tail.abs() <= bound + slack(bound);
    Ok(TailBound {
        tail,
        bound,
        holds,
        last_index: n,
    })
}
