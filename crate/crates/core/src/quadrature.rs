//! Composite trapezoid rule.
//!
//! On a full period the rule is exact for trigonometric polynomials of
//! degree below the panel count, which is what the θ-integrals need.

use crate::Real;

pub const DEFAULT_PANELS: usize = 4096;

/// `∫_a^b f` with `panels` equal panels.
pub fn trapezoid<F>(f: F, a: Real, b: Real, panels: usize) -> Real
where
    F: Fn(Real) -> Real,
{
    let panels = panels.max(1);
    let h = (b - a) / panels as Real;
    let interior: Real = (1..panels).map(|j| f(a + j as Real * h)).sum();
    h * (0.5 * (f(a) + f(b)) + interior)
}

/// `∫_start^{start+2π} f` for a 2π-periodic `f`; endpoints are merged.
pub fn trapezoid_periodic<F>(f: F, start: Real, panels: usize) -> Real
where
    F: Fn(Real) -> Real,
{
    let panels = panels.max(1);
    let h = std::f64::consts::TAU / panels as Real;
    h * (0..panels).map(|j| f(start + j as Real * h)).sum::<Real>()
}
