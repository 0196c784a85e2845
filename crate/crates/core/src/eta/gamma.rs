//! `ln |Γ(α + iβ)|`, used only to size the alternating-series acceleration.

use crate::{Complex, Real};

const HALF_LN_TWO_PI: Real = 0.918_938_533_204_672_8;
const SHIFT_TO: Real = 15.0;

/// Natural log of the modulus of the gamma function for `alpha > 0`.
pub fn ln_gamma_abs(alpha: Real, beta: Real) -> Real {
    debug_assert!(alpha > 0.0);
    let mut z = Complex::new(alpha, beta);
    let mut shift = 0.0;
    // ln Γ(z) = ln Γ(z + m) - Σ ln(z + k)
    while z.re < SHIFT_TO {
        shift += z.norm().ln();
        z.re += 1.0;
    }
    let ln_z = z.ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    // Stirling series through the z^-7 term.
    let series =
        inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0))));
    let ln_gamma = (z - 0.5) * ln_z - z + HALF_LN_TWO_PI + series;
    ln_gamma.re - shift
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn real_axis_values() {
        assert!(ln_gamma_abs(1.0, 0.0).abs() < 1e-13);
        assert!(ln_gamma_abs(2.0, 0.0).abs() < 1e-13);
        assert!((ln_gamma_abs(0.5, 0.0) - 0.5 * PI.ln()).abs() < 1e-13);
        // Γ(5) = 24
        assert!((ln_gamma_abs(5.0, 0.0) - 24.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn critical_line_closed_form() {
        // |Γ(1/2 + it)|² = π / cosh(πt)
        for t in [0.3, 1.0, 14.1, 50.0, 300.0] {
            let exact = 0.5 * (PI.ln() - (PI * t).cosh().ln());
            let exact = if t > 100.0 {
                0.5 * (PI.ln() - PI * t + std::f64::consts::LN_2)
            } else {
                exact
            };
            let got = ln_gamma_abs(0.5, t);
            assert!(
                (got - exact).abs() < 1e-10 * (1.0 + exact.abs()),
                "t={t}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn unit_line_closed_form() {
        // |Γ(1 + it)|² = πt / sinh(πt)
        for t in [0.5, 2.0, 10.0] {
            let exact = 0.5 * ((PI * t).ln() - (PI * t).sinh().ln());
            assert!((ln_gamma_abs(1.0, t) - exact).abs() < 1e-11);
        }
    }
}
