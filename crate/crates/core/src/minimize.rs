//! Derivative-free one-dimensional minimisation.

use crate::Real;

const INV_PHI: Real = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: Real,
    pub value: Real,
    pub evaluations: usize,
}

/// Golden-section search for a minimum of `f` on `[a, b]`, stopping once the
/// bracket is narrower than `resolution`. Returns the best point evaluated.
pub fn golden_section<F>(mut f: F, a: Real, b: Real, resolution: Real) -> Minimum
where
    F: FnMut(Real) -> Real,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut evaluations = 2;

    while hi - lo > resolution && evaluations < 500 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        evaluations += 1;
    }

    if f1 <= f2 {
        Minimum {
            x: x1,
            value: f1,
            evaluations,
        }
    } else {
        Minimum {
            x: x2,
            value: f2,
            evaluations,
        }
    }
}

/// Vertex of the parabola through three points, if it is a proper minimum.
pub fn parabola_vertex(p: [(Real, Real); 3]) -> Option<Real> {
    let [(x0, y0), (x1, y1), (x2, y2)] = p;
    let curvature = (y2 - y1) / (x2 - x1) - (y1 - y0) / (x1 - x0);
    let denom = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
    if !(curvature > 0.0) || denom == 0.0 {
        return None;
    }
    let num = (x1 - x0).powi(2) * (y1 - y2) - (x1 - x2).powi(2) * (y1 - y0);
    let v = x1 - 0.5 * num / denom;
    v.is_finite().then_some(v)
}

/// Refine a minimum of `f` near `x` by successive parabolic steps on `g(x) = f(x)^2`.
///
/// `|η|` has a V-shaped minimum at a zero, but `|η|^2` is locally quadratic,
/// which lets a parabola land far inside the golden-section resolution.
pub fn polish_squared<F>(mut f: F, start: Minimum, half_width: Real, steps: usize) -> Minimum
where
    F: FnMut(Real) -> Real,
{
    let mut best = start;
    let mut h = half_width;
    for _ in 0..steps {
        if !(h > 0.0) {
            break;
        }
        let left = f(best.x - h);
        let right = f(best.x + h);
        best.evaluations += 2;
        let sq = |v: Real| v * v;
        let Some(v) = parabola_vertex([
            (best.x - h, sq(left)),
            (best.x, sq(best.value)),
            (best.x + h, sq(right)),
        ]) else {
            break;
        };
        if (v - best.x).abs() > h {
            break;
        }
        let fv = f(v);
        best.evaluations += 1;
        if fv < best.value {
            h = (v - best.x).abs().max(h * 1e-3);
            best.x = v;
            best.value = fv;
        } else {
            break;
        }
    }
    best
}
