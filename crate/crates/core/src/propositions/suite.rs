//! Seeded randomized suites over the proposition checks.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    additive_modulus_check, circle_decomposition, ellipse_point, ellipse_sum_argmax,
    reverse_triangle_check, slack, EllipseParams,
};
use crate::{Complex, Real};

/// Grid used for the circle reconstruction identity.
pub const RECONSTRUCTION_GRID: usize = 4096;
/// Partial sums used to bracket the limit of an alternating series.
pub const BRACKET_TERMS: u64 = 4000;
/// Tail indices examined per random sequence.
pub const TAIL_INDICES: u64 = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    /// Largest measured violation-side quantity (suite specific; 0 when not applicable).
    pub max_error: Real,
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &str, cases: usize) -> Self {
        Self {
            name: name.to_string(),
            cases,
            failures: 0,
            max_error: 0.0,
            first_failure: None,
        }
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_in_disk(rng: &mut ChaCha8Rng, radius: Real) -> Complex {
    let r = radius * rng.gen::<Real>().sqrt();
    Complex::from_polar(r, rng.gen_range(0.0..TAU))
}

/// Reverse triangle inequality on random pairs with `|z| <= 1e3`; a tenth of
/// the pairs are anti-parallel (the equality case).
pub fn reverse_triangle_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("reverse_triangle", cases);
    let mut rng = rng(seed, 1);
    for _ in 0..cases {
        let z1 = random_in_disk(&mut rng, 1e3);
        let z2 = if rng.gen_bool(0.1) {
            -z1 * rng.gen_range(0.0..1.0)
        } else {
            random_in_disk(&mut rng, 1e3)
        };
        let c = reverse_triangle_check(z1, z2);
        let scale = 1.0 + z1.norm() + z2.norm();
        let deficit = (c.rhs - c.lhs).max(0.0) / scale;
        report.max_error = report.max_error.max(deficit);
        if !c.holds || deficit > 1e-9 {
            report.fail(|| format!("z1 = {z1}, z2 = {z2}: {} < {}", c.lhs, c.rhs));
        }
    }
    report
}

/// Ellipse modulus `<= a` everywhere, `= a` at t ∈ {0, π}, strictly below
/// elsewhere when `a > b`, and `max(x + y) = √(a² + b²)`.
pub fn ellipse_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("ellipse", cases);
    let mut rng = rng(seed, 2);
    for _ in 0..cases {
        let a: Real = rng.gen_range(1e-3..100.0);
        let b = if rng.gen_bool(0.05) {
            a
        } else {
            a * rng.gen_range(1e-3..=1.0)
        };
        let t: Real = rng.gen_range(0.0..TAU);
        let eps = slack(a);
        let modulus = |t: Real| {
            let (x, y) = ellipse_point(EllipseParams { a, b, t }).expect("a >= b > 0");
            x.hypot(y)
        };

        let m = modulus(t);
        report.max_error = report.max_error.max((m - a).max(0.0));
        if m > a + eps {
            report.fail(|| format!("a = {a}, b = {b}, t = {t}: modulus {m} > a"));
        }
        for t0 in [0.0, PI] {
            if (modulus(t0) - a).abs() > eps {
                report.fail(|| format!("a = {a}, b = {b}: modulus at t = {t0} is not a"));
            }
        }
        let gap = (a * a - b * b) * t.sin().powi(2);
        if gap > 1e-9 * a * a && m >= a {
            report.fail(|| format!("a = {a} > b = {b}, t = {t}: modulus not strictly below a"));
        }
        let ts = ellipse_sum_argmax(a, b);
        let (x, y) = ellipse_point(EllipseParams { a, b, t: ts }).expect("valid");
        if (x + y - a.hypot(b)).abs() > eps {
            report.fail(|| format!("a = {a}, b = {b}: max(x + y) = {} not √(a²+b²)", x + y));
        }
        let (xr, yr) = ellipse_point(EllipseParams { a, b, t }).expect("valid");
        if xr + yr > a.hypot(b) + eps {
            report.fail(|| format!("a = {a}, b = {b}, t = {t}: x + y exceeds √(a²+b²)"));
        }
    }
    report
}

/// `|(u, v)| = u + v` exactly when `u v = 0` and `u + v >= 0`.
pub fn additive_modulus_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("additive_modulus", cases);
    let mut rng = rng(seed, 3);
    for _ in 0..cases {
        let mut u: Real = rng.gen_range(-100.0..100.0);
        let mut v: Real = rng.gen_range(-100.0..100.0);
        match rng.gen_range(0..3) {
            0 => u = 0.0,
            1 => v = 0.0,
            _ => {}
        }
        let c = additive_modulus_check(u, v);
        let numerically_equal = (c.modulus - c.sum).abs() <= slack(u.abs() + v.abs());
        let condition = (u == 0.0 || v == 0.0) && u + v >= 0.0;
        if c.equal != numerically_equal || c.equal != condition {
            report.fail(|| {
                format!(
                    "u = {u}, v = {v}: equal = {}, modulus = {}, sum = {}",
                    c.equal, c.modulus, c.sum
                )
            });
        }
    }
    report
}

/// Reconstruction identity on a 4096-point grid (max error `<= 1e-11 (1 + r)`)
/// and the δ-sign orderings of `a`, `b`, `r`.
pub fn circle_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("circle_decomposition", cases);
    let mut rng = rng(seed, 4);
    for _ in 0..cases {
        let r: Real = rng.gen_range(1e-3..100.0);
        let delta = match rng.gen_range(0..20) {
            0 => 0.0,
            1 => r,
            2 => -r,
            _ => rng.gen_range(-r..=r),
        };
        let c = circle_decomposition(r, delta).expect("|delta| <= r");
        let err = c.reconstruction_error(RECONSTRUCTION_GRID);
        let scaled = err / (1.0 + r);
        report.max_error = report.max_error.max(scaled);
        if scaled > 1e-11 {
            report.fail(|| format!("r = {r}, delta = {delta}: reconstruction error {err:e}"));
        }
        if !c.orderings_hold() {
            report.fail(|| {
                format!(
                    "r = {r}, delta = {delta}: ordering of a = {}, b = {} fails",
                    c.a, c.b
                )
            });
        }
        if (c.first_leads()) != (delta >= 0.0) && delta.abs() > slack(r) {
            report.fail(|| format!("r = {r}, delta = {delta}: leading component mismatch"));
        }
    }
    report
}

#[derive(Debug, Clone, Copy)]
enum Family {
    Power { c: Real, q: Real, p: Real },
    Geometric { c: Real, ratio: Real },
    Rational { c: Real, q: Real },
}

impl Family {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        let c = rng.gen_range(0.1..10.0);
        match rng.gen_range(0..3) {
            0 => Family::Power {
                c,
                q: rng.gen_range(0.0..5.0),
                p: rng.gen_range(0.5..3.0),
            },
            1 => Family::Geometric {
                c,
                ratio: rng.gen_range(0.3..0.99),
            },
            _ => Family::Rational {
                c,
                q: rng.gen_range(0.0..10.0),
            },
        }
    }

    fn term(&self, n: u64) -> Real {
        let nf = n as Real;
        match *self {
            Family::Power { c, q, p } => c * (nf + q).powf(-p),
            Family::Geometric { c, ratio } => c * ratio.powf(nf),
            Family::Rational { c, q } => c / (nf * (nf + q)),
        }
    }
}

/// Alternating partial-sum brackets on random positive decreasing sequences:
/// odd partial sums decrease, even ones increase, and `|S_m| <= a_m` for every
/// `m <= 50`, with the limit bracketed by `[S^N, S^{N+1}]`.
pub fn alternating_tail_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("alternating_tail", cases);
    let mut rng = rng(seed, 5);
    let sign = |n: u64| if n % 2 == 1 { 1.0 } else { -1.0 };
    for _ in 0..cases {
        let fam = Family::random(&mut rng);
        let mut partial = Vec::with_capacity(BRACKET_TERMS as usize + 2);
        partial.push(0.0); // S^0
        let mut s = 0.0;
        for n in 1..=BRACKET_TERMS + 1 {
            s += sign(n) * fam.term(n);
            partial.push(s);
        }
        let n_last = BRACKET_TERMS as usize;
        let limit_mid = 0.5 * (partial[n_last] + partial[n_last + 1]);
        let half_width = 0.5 * fam.term(BRACKET_TERMS + 1);

        for k in 1..TAIL_INDICES as usize {
            let odd = 2 * k + 1;
            let even = 2 * k;
            let eps = slack(fam.term(1));
            if partial[odd] > partial[odd - 2] + eps {
                report.fail(|| format!("{fam:?}: odd partial sums rise at {odd}"));
            }
            if partial[even] < partial[even - 2] - eps {
                report.fail(|| format!("{fam:?}: even partial sums fall at {even}"));
            }
        }
        for m in 1..=TAIL_INDICES {
            let tail = limit_mid - partial[m as usize - 1];
            let bound = fam.term(m);
            let excess = tail.abs() - bound - half_width;
            report.max_error = report.max_error.max(excess.max(0.0));
            if excess > slack(bound) {
                report.fail(|| format!("{fam:?}: |S_{m}| = {} > a_{m} = {bound}", tail.abs()));
            }
        }
    }
    report
}

/// All five suites.
pub fn run_all(seed: u64, cases: usize) -> Vec<SuiteReport> {
    vec![
        reverse_triangle_suite(seed, cases),
        ellipse_suite(seed, cases),
        additive_modulus_suite(seed, cases),
        circle_suite(seed, cases),
        alternating_tail_suite(seed, cases),
    ]
}
