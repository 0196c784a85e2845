//! Benchmark inputs shared by the criterion targets.

use etafloor_core::{ComplexPoint, Real};

/// `count` points on the critical line spread evenly over `(0, t_max]`.
pub fn critical_points(count: usize, t_max: Real) -> Vec<ComplexPoint> {
    (1..=count)
        .map(|j| ComplexPoint::critical(t_max * j as Real / count as Real))
        .collect()
}

/// A few points across the strip at moderate height.
pub fn strip_points() -> Vec<ComplexPoint> {
    vec![
        ComplexPoint::real(1.0),
        ComplexPoint::new(0.5, 14.134_725),
        ComplexPoint::new(0.75, 50.0),
        ComplexPoint::new(0.3, 100.0),
        ComplexPoint::new(1.5, 500.0),
    ]
}
