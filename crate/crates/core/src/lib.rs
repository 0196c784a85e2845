//! Dirichlet eta evaluation and lower-bound machinery for the critical strip.
//!
//! The crate is organised bottom-up:
//!
//! - [`eta`]: three independent evaluation engines for η(s) on Re(s) > 0,
//!   the conversion factor `1 - 2^(1-s)` and ζ(s) recovered from η(s).
//! - [`propositions`]: small executable lemmas (reverse triangle inequality,
//!   ellipse and circle decompositions, alternating tail bounds) plus
//!   seeded randomized suites over them.
//! - [`decomposition`]: the tail vector T(s), its rotations, the objective
//!   `w = Re + Im` and the split into a leading two-term component and the
//!   remainder.
//! - [`scanner`]: line/grid scans of |η| against the floor `|1 - √2/2^α|`,
//!   critical-line zero refinement and the zero-geometry angle.
//!
//! All computation is in [`Real`] (binary64).

// `!(x > 0.0)` style guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod decomposition;
pub mod error;
pub mod eta;
pub mod minimize;
pub mod point;
pub mod propositions;
pub mod quadrature;
pub mod scanner;

pub use decomposition::{Leading, TailDecomposition};
pub use error::{Error, Result};
pub use eta::{Engine, EvalResult, Evaluator, Method};
pub use point::ComplexPoint;
pub use scanner::{BoundSample, GridReport, LineScanReport, ScanConfig, ZeroRecord};

/// Working precision for every numeric routine in the crate.
pub type Real = f64;

/// Complex value in working precision.
pub type Complex = num_complex::Complex<Real>;
