use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Complex, Real};

/// A point `s = alpha + i beta` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub alpha: Real,
    pub beta: Real,
}

impl ComplexPoint {
    pub const fn new(alpha: Real, beta: Real) -> Self {
        Self { alpha, beta }
    }

    pub const fn real(alpha: Real) -> Self {
        Self { alpha, beta: 0.0 }
    }

    /// The point `1/2 + i t` on the critical line.
    pub const fn critical(t: Real) -> Self {
        Self {
            alpha: 0.5,
            beta: t,
        }
    }

    pub fn conj(self) -> Self {
        Self {
            alpha: self.alpha,
            beta: -self.beta,
        }
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.alpha, self.beta)
    }

    pub fn abs(self) -> Real {
        self.alpha.hypot(self.beta)
    }

    /// Series operations need `alpha > 0` (and finite coordinates).
    pub fn require_series_domain(self) -> Result<Self> {
        if !(self.alpha.is_finite() && self.beta.is_finite()) {
            return Err(Error::Domain(format!("non-finite point {self}")));
        }
        if self.alpha <= 0.0 {
            return Err(Error::Domain(format!(
                "series needs Re(s) > 0, got Re(s) = {}",
                self.alpha
            )));
        }
        Ok(self)
    }
}

impl From<Complex> for ComplexPoint {
    fn from(z: Complex) -> Self {
        Self::new(z.re, z.im)
    }
}

impl fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.beta.is_sign_negative() {
            write!(f, "{}-{}i", self.alpha, -self.beta)
        } else {
            write!(f, "{}+{}i", self.alpha, self.beta)
        }
    }
}
