//! Read-only table of `ln n` for small indices.
//!
//! The table is built once (lazily, or explicitly through
//! [`LnTable::install`] before parallel sections) and never mutated.

use std::sync::OnceLock;

use crate::Real;

pub const DEFAULT_CAPACITY: usize = 1 << 16;
pub const MAX_CAPACITY: usize = 1_000_000;

static GLOBAL: OnceLock<LnTable> = OnceLock::new();

#[derive(Debug, Clone)]
pub struct LnTable {
    // values[n] = ln n, values[0] unused
    values: Vec<Real>,
}

impl LnTable {
    pub fn with_capacity(capacity: usize) -> Self {
        let capacity = capacity.clamp(1, MAX_CAPACITY);
        let mut values = Vec::with_capacity(capacity + 1);
        values.push(Real::NEG_INFINITY);
        values.extend((1..=capacity).map(|n| (n as Real).ln()));
        Self { values }
    }

    pub fn capacity(&self) -> usize {
        self.values.len() - 1
    }

    #[inline]
    pub fn ln(&self, n: usize) -> Real {
        match self.values.get(n) {
            Some(&v) => v,
            None => (n as Real).ln(),
        }
    }

    /// Installs the process-wide table. Returns `false` if one already exists.
    pub fn install(capacity: usize) -> bool {
        GLOBAL.set(Self::with_capacity(capacity)).is_ok()
    }

    pub fn global() -> &'static LnTable {
        GLOBAL.get_or_init(|| Self::with_capacity(DEFAULT_CAPACITY))
    }
}

/// `ln n` through the global table.
#[inline]
pub fn ln_index(n: usize) -> Real {
    LnTable::global().ln(n)
}
