//! Multiplication accounting.
//!
//! Only real-valued scalar multiplications are charged. One complex-by-complex
//! product counts as 4 units, a real-by-complex product as 2, a real-by-real
//! product as 1. Additions, negations, conjugations and multiplication by `i`
//! are free.

use std::sync::atomic::{AtomicU64, Ordering};

/// Units charged for one complex-by-complex scalar product.
pub const COMPLEX_MULT: u64 = 4;
/// Units charged for one real-by-complex scalar product.
pub const REAL_COMPLEX_MULT: u64 = 2;

/// Monotone tally of real scalar multiplications.
#[derive(Debug, Default)]
pub struct MultCounter {
    total: AtomicU64,
}

impl MultCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn charge(&self, units: u64) {
        self.total.fetch_add(units, Ordering::Relaxed);
    }

    #[inline]
    pub fn total(&self) -> u64 {
        self.total.load(Ordering::Relaxed)
    }
}
