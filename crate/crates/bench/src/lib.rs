//! Shared inputs for the criterion benchmarks.

use std::sync::Arc;

use deephole_core::{Field, GrsCode};

/// The `[n, k]` code over GF(p^h) evaluated at the first `n` field elements.
pub fn code(p: u32, h: u32, k: usize, n: usize) -> GrsCode {
    let field: Arc<Field> = Field::new(p, h, None).expect("valid field");
    GrsCode::first_n(field, k, n).expect("valid code")
}
