//! Shared inputs for the benchmark targets. The crate exists for its
//! `benches/` directory; the library surface is these helpers only.

use qschmidt_core::{LaurentPoly, QBinomTable};

/// A dense Laurent polynomial with `len` nonzero coefficients cycling
/// through small magnitudes, anchored at `min_exp`.
pub fn dense_poly(min_exp: i64, len: usize) -> LaurentPoly {
    LaurentPoly::from_coeffs(min_exp, (0..len).map(|j| (j % 9 + 1) as i64))
}

/// A mid-sized Gaussian binomial, the typical multiplication operand in the
/// table recursions.
pub fn mid_qbinom() -> LaurentPoly {
    QBinomTable::new().qbinom(24, 12)
}
