//! Arbitrary-precision scalars and Laurent polynomials.
//!
//! Integers are [`num_bigint::BigInt`]; rationals are [`num_rational::BigRational`]
//! under the local name [`BigRat`]. `Ratio` keeps every value reduced with a
//! positive denominator, so `is_integer()` means exactly "denominator is 1".
//! [`LaurentPoly`] is the workhorse: dense integer coefficients starting at a
//! possibly negative exponent, always held in canonical form so `==` is plain
//! structural equality. Nothing in this module (or the crate) touches
//! floating point.

mod laurent;

pub use laurent::{DivisionError, LaurentPoly};

pub use num_bigint::BigInt;

/// Exact rational number. Construction through `BigRat::new` reduces and
/// normalizes the sign, so the denominator is always positive.
pub type BigRat = num_rational::BigRational;

#[cfg(test)]
mod tests {
    use super::BigRat;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed};
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(BigInt::from(n), BigInt::from(d))
    }

    fn is_reduced(x: &BigRat) -> bool {
        x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
    }

    #[test]
    fn integrality_is_denominator_one() {
        assert!(rat(10, 2).is_integer());
        assert!(!rat(343, 5).is_integer());
        assert_eq!(rat(-6, -4), rat(3, 2));
    }

    proptest! {
        #[test]
        fn field_ops_stay_reduced(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
            let x = rat(a, b);
            let y = rat(c, d);
            prop_assert!(is_reduced(&(&x + &y)));
            prop_assert!(is_reduced(&(&x - &y)));
            prop_assert!(is_reduced(&(&x * &y)));
            if c != 0 {
                prop_assert!(is_reduced(&(&x / &y)));
            }
        }
    }
}
