//! Dense Laurent polynomials in one variable q over arbitrary-precision
//! integers.
//!
//! A value represents
//!
//! ```text
//! coeffs[0]*q^min_exp + coeffs[1]*q^(min_exp+1) + ... + coeffs[last]*q^max_exp
//! ```
//!
//! Canonical form: either `coeffs` is empty and `min_exp == 0` (the unique
//! zero), or the first and last coefficients are both nonzero. Every
//! constructor and operation returns canonical values, so equality is
//! structural and hashing is consistent.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Failure mode of [`LaurentPoly::exact_div`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum DivisionError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("division leaves a remainder")]
    Remainder,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(BigInt::one(), 0)
    }

    /// `coeff * q^exp`; the zero coefficient collapses to the canonical zero.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { min_exp: exp, coeffs: vec![coeff] }
        }
    }

    /// Builds `sum coeffs[t] * q^(min_exp + t)`, trimming zero ends.
    pub fn from_coeffs<T: Into<BigInt>>(min_exp: i64, coeffs: impl IntoIterator<Item = T>) -> Self {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        Self::canonical(min_exp, coeffs)
    }

    fn canonical(mut min_exp: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            min_exp += lead as i64;
        }
        if coeffs.is_empty() {
            min_exp = 0;
        }
        LaurentPoly { min_exp, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient; 0 for the zero polynomial.
    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent with a nonzero coefficient; 0 for the zero polynomial.
    pub fn max_exp(&self) -> i64 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.min_exp + self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.min_exp;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (self.min_exp + t as i64, c))
    }

    /// Multiplies by `q^exp`. The zero polynomial is unchanged.
    pub fn shift(&self, exp: i64) -> Self {
        if self.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { min_exp: self.min_exp + exp, coeffs: self.coeffs.clone() }
        }
    }

    /// Value at q = 1, i.e. the coefficient sum.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// The substitution q -> 1/q: every term `c*q^e` becomes `c*q^(-e)`.
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly { min_exp: -self.max_exp(), coeffs }
    }

    pub fn is_nonneg(&self) -> bool {
        !self.coeffs.iter().any(Signed::is_negative)
    }

    /// True when no negative exponent carries a nonzero coefficient.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.min_exp >= 0
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division: returns `q` with `self == q * divisor`, or an error if
    /// no such Laurent polynomial exists. Works from the lowest term upward,
    /// subtracting one matched multiple of the divisor per step.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, DivisionError> {
        if divisor.is_zero() {
            return Err(DivisionError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        // An exact quotient cannot have terms above this exponent.
        let quot_max = self.max_exp() - divisor.max_exp();
        let div_lead = divisor.coeffs[0].clone();
        let mut rem = self.clone();
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        while !rem.is_zero() {
            let t_exp = rem.min_exp - divisor.min_exp;
            if t_exp > quot_max || !(&rem.coeffs[0] % &div_lead).is_zero() {
                return Err(DivisionError::Remainder);
            }
            let t_coeff = &rem.coeffs[0] / &div_lead;
            let step = LaurentPoly::monomial(t_coeff.clone(), t_exp);
            rem = &rem - &(&step * divisor);
            terms.push((t_exp, t_coeff));
        }
        let min = terms[0].0;
        let len = (terms.last().unwrap().0 - min + 1) as usize;
        let mut coeffs = vec![BigInt::zero(); len];
        for (e, c) in terms {
            coeffs[(e - min) as usize] = c;
        }
        Ok(LaurentPoly::canonical(min, coeffs))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let min = self.min_exp.min(rhs.min_exp);
        let max = self.max_exp().max(rhs.max_exp());
        let mut coeffs = vec![BigInt::zero(); (max - min + 1) as usize];
        for (e, c) in self.terms() {
            coeffs[(e - min) as usize] += c;
        }
        for (e, c) in rhs.terms() {
            coeffs[(e - min) as usize] += c;
        }
        LaurentPoly::canonical(min, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::canonical(self.min_exp + rhs.min_exp, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            min_exp: if self.is_zero() { 0 } else { self.min_exp },
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident::$method:ident),*) => {$(
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for LaurentPoly {
    /// Human form, lowest exponent first: `q^-1 + 2 + q`, `1 + 2q + q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Machine form: `{"min_exp": -1, "coeffs": ["1", "2", "1"]}` with decimal
/// coefficient strings. Deserialization re-canonicalizes.
#[derive(Serialize, Deserialize)]
struct LaurentPolyRepr {
    min_exp: i64,
    coeffs: Vec<String>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LaurentPolyRepr {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(BigInt::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = LaurentPolyRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(DeError::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::canonical(repr.min_exp, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(min_exp: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min_exp, coeffs.iter().copied())
    }

    #[test]
    fn add_aligns_offsets() {
        let a = lp(-1, &[1, 1]);
        let b = lp(0, &[1, 1]);
        assert_eq!(&a + &b, lp(-1, &[1, 2, 1]));
        assert_eq!((&a + &b).to_string(), "q^-1 + 2 + q");
    }

    #[test]
    fn zero_is_unique() {
        let p = lp(3, &[2, -1]);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.min_exp(), 0);
        assert_eq!(z, LaurentPoly::zero());
        assert_eq!(z.shift(5), LaurentPoly::zero());
        assert_eq!(LaurentPoly::from_coeffs(4, [0, 0]), LaurentPoly::zero());
    }

    #[test]
    fn canonicalization_trims_both_ends() {
        assert_eq!(LaurentPoly::from_coeffs(-2, [0, 7, 0, 3, 0]), lp(-1, &[7, 0, 3]));
    }

    #[test]
    fn display_covers_signs_and_units() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp(0, &[1, 2, 1]).to_string(), "1 + 2q + q^2");
        assert_eq!(lp(1, &[-1, 0, 1]).to_string(), "-q + q^3");
        assert_eq!(lp(-3, &[2]).to_string(), "2q^-3");
        assert_eq!(lp(-1, &[1]).to_string(), "q^-1");
    }

    #[test]
    fn eval_one_sums_coefficients() {
        assert_eq!(lp(-4, &[1, 2, 1]).eval_one(), BigInt::from(4));
        assert_eq!(LaurentPoly::zero().eval_one(), BigInt::zero());
    }

    #[test]
    fn reversal_negates_exponents() {
        assert_eq!(lp(0, &[2, 1]).reversed(), lp(-1, &[1, 2]));
        assert_eq!(lp(-1, &[1, 2, 1]).reversed(), lp(-1, &[1, 2, 1]));
    }

    #[test]
    fn exact_division_round_trips() {
        let a = lp(0, &[1, 1]);
        let b = lp(0, &[1, 1, 1]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        let laurent = lp(-1, &[1, 1]);
        assert_eq!(laurent.exact_div(&a).unwrap(), lp(-1, &[1]));
    }

    #[test]
    fn exact_division_detects_failure() {
        let err = lp(0, &[1, 0, 1]).exact_div(&lp(0, &[1, 1])).unwrap_err();
        assert_eq!(err, DivisionError::Remainder);
        let err = lp(0, &[2, 1]).exact_div(&lp(0, &[3])).unwrap_err();
        assert_eq!(err, DivisionError::Remainder);
        let err = lp(0, &[1]).exact_div(&LaurentPoly::zero()).unwrap_err();
        assert_eq!(err, DivisionError::ZeroDivisor);
    }

    #[test]
    fn json_form_is_stable() {
        let p = lp(-1, &[1, 2, 1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"min_exp":-1,"coeffs":["1","2","1"]}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), p);
        // Non-canonical input canonicalizes on the way in.
        let messy: LaurentPoly =
            serde_json::from_str(r#"{"min_exp":0,"coeffs":["0","5","0"]}"#).unwrap();
        assert_eq!(messy, lp(1, &[5]));
    }

    fn poly() -> impl Strategy<Value = LaurentPoly> {
        (-5i64..6, proptest::collection::vec(-9i64..10, 0..7))
            .prop_map(|(m, cs)| LaurentPoly::from_coeffs(m, cs))
    }

    proptest! {
        #[test]
        fn ring_laws_hold(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn structural_identities(a in poly(), s in -6i64..7) {
            prop_assert_eq!(a.reversed().reversed(), a.clone());
            prop_assert_eq!(a.shift(s).shift(-s), a.clone());
            prop_assert_eq!(a.shift(s).eval_one(), a.eval_one());
            let dense: Vec<_> = (a.min_exp()..=a.max_exp()).map(|e| a.coeff(e)).collect();
            prop_assert_eq!(LaurentPoly::from_coeffs(a.min_exp(), dense), a.clone());
        }

        #[test]
        fn multiplication_then_division_is_exact(a in poly(), b in poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), a);
        }
    }
}
