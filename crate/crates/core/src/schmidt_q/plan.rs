//! Exponent plans: pairs (f, g) of integer-valued functions that rescale the
//! raw P table into a T table, `T[k,i] = q^(f(k,r) + g(i,r)) * P[k,i]`.
//!
//! The plan controls the exponent that appears in the level-step recursion
//! (see `exponent_a` in the parent module); a well-chosen plan keeps every
//! step exponent nonnegative so the recursion stays inside ordinary
//! polynomials with nonnegative coefficients.

use serde::{Deserialize, Serialize};

/// `choose(m, 2) = m(m-1)/2`, zero below m = 2.
pub(crate) fn choose2(m: i64) -> i64 {
    if m < 2 {
        0
    } else {
        m * (m - 1) / 2
    }
}

/// Bivariate integer polynomial; `coeffs[a][b]` multiplies `x^a * y^b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariatePoly {
    pub coeffs: Vec<Vec<i64>>,
}

impl BivariatePoly {
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        let mut acc = 0;
        let mut xp = 1;
        for row in &self.coeffs {
            let mut yp = 1;
            for &c in row {
                acc += c * xp * yp;
                yp *= y;
            }
            xp *= x;
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentPlan {
    /// f = g = 0: raw tables. Step exponents can go negative, so the step
    /// recursion runs through genuine Laurent polynomials.
    Zero,
    /// f(k, r) = r*C(k+1, 2), g(i, r) = (r-2)*C(i, 2) - i. Keeps every step
    /// exponent nonnegative for r >= 2 and turns the column sums of the
    /// rescaled table into the c coefficient polynomials.
    Zudilin,
    /// Caller-supplied integer-coefficient bivariate polynomials,
    /// f in (k, r) and g in (i, r).
    Custom { name: String, f: BivariatePoly, g: BivariatePoly },
}

impl ExponentPlan {
    pub fn name(&self) -> &str {
        match self {
            ExponentPlan::Zero => "zero",
            ExponentPlan::Zudilin => "zudilin",
            ExponentPlan::Custom { name, .. } => name,
        }
    }

    pub fn f(&self, k: i64, r: i64) -> i64 {
        match self {
            ExponentPlan::Zero => 0,
            ExponentPlan::Zudilin => r * choose2(k + 1),
            ExponentPlan::Custom { f, .. } => f.eval(k, r),
        }
    }

    pub fn g(&self, i: i64, r: i64) -> i64 {
        match self {
            ExponentPlan::Zero => 0,
            ExponentPlan::Zudilin => (r - 2) * choose2(i) - i,
            ExponentPlan::Custom { g, .. } => g.eval(i, r),
        }
    }

    /// The built-in plans, in registry order.
    pub fn registry() -> Vec<ExponentPlan> {
        vec![ExponentPlan::Zero, ExponentPlan::Zudilin]
    }

    /// Looks a built-in plan up by its registry name.
    pub fn by_name(name: &str) -> Option<ExponentPlan> {
        ExponentPlan::registry().into_iter().find(|p| p.name() == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choose2_edges() {
        assert_eq!(choose2(-3), 0);
        assert_eq!(choose2(0), 0);
        assert_eq!(choose2(1), 0);
        assert_eq!(choose2(2), 1);
        assert_eq!(choose2(5), 10);
    }

    #[test]
    fn builtin_plan_values() {
        let zero = ExponentPlan::by_name("zero").unwrap();
        assert_eq!(zero.f(4, 3), 0);
        assert_eq!(zero.g(4, 3), 0);
        let zud = ExponentPlan::by_name("zudilin").unwrap();
        assert_eq!(zud.f(1, 2), 2);
        assert_eq!(zud.g(1, 2), -1);
        assert_eq!(zud.f(3, 2), 12);
        assert_eq!(zud.g(4, 3), 2);
        assert!(ExponentPlan::by_name("nope").is_none());
    }

    #[test]
    fn custom_plan_evaluates() {
        // f(x, y) = 1 + 2x + 3xy
        let f = BivariatePoly { coeffs: vec![vec![1], vec![2, 3]] };
        assert_eq!(f.eval(0, 0), 1);
        assert_eq!(f.eval(2, 5), 1 + 4 + 30);
        let plan = ExponentPlan::Custom {
            name: "affine".into(),
            f: f.clone(),
            g: BivariatePoly { coeffs: vec![] },
        };
        assert_eq!(plan.name(), "affine");
        assert_eq!(plan.f(2, 5), 35);
        assert_eq!(plan.g(7, 7), 0);
    }
}
