//! Connection-coefficient tables for q-analogues of Schmidt-type sums.
//!
//! The base identity expands a power of a Gaussian-binomial product in the
//! plain product basis:
//!
//! ```text
//! [n,k]^r [n+k,k]^r = sum_{i=k}^{min(n, rk)} q^((rk-i)n) [n,i][n+i,i] P[k,i]
//! ```
//!
//! where each `P[k,i]` (at level r) is a Laurent polynomial in q that does
//! not depend on n. The table is built two independent ways:
//!
//! * [`Tables::p_table`] runs the level-step recursion
//!   `P'[k,k+j] = sum_i q^((j-i)(j+k)) [k+i,i][k,i-j][k+j,j] P[k,i]`
//!   upward from the single entry `P[k,k] = 1` at level 1;
//! * [`Tables::p_oracle`] solves the base identity triangularly in n with
//!   exact Laurent division and fails loudly on any nonzero remainder.
//!
//! Row sums `b[i] = sum_k P[k,i]` and the rescaled column sums
//! `c[i] = q^((r-2)C(i,2)-i) * sum_k q^(rC(k+1,2)) P[k,i]` satisfy their own
//! expansion identities (see [`Tables::verify_theorem13`] and
//! [`Tables::verify_theorem11`]); the c family lands in ordinary polynomials
//! with nonnegative coefficients, which [`Tables::c_poly`] asserts on every
//! call. Exponent plans ([`ExponentPlan`]) generalize the rescaling and feed
//! the step-exponent bookkeeping in [`exponent_a`].

use std::collections::{BTreeMap, HashMap};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bigmath::{DivisionError, LaurentPoly};
use crate::qcomb::QBinomTable;

mod plan;
mod report;

pub use plan::{BivariatePoly, ExponentPlan};
pub use report::IdentityReport;

use plan::choose2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("triangular solve for (k={k}, r={r}) stalled at row n={n}: {source}")]
    OracleDivision { k: u32, r: u32, n: u32, source: DivisionError },
    #[error("c[{i}] at level r={r} is not an ordinary polynomial (lowest exponent {min_exp})")]
    NotPolynomial { i: u32, r: u32, min_exp: i64 },
    #[error("c[{i}] at level r={r} has a negative coefficient at exponent {exp}")]
    NegativeCoefficient { i: u32, r: u32, exp: i64 },
}

/// One (k, r) slice of the P table, keyed by i. Entries exist exactly for
/// k <= i <= r*k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PTable {
    pub k: u32,
    pub r: u32,
    pub entries: BTreeMap<u32, LaurentPoly>,
}

/// Memoizing engine for every table and verifier in this module. All methods
/// are pure in their arguments; the struct only caches Gaussian binomials and
/// finished P entries, so results never depend on call order.
#[derive(Debug, Default)]
pub struct Tables {
    qb: QBinomTable,
    memo: HashMap<(u32, u32, u32), LaurentPoly>,
}

/// Step exponent for rebuilding level r+1 from level r under a plan:
///
/// ```text
/// A = f(k, r+1) + g(i, r+1) - f(k, r) - g(j, r) + i(i - k - j)
/// ```
pub fn exponent_a(k: i64, i: i64, j: i64, r: i64, plan: &ExponentPlan) -> i64 {
    plan.f(k, r + 1) + plan.g(i, r + 1) - plan.f(k, r) - plan.g(j, r) + i * (i - k - j)
}

impl Tables {
    pub fn new() -> Self {
        Tables::default()
    }

    /// Gaussian binomial `[n, k]` from the shared memo table.
    pub fn qbinom(&mut self, n: i64, k: i64) -> LaurentPoly {
        self.qb.qbinom(n, k)
    }

    /// In-support entry (k <= i <= r*k), computed by the level-step
    /// recursion and memoized. Target i at level r draws only on sources
    /// j in [i-k, i] at level r-1, so entries are built on demand without
    /// materializing whole levels.
    fn entry(&mut self, k: u32, r: u32, i: u32) -> LaurentPoly {
        if let Some(p) = self.memo.get(&(k, r, i)) {
            return p.clone();
        }
        let result = if r == 1 {
            LaurentPoly::one()
        } else {
            let kk = i64::from(k);
            let m = i64::from(i);
            let lo = (m - kk).max(kk);
            let hi = ((i64::from(r) - 1) * kk).min(m);
            let mut acc = LaurentPoly::zero();
            for src in lo..=hi {
                let p = self.entry(k, r - 1, src as u32);
                let brackets = &(&self.qb.qbinom(kk + src, src)
                    * &self.qb.qbinom(kk, src - m + kk))
                    * &self.qb.qbinom(m, m - kk);
                acc = &acc + &(&brackets * &p).shift((m - kk - src) * m);
            }
            acc
        };
        self.memo.insert((k, r, i), result.clone());
        result
    }

    /// The (k, r) slice built by the level-step recursion.
    pub fn p_table(&mut self, k: u32, r: u32) -> PTable {
        assert!(r >= 1, "level must be >= 1, got r={r}");
        let entries = (k..=r * k).map(|i| (i, self.entry(k, r, i))).collect();
        PTable { k, r, entries }
    }

    /// `P[k,i]` at level r; the zero polynomial outside k <= i <= r*k.
    pub fn p_poly(&mut self, k: u32, i: u32, r: u32) -> LaurentPoly {
        assert!(r >= 1, "level must be >= 1, got r={r}");
        if i < k || u64::from(i) > u64::from(r) * u64::from(k) {
            return LaurentPoly::zero();
        }
        self.entry(k, r, i)
    }

    /// Re-derives the (k, r) slice by triangular elimination: row n of the
    /// base identity determines `P[k,n]` once all lower entries are known,
    /// after exact division by `[2n, n]`. Independent of [`Tables::p_table`].
    pub fn p_oracle(&mut self, k: u32, r: u32) -> Result<PTable, TableError> {
        assert!(r >= 1, "level must be >= 1, got r={r}");
        let kk = i64::from(k);
        let top = i64::from(r) * kk;
        let mut entries: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for n in kk..=top {
            let mut acc = &self.qb.qbinom(n, kk).pow(r) * &self.qb.qbinom(n + kk, kk).pow(r);
            for (&src, p) in &entries {
                let i = i64::from(src);
                let known = &(&self.qb.qbinom(n, i) * &self.qb.qbinom(n + i, i)) * p;
                acc = &acc - &known.shift((top - i) * n);
            }
            let divisor = self.qb.qbinom(2 * n, n);
            let solved = acc
                .shift(-(top - n) * n)
                .exact_div(&divisor)
                .map_err(|source| TableError::OracleDivision { k, r, n: n as u32, source })?;
            entries.insert(n as u32, solved);
        }
        Ok(PTable { k, r, entries })
    }

    fn lemma_sides(
        qb: &mut QBinomTable,
        n: u32,
        k: u32,
        r: u32,
        slice: &BTreeMap<u32, LaurentPoly>,
    ) -> (LaurentPoly, LaurentPoly) {
        let nn = i64::from(n);
        let kk = i64::from(k);
        let top = i64::from(r) * kk;
        let lhs = &qb.qbinom(nn, kk).pow(r) * &qb.qbinom(nn + kk, kk).pow(r);
        let mut rhs = LaurentPoly::zero();
        for (&src, p) in slice {
            let i = i64::from(src);
            if i > nn {
                break;
            }
            let term = &(&qb.qbinom(nn, i) * &qb.qbinom(nn + i, i)) * p;
            rhs = &rhs + &term.shift((top - i) * nn);
        }
        (lhs, rhs)
    }

    /// Checks the base identity at one point (n, k, r), n >= k.
    pub fn verify_lemma(&mut self, n: u32, k: u32, r: u32) -> IdentityReport {
        assert!(k <= n, "need k <= n, got k={k}, n={n}");
        let top = (u64::from(r) * u64::from(k)).min(u64::from(n)) as u32;
        let slice: BTreeMap<u32, LaurentPoly> =
            (k..=top).map(|i| (i, self.entry(k, r, i))).collect();
        let (lhs, rhs) = Self::lemma_sides(&mut self.qb, n, k, r, &slice);
        IdentityReport::compare(
            "product-expansion",
            &[("n", i64::from(n)), ("k", i64::from(k)), ("r", i64::from(r))],
            &lhs,
            &rhs,
        )
    }

    /// `T[k,i] = q^(f(k,r) + g(i,r)) * P[k,i]` under a plan; zero beyond the
    /// support i <= r*k.
    pub fn t_poly(&mut self, k: u32, i: u32, r: u32, plan: &ExponentPlan) -> LaurentPoly {
        assert!(k <= i, "need k <= i, got k={k}, i={i}");
        let p = self.p_poly(k, i, r);
        p.shift(plan.f(i64::from(k), i64::from(r)) + plan.g(i64::from(i), i64::from(r)))
    }

    /// Checks that level r+1 of the T table is reproduced from level r by
    ///
    /// ```text
    /// T'[k,i] = sum_{j=k}^{rk} q^A [k+j,j][k,i-j][i,k] T[k,j]
    /// ```
    ///
    /// with A from [`exponent_a`].
    pub fn verify_step_recursion(
        &mut self,
        k: u32,
        i: u32,
        r: u32,
        plan: &ExponentPlan,
    ) -> IdentityReport {
        assert!(
            k <= i && u64::from(i) <= u64::from(r + 1) * u64::from(k),
            "need k <= i <= (r+1)k, got k={k}, i={i}, r={r}"
        );
        let kk = i64::from(k);
        let ii = i64::from(i);
        let rr = i64::from(r);
        let lhs = self.t_poly(k, i, r + 1, plan);
        let mut rhs = LaurentPoly::zero();
        for j in kk..=rr * kk {
            let t = self.t_poly(k, j as u32, r, plan);
            let brackets = &(&self.qb.qbinom(kk + j, j) * &self.qb.qbinom(kk, ii - j))
                * &self.qb.qbinom(ii, kk);
            let term = &brackets * &t;
            rhs = &rhs + &term.shift(exponent_a(kk, ii, j, rr, plan));
        }
        IdentityReport::compare(
            &format!("step-recursion/{}", plan.name()),
            &[("k", kk), ("i", ii), ("r", rr)],
            &lhs,
            &rhs,
        )
    }

    /// Row sum `b[i] = sum_{k=0}^{i} P[k,i]` at level r; a Laurent
    /// polynomial, in general with negative exponents.
    pub fn b_poly(&mut self, i: u32, r: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for k in 0..=i {
            acc = &acc + &self.p_poly(k, i, r);
        }
        acc
    }

    /// Checks the Laurent-side expansion at one (n, r):
    ///
    /// ```text
    /// sum_k q^(-rkn) [n,k]^r [n+k,k]^r = sum_i q^(-ni) [n,i][n+i,i] b[i]
    /// ```
    pub fn verify_theorem13(&mut self, n: u32, r: u32) -> IdentityReport {
        let nn = i64::from(n);
        let b: Vec<LaurentPoly> = (0..=n).map(|i| self.b_poly(i, r)).collect();
        let mut lhs = LaurentPoly::zero();
        let mut rhs = LaurentPoly::zero();
        for k in 0..=nn {
            let term = &self.qb.qbinom(nn, k).pow(r) * &self.qb.qbinom(nn + k, k).pow(r);
            lhs = &lhs + &term.shift(-i64::from(r) * k * nn);
        }
        for i in 0..=nn {
            let term = &(&self.qb.qbinom(nn, i) * &self.qb.qbinom(nn + i, i)) * &b[i as usize];
            rhs = &rhs + &term.shift(-nn * i);
        }
        IdentityReport::compare("row-sum-expansion", &[("n", nn), ("r", i64::from(r))], &lhs, &rhs)
    }

    fn c_unchecked(&mut self, i: u32, r: u32) -> LaurentPoly {
        let ii = i64::from(i);
        let rr = i64::from(r);
        let mut acc = LaurentPoly::zero();
        for k in 0..=i {
            let p = self.p_poly(k, i, r);
            acc = &acc + &p.shift(rr * choose2(i64::from(k) + 1));
        }
        acc.shift((rr - 2) * choose2(ii) - ii)
    }

    /// Rescaled column sum
    ///
    /// ```text
    /// c[i] = q^((r-2)C(i,2) - i) * sum_{k=0}^{i} q^(rC(k+1,2)) P[k,i]
    /// ```
    ///
    /// asserted on every call to be an ordinary polynomial with nonnegative
    /// coefficients; returns a loud error otherwise.
    pub fn c_poly(&mut self, i: u32, r: u32) -> Result<LaurentPoly, TableError> {
        let c = self.c_unchecked(i, r);
        if !c.is_polynomial() {
            return Err(TableError::NotPolynomial { i, r, min_exp: c.min_exp() });
        }
        if let Some((exp, _)) = c.terms().find(|(_, coeff)| coeff.is_negative()) {
            return Err(TableError::NegativeCoefficient { i, r, exp });
        }
        Ok(c)
    }

    /// Closed form of `c[i]` at level 2:
    /// `sum_{k=0}^{i} q^(2C(i-k,2)) [2k,i][i,k]^2`.
    pub fn c2_closed_form(&mut self, i: u32) -> LaurentPoly {
        let ii = i64::from(i);
        let mut acc = LaurentPoly::zero();
        for k in 0..=ii {
            let term = &self.qb.qbinom(2 * k, ii) * &self.qb.qbinom(ii, k).pow(2);
            acc = &acc + &term.shift(2 * choose2(ii - k));
        }
        acc
    }

    /// Checks the polynomial-side expansion at one (n, r):
    ///
    /// ```text
    ///   sum_k q^(rC(n-k,2) + (1-r)C(n,2)) [n,k]^r [n+k,k]^r
    /// = sum_i q^(C(n-i,2) + (1-r)C(i,2)) [n,i][n+i,i] c[i]
    /// ```
    ///
    /// Both sides are compared as Laurent polynomials with every prefactor
    /// included; the (1-r)C(., 2) shifts go negative for r >= 2.
    pub fn verify_theorem11(&mut self, n: u32, r: u32) -> IdentityReport {
        let nn = i64::from(n);
        let rr = i64::from(r);
        let c: Vec<LaurentPoly> = (0..=n).map(|i| self.c_unchecked(i, r)).collect();
        let mut lhs = LaurentPoly::zero();
        let mut rhs = LaurentPoly::zero();
        for k in 0..=nn {
            let term = &self.qb.qbinom(nn, k).pow(r) * &self.qb.qbinom(nn + k, k).pow(r);
            lhs = &lhs + &term.shift(rr * choose2(nn - k) + (1 - rr) * choose2(nn));
        }
        for i in 0..=nn {
            let term = &(&self.qb.qbinom(nn, i) * &self.qb.qbinom(nn + i, i)) * &c[i as usize];
            rhs = &rhs + &term.shift(choose2(nn - i) + (1 - rr) * choose2(i));
        }
        IdentityReport::compare("column-sum-expansion", &[("n", nn), ("r", rr)], &lhs, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(min_exp: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min_exp, coeffs.iter().copied())
    }

    #[test]
    fn level_one_slices_are_single_units() {
        let mut t = Tables::new();
        for k in 0..=5 {
            let table = t.p_table(k, 1);
            assert_eq!(table.entries.len(), 1);
            assert_eq!(table.entries[&k], LaurentPoly::one());
        }
    }

    #[test]
    fn p_table_frozen_values() {
        let mut t = Tables::new();
        let table = t.p_table(1, 2);
        assert_eq!(table.entries.len(), 2);
        assert_eq!(table.entries[&1], lp(-1, &[1, 1]));
        assert_eq!(table.entries[&2], lp(0, &[1, 2, 1]));
        assert_eq!(t.p_table(2, 2).entries[&2], lp(-4, &[1, 1, 2, 1, 1]));
    }

    #[test]
    fn p_poly_support_is_k_to_rk() {
        let mut t = Tables::new();
        assert!(t.p_poly(2, 1, 3).is_zero());
        assert!(t.p_poly(2, 7, 3).is_zero());
        assert!(t.p_poly(0, 1, 4).is_zero());
        assert!(!t.p_poly(2, 6, 3).is_zero());
        let keys: Vec<u32> = t.p_table(3, 3).entries.into_keys().collect();
        assert_eq!(keys, (3..=9).collect::<Vec<_>>());
    }

    #[test]
    fn p_entries_are_nonnegative() {
        let mut t = Tables::new();
        for k in 0..=4 {
            for r in 1..=4 {
                for p in t.p_table(k, r).entries.values() {
                    assert!(p.is_nonneg());
                }
            }
        }
    }

    #[test]
    fn oracle_agrees_with_recursion() {
        let mut t = Tables::new();
        for k in 0..=3 {
            for r in 1..=3 {
                assert_eq!(t.p_oracle(k, r).unwrap(), t.p_table(k, r), "slice (k={k}, r={r})");
            }
        }
    }

    #[test]
    fn lemma_holds_and_pins_the_table() {
        let mut t = Tables::new();
        for n in 0..=6 {
            for k in 0..=n {
                for r in 1..=3 {
                    assert!(t.verify_lemma(n, k, r).holds, "(n={n}, k={k}, r={r})");
                }
            }
        }
        // Perturbing any single entry breaks the identity at n = that i.
        let (k, r) = (2, 2);
        let clean = t.p_table(k, r).entries;
        for (&i, p) in &clean {
            let mut broken = clean.clone();
            broken.insert(i, p + &LaurentPoly::one());
            let (lhs, rhs) = Tables::lemma_sides(&mut t.qb, i, k, r, &broken);
            assert_ne!(lhs, rhs, "perturbation at i={i} went unnoticed");
        }
    }

    #[test]
    fn b_poly_frozen_values() {
        let mut t = Tables::new();
        assert_eq!(t.b_poly(0, 3), LaurentPoly::one());
        assert_eq!(t.b_poly(1, 2), lp(-1, &[1, 1]));
        assert_eq!(t.b_poly(2, 2), lp(-4, &[1, 1, 2, 1, 2, 2, 1]));
    }

    #[test]
    fn c_poly_frozen_values() {
        let mut t = Tables::new();
        assert_eq!(t.c_poly(1, 2).unwrap(), lp(0, &[1, 1]));
        assert_eq!(t.c_poly(2, 2).unwrap(), lp(0, &[2, 3, 3, 1, 1]));
        for i in 0..=6 {
            assert_eq!(t.c_poly(i, 1).unwrap(), LaurentPoly::one(), "c[{i}] at r=1");
        }
    }

    #[test]
    fn c2_matches_closed_form() {
        let mut t = Tables::new();
        assert_eq!(t.c2_closed_form(1), lp(0, &[1, 1]));
        for i in 0..=5 {
            assert_eq!(t.c_poly(i, 2).unwrap(), t.c2_closed_form(i), "i={i}");
        }
    }

    #[test]
    fn t_poly_applies_plan_shift() {
        let mut t = Tables::new();
        assert_eq!(t.t_poly(1, 1, 2, &ExponentPlan::Zudilin), lp(0, &[1, 1]));
        assert_eq!(t.t_poly(1, 1, 2, &ExponentPlan::Zero), lp(-1, &[1, 1]));
        assert!(t.t_poly(1, 3, 2, &ExponentPlan::Zero).is_zero());
    }

    #[test]
    fn exponent_a_values() {
        assert_eq!(exponent_a(1, 1, 1, 1, &ExponentPlan::Zero), -1);
        // At r = 1 the only admissible source is j = k, where the zudilin
        // plan gives A = 2*C(i-k, 2).
        for k in 0..=4i64 {
            for i in k..=2 * k {
                let a = exponent_a(k, i, k, 1, &ExponentPlan::Zudilin);
                assert_eq!(a, 2 * choose2(i - k));
            }
        }
        // For r >= 2: A = (r-2)[C(i,2) - C(j,2)] + C(i-k,2) + (i-1)(i-j),
        // nonnegative across the admissible range.
        for r in 2..=4i64 {
            for k in 0..=4 {
                for j in k..=r * k {
                    for i in j..=j + k {
                        let a = exponent_a(k, i, j, r, &ExponentPlan::Zudilin);
                        let closed = (r - 2) * (choose2(i) - choose2(j))
                            + choose2(i - k)
                            + (i - 1) * (i - j);
                        assert_eq!(a, closed);
                        assert!(a >= 0, "negative step exponent at (k={k}, i={i}, j={j}, r={r})");
                    }
                }
            }
        }
    }

    #[test]
    fn step_recursion_holds_for_builtin_plans() {
        let mut t = Tables::new();
        for plan in ExponentPlan::registry() {
            for k in 0..=3u32 {
                for r in 1..=3u32 {
                    for i in k..=(r + 1) * k {
                        let report = t.verify_step_recursion(k, i, r, &plan);
                        assert!(report.holds, "plan={} (k={k}, i={i}, r={r})", plan.name());
                    }
                }
            }
        }
    }

    #[test]
    fn expansions_hold_on_small_grid() {
        let mut t = Tables::new();
        for n in 0..=5 {
            for r in 1..=3 {
                assert!(t.verify_theorem13(n, r).holds, "row-sum at (n={n}, r={r})");
                assert!(t.verify_theorem11(n, r).holds, "column-sum at (n={n}, r={r})");
            }
        }
    }
}
