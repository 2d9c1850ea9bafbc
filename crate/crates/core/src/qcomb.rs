//! q-combinatorics: Gaussian binomials, q-Pochhammer products, classical
//! binomials, and the Pfaff-Saalschutz checks.
//!
//! The Gaussian binomial `[n, k]` is defined as
//!
//! ```text
//! [n, k] = (q)_n / ((q)_k * (q)_(n-k))   for 0 <= k <= n,
//! [n, k] = 0                             otherwise,
//! ```
//!
//! with `(q)_n = (1-q)(1-q^2)...(1-q^n)`. Construction never divides: the
//! table uses the Pascal-style recurrence `[n, k] = [n-1, k-1] + q^k [n-1, k]`,
//! which produces ordinary polynomials with nonnegative coefficients of degree
//! `k(n-k)`. Classical binomials live in their own additions-only Pascal
//! triangle so that `binom(n, k) == qbinom(n, k).eval_one()` is a genuine
//! cross-check of two independent routes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bigmath::LaurentPoly;

/// Internal sanity failure in [`verify_pfaff_substituted`]: the q-Pochhammer
/// factors did not reassemble multiplicatively. Signals an implementation
/// bug, not a falsified identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("q-Pochhammer rearrangement failed at n={n}, k={k}, i={i}, j={j}")]
pub struct RearrangementError {
    pub n: i64,
    pub k: i64,
    pub i: i64,
    pub j: i64,
}

/// `(q)_n = (1-q)(1-q^2)...(1-q^n)`; the empty product for n = 0.
pub fn qpoch(n: u32) -> LaurentPoly {
    qpoch_range(1, n as i64)
}

/// `(1-q^lo)(1-q^(lo+1))...(1-q^hi)`, the empty product when lo > hi.
/// Equals `(q)_hi / (q)_(lo-1)` without performing the division.
pub fn qpoch_range(lo: i64, hi: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for t in lo..=hi {
        let factor = &LaurentPoly::one() - &LaurentPoly::monomial(1, t);
        acc = &acc * &factor;
    }
    acc
}

/// Memoized Gaussian binomials via the Pascal recurrence.
#[derive(Debug, Default)]
pub struct QBinomTable {
    memo: HashMap<(i64, i64), LaurentPoly>,
}

impl QBinomTable {
    pub fn new() -> Self {
        QBinomTable::default()
    }

    pub fn qbinom(&mut self, n: i64, k: i64) -> LaurentPoly {
        if k < 0 || n < 0 || k > n {
            return LaurentPoly::zero();
        }
        if k == 0 || k == n {
            return LaurentPoly::one();
        }
        if let Some(p) = self.memo.get(&(n, k)) {
            return p.clone();
        }
        let a = self.qbinom(n - 1, k - 1);
        let b = self.qbinom(n - 1, k);
        let val = &a + &b.shift(k);
        self.memo.insert((n, k), val.clone());
        val
    }
}

/// Memoized classical binomials: Pascal's triangle over `BigInt`, additions
/// only, rows grown on demand.
#[derive(Debug, Default)]
pub struct BinomTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomTable {
    pub fn new() -> Self {
        BinomTable { rows: vec![vec![BigInt::from(1)]] }
    }

    pub fn binom(&mut self, n: i64, k: i64) -> BigInt {
        if k < 0 || n < 0 || k > n {
            return BigInt::zero();
        }
        if self.rows.is_empty() {
            self.rows.push(vec![BigInt::from(1)]);
        }
        while self.rows.len() as i64 <= n {
            let prev = self.rows.last().unwrap();
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(BigInt::from(1));
            for w in prev.windows(2) {
                row.push(&w[0] + &w[1]);
            }
            row.push(BigInt::from(1));
            self.rows.push(row);
        }
        self.rows[n as usize][k as usize].clone()
    }
}

/// Checks the Pfaff-Saalschutz expansion
///
/// ```text
/// [m+n, M][n, N] = sum_{j>=0} q^((N-j)(M-m-j)) [M-m, j][N+m, m+j][m+n+j, M+N]
/// ```
///
/// exactly, under the zero-outside-range bracket convention above. The sum is
/// finite: terms vanish once j exceeds either M-m or N.
///
/// With that convention the expansion is NOT universally true: whenever
/// M < m every right-hand bracket `[M-m, j]` vanishes while the left side can
/// survive (smallest failing point: m=1, n=0, M=0, N=0, where LHS = 1). It
/// holds for every M >= m, which covers all uses elsewhere in this crate.
pub fn verify_pfaff(qb: &mut QBinomTable, m: i64, n: i64, big_m: i64, big_n: i64) -> bool {
    let lhs = &qb.qbinom(m + n, big_m) * &qb.qbinom(n, big_n);
    let mut rhs = LaurentPoly::zero();
    let hi = (big_m - m).min(big_n);
    for j in 0..=hi {
        let term = &(&qb.qbinom(big_m - m, j) * &qb.qbinom(big_n + m, m + j))
            * &qb.qbinom(m + n + j, big_m + big_n);
        rhs = &rhs + &term.shift((big_n - j) * (big_m - m - j));
    }
    lhs == rhs
}

/// Checks the substituted expansion
///
/// ```text
/// [n, i][n+i, i] = sum_{j=0..i} q^((i-j)(n-k-j))
///                  * (q)_(k+i) (q)_j / ((q)_(k+j) (q)_i)
///                  * [k, i-j][n-k, j][n+k+j, j]
/// ```
///
/// for 0 <= i <= n and 0 <= k <= n. Individual summands are honest rational
/// functions, so both sides are multiplied by `(q)_(k+i) * (q)_i` first; the
/// leftover per-term factor `(q)_(k+i) / (q)_(k+j)` is assembled directly as
/// the product `(1-q^(k+j+1))...(1-q^(k+i))`, so no division is ever
/// performed. A multiplicative sanity check guards that rearrangement.
pub fn verify_pfaff_substituted(
    qb: &mut QBinomTable,
    n: i64,
    k: i64,
    i: i64,
) -> Result<bool, RearrangementError> {
    assert!(0 <= i && i <= n, "need 0 <= i <= n, got i={i}, n={n}");
    assert!(0 <= k && k <= n, "need 0 <= k <= n, got k={k}, n={n}");
    let common = &qpoch((k + i) as u32) * &qpoch(i as u32);
    let lhs = &(&qb.qbinom(n, i) * &qb.qbinom(n + i, i)) * &common;
    let mut rhs = LaurentPoly::zero();
    for j in 0..=i {
        let range = qpoch_range(k + j + 1, k + i);
        if &qpoch((k + j) as u32) * &range != qpoch((k + i) as u32) {
            return Err(RearrangementError { n, k, i, j });
        }
        let brackets = &(&qb.qbinom(k, i - j) * &qb.qbinom(n - k, j)) * &qb.qbinom(n + k + j, j);
        let term = &(&qpoch((k + i) as u32) * &range) * &(&qpoch(j as u32) * &brackets);
        rhs = &rhs + &term.shift((i - j) * (n - k - j));
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(min_exp: i64, coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(min_exp, coeffs.iter().copied())
    }

    #[test]
    fn qpoch_small_values() {
        assert_eq!(qpoch(0), LaurentPoly::one());
        assert_eq!(qpoch(1), lp(0, &[1, -1]));
        assert_eq!(qpoch(2), lp(0, &[1, -1, -1, 1]));
        assert_eq!(qpoch_range(3, 2), LaurentPoly::one());
        assert_eq!(&qpoch_range(1, 2) * &qpoch_range(3, 4), qpoch(4));
    }

    #[test]
    fn qbinom_small_values() {
        let mut t = QBinomTable::new();
        assert_eq!(t.qbinom(0, 0), LaurentPoly::one());
        assert_eq!(t.qbinom(3, 1), lp(0, &[1, 1, 1]));
        assert_eq!(t.qbinom(4, 2), lp(0, &[1, 1, 2, 1, 1]));
        assert_eq!(t.qbinom(2, 3), LaurentPoly::zero());
        assert_eq!(t.qbinom(-1, 0), LaurentPoly::zero());
        assert_eq!(t.qbinom(5, -1), LaurentPoly::zero());
    }

    #[test]
    fn qbinom_matches_pochhammer_quotient() {
        let mut t = QBinomTable::new();
        for n in 0..=12i64 {
            for k in 0..=n {
                let lhs = &t.qbinom(n, k) * &(&qpoch(k as u32) * &qpoch((n - k) as u32));
                assert_eq!(lhs, qpoch(n as u32), "product formula at ({n}, {k})");
            }
        }
    }

    #[test]
    fn qbinom_structure() {
        let mut t = QBinomTable::new();
        for n in 0..=12i64 {
            for k in 0..=n {
                let p = t.qbinom(n, k);
                assert_eq!(p.min_exp(), 0);
                assert_eq!(p.max_exp(), k * (n - k));
                assert!(p.is_nonneg());
                assert_eq!(p, t.qbinom(n, n - k));
                // Palindromic: reversing flips exponents onto -deg..0.
                assert_eq!(p.reversed().shift(k * (n - k)), p);
            }
        }
    }

    #[test]
    fn binom_small_and_large() {
        let mut t = BinomTable::new();
        assert_eq!(t.binom(0, 0), BigInt::from(1));
        assert_eq!(t.binom(10, 5), BigInt::from(252));
        assert_eq!(t.binom(5, 7), BigInt::zero());
        assert_eq!(t.binom(-2, 0), BigInt::zero());
        // 62 digits, frozen independently.
        assert_eq!(
            t.binom(210, 105).to_string(),
            "90492479540310008180848641429024900729436748166512078795479440"
        );
    }

    #[test]
    fn binom_agrees_with_qbinom_at_one() {
        let mut b = BinomTable::new();
        let mut q = QBinomTable::new();
        for n in 0..=12i64 {
            for k in 0..=n {
                assert_eq!(b.binom(n, k), q.qbinom(n, k).eval_one());
            }
        }
    }

    #[test]
    fn pfaff_point_values() {
        let mut t = QBinomTable::new();
        assert!(verify_pfaff(&mut t, 0, 0, 0, 0));
        assert!(verify_pfaff(&mut t, 1, 2, 2, 1));
        // M > m+n: both sides vanish.
        assert!(verify_pfaff(&mut t, 0, 1, 2, 1));
        assert!(verify_pfaff(&mut t, 2, 1, 6, 0));
        // M < m with a surviving left side: the expansion genuinely fails
        // under the zero-outside-range convention.
        assert!(!verify_pfaff(&mut t, 1, 0, 0, 0));
        assert!(!verify_pfaff(&mut t, 2, 1, 1, 0));
    }

    #[test]
    fn pfaff_holds_on_m_le_big_m_box() {
        let mut t = QBinomTable::new();
        for m in 0..=4 {
            for n in 0..=4 {
                for big_m in m..=4 {
                    for big_n in 0..=4 {
                        assert!(
                            verify_pfaff(&mut t, m, n, big_m, big_n),
                            "failed at ({m}, {n}, {big_m}, {big_n})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pfaff_substituted_small_box() {
        let mut t = QBinomTable::new();
        assert!(verify_pfaff_substituted(&mut t, 1, 1, 1).unwrap());
        for n in 0..=5 {
            for k in 0..=n {
                for i in 0..=n {
                    assert!(
                        verify_pfaff_substituted(&mut t, n, k, i).unwrap(),
                        "failed at (n={n}, k={k}, i={i})"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn pascal_recurrence_consistency(n in 1i64..16, k in 0i64..16) {
            prop_assume!(k <= n);
            let mut t = QBinomTable::new();
            let direct = t.qbinom(n, k);
            let a = t.qbinom(n - 1, k - 1);
            let b = t.qbinom(n - 1, k);
            prop_assert_eq!(direct, &a + &b.shift(k));
        }
    }
}
