//! Rational Schmidt numbers and integrality searches at q = 1.
//!
//! For exponents r, s >= 1 the numbers `c_k` are the unique rationals with
//!
//! ```text
//! sum_{k=0}^n C(n,k)^r C(n+k,k)^r = sum_{k=0}^n C(n,k)^s C(n+k,k)^s c_k
//! ```
//!
//! for every n >= 0. The system is lower triangular with diagonal
//! `C(2n,n)^s != 0`, so [`schmidt_numbers`] solves it row by row in exact
//! rationals. [`least_r`] scans upward from r = s+1 for the first r making
//! `c_0..c_n` all integral, keeping a non-integrality witness for every
//! failed r, and [`first_noninteger`] hunts the smallest non-integral entry
//! for a fixed pair.

use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::bigmath::{BigInt, BigRat};
use crate::qcomb::BinomTable;

/// Solved values `c_0..c_N` for one exponent pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchmidtTable {
    pub r: u32,
    pub s: u32,
    #[serde(with = "rat_string_vec")]
    pub values: Vec<BigRat>,
}

/// One failed level in a [`least_r`] scan: the smallest k whose `c_k` is
/// non-integral at that r, together with the value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub r: u32,
    pub k: u32,
    #[serde(with = "rat_string")]
    pub value: BigRat,
}

/// Outcome of a [`least_r`] scan. When `r_found` is present, every level
/// strictly between s and it carries a witness, so the record certifies
/// minimality on its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: u32,
    pub s: u32,
    pub r_found: Option<u32>,
    pub r_max_scanned: u32,
    pub witnesses: Vec<Witness>,
}

fn power_sum(bt: &mut BinomTable, n: u32, e: u32, weights: Option<&[BigRat]>) -> BigRat {
    let nn = i64::from(n);
    let mut acc = BigRat::from_integer(BigInt::from(0));
    for k in 0..=nn {
        let base = bt.binom(nn, k) * bt.binom(nn + k, k);
        let term = BigRat::from_integer(Pow::pow(&base, e));
        acc += match weights {
            Some(c) => term * &c[k as usize],
            None => term,
        };
    }
    acc
}

fn solve(bt: &mut BinomTable, r: u32, s: u32, n_max: u32) -> Vec<BigRat> {
    assert!(r >= 1 && s >= 1, "exponents must be >= 1, got r={r}, s={s}");
    let mut values: Vec<BigRat> = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let nn = i64::from(n);
        // Row n determines c_n: everything below is known, the diagonal
        // coefficient is C(2n,n)^s.
        let lhs = power_sum(bt, n, r, None);
        let mut known = BigRat::from_integer(BigInt::from(0));
        for k in 0..nn {
            let base = bt.binom(nn, k) * bt.binom(nn + k, k);
            known += BigRat::from_integer(Pow::pow(&base, s)) * &values[k as usize];
        }
        let diagonal = BigRat::from_integer(Pow::pow(&bt.binom(2 * nn, nn), s));
        values.push((lhs - known) / diagonal);
    }
    values
}

/// Solves the defining system row by row for n = 0..=N.
pub fn schmidt_numbers(r: u32, s: u32, n_max: u32) -> SchmidtTable {
    let mut bt = BinomTable::new();
    SchmidtTable { r, s, values: solve(&mut bt, r, s, n_max) }
}

/// `None` if `c_0..c_n` are all integers, otherwise the smallest offending
/// index. The table must hold at least n+1 values.
pub fn is_integral_through(table: &SchmidtTable, n: u32) -> Option<u32> {
    assert!(
        table.values.len() > n as usize,
        "table holds {} values, need at least {}",
        table.values.len(),
        n as usize + 1
    );
    table.values[..=n as usize].iter().position(|c| !c.is_integer()).map(|k| k as u32)
}

/// Scans r = s+1, s+2, ..., r_max for the least r with `c_0..c_n` all
/// integral. Strictly increasing with early exit: every level before the
/// success is certified by a witness, so no work is wasted past it.
pub fn least_r(n: u32, s: u32, r_max: u32) -> SearchRecord {
    assert!(s >= 1, "need s >= 1, got s={s}");
    assert!(r_max > s, "need r_max > s, got r_max={r_max}, s={s}");
    let mut bt = BinomTable::new();
    let mut witnesses = Vec::new();
    let mut r_found = None;
    let mut r_max_scanned = s;
    for r in s + 1..=r_max {
        r_max_scanned = r;
        let values = solve(&mut bt, r, s, n);
        let table = SchmidtTable { r, s, values };
        match is_integral_through(&table, n) {
            None => {
                r_found = Some(r);
                break;
            }
            Some(k) => {
                witnesses.push(Witness { r, k, value: table.values[k as usize].clone() });
            }
        }
    }
    SearchRecord { n, s, r_found, r_max_scanned, witnesses }
}

/// Smallest k <= k_max with `c_k` non-integral for the pair (r, s), with the
/// value; `None` if integral throughout. Requires r > s > 1.
pub fn first_noninteger(r: u32, s: u32, k_max: u32) -> Option<(u32, BigRat)> {
    assert!(r > s && s > 1, "need r > s > 1, got r={r}, s={s}");
    let table = schmidt_numbers(r, s, k_max);
    is_integral_through(&table, k_max).map(|k| (k, table.values[k as usize].clone()))
}

mod rat_string {
    use super::BigRat;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(value: &BigRat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRat, D::Error> {
        let text = String::deserialize(d)?;
        BigRat::from_str(&text).map_err(|e| D::Error::custom(format!("bad rational {text:?}: {e}")))
    }
}

mod rat_string_vec {
    use super::BigRat;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(values: &[BigRat], s: S) -> Result<S::Ok, S::Error> {
        values.iter().map(BigRat::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRat>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|text| {
                BigRat::from_str(&text)
                    .map_err(|e| D::Error::custom(format!("bad rational {text:?}: {e}")))
            })
            .collect()
    }
}
