//! One-shot re-run of every shipped acceptance check.
//!
//! Items mirror the checks in the core crate's acceptance test target, one
//! id per independently skippable unit. The `pfaff-box` item fails by
//! design honesty, not by accident: the full-box balanced summation is
//! false as stated under the zero convention, and this runner reports the
//! finding instead of hiding it. Skip it explicitly to gate on the rest.

use serde::Serialize;

use qschmidt_core::schmidt_z::{first_noninteger, schmidt_numbers};
use qschmidt_core::{BigInt, BigRat, BinomTable, LaurentPoly, QBinomTable, Tables};

use crate::grids;

#[derive(Serialize)]
pub struct ItemResult {
    pub id: String,
    pub status: String,
    pub detail: String,
}

#[derive(Serialize)]
pub struct ReproReport {
    pub schema_version: u32,
    pub items: Vec<ItemResult>,
}

type Check = fn() -> Result<String, String>;

/// Registry of all items in run order.
pub fn items() -> Vec<(&'static str, Check)> {
    vec![
        ("search-r-0", || threshold(0, 3)),
        ("search-r-1", || threshold(1, 3)),
        ("search-r-2", || threshold(2, 3)),
        ("search-r-3", || threshold(3, 7)),
        ("search-r-4", || threshold(4, 32)),
        ("search-r-5", || threshold(5, 212)),
        ("thm11-grid", thm11_grid),
        ("thm13-grid", thm13_grid),
        ("lemma12-grid", lemma12_grid),
        ("oracle-match", oracle_match),
        ("step-recursion", step_recursion),
        ("pfaff-box", pfaff_box),
        ("pfaff-sub", pfaff_sub),
        ("positivity", positivity),
        ("closed-form-2", closed_form_2),
        ("bridge", bridge),
        ("nonint-probe", nonint_probe),
        ("qbinom-props", qbinom_props),
        ("ring-axioms", ring_axioms),
    ]
}

pub fn run(skip: &[String]) -> ReproReport {
    let mut out = Vec::new();
    for (id, check) in items() {
        if skip.iter().any(|s| s == id) {
            out.push(ItemResult {
                id: id.to_owned(),
                status: "SKIP".to_owned(),
                detail: "skipped by flag".to_owned(),
            });
            continue;
        }
        let (status, detail) = match check() {
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        out.push(ItemResult { id: id.to_owned(), status: status.to_owned(), detail });
    }
    ReproReport { schema_version: crate::cache::SCHEMA_VERSION, items: out }
}

fn threshold(n: u32, expected: u32) -> Result<String, String> {
    let record = qschmidt_core::schmidt_z::least_r(n, 2, 250);
    match record.r_found {
        Some(r) if r == expected => {
            Ok(format!("r({n},2) = {r}, {} witnesses", record.witnesses.len()))
        }
        Some(r) => Err(format!("r({n},2) = {r}, expected {expected}")),
        None => Err(format!("r({n},2) not found for r <= 250, expected {expected}")),
    }
}

fn failures_summary(reports: &[qschmidt_core::IdentityReport]) -> Result<String, String> {
    let failed: Vec<_> = reports.iter().filter(|r| !r.holds).collect();
    if failed.is_empty() {
        return Ok(format!("{} points hold", reports.len()));
    }
    let first = failed[0];
    Err(format!(
        "{} of {} points fail; first: {} at {}",
        failed.len(),
        reports.len(),
        first.identity,
        grids::params_line(&first.params)
    ))
}

fn thm11_grid() -> Result<String, String> {
    failures_summary(&grids::thm11(10, 4))
}

fn thm13_grid() -> Result<String, String> {
    failures_summary(&grids::thm13(10, 4))
}

fn lemma12_grid() -> Result<String, String> {
    failures_summary(&grids::lemma12(10, 4))
}

fn oracle_match() -> Result<String, String> {
    let mut t = Tables::new();
    let mut checked = 0;
    for k in 0..=4 {
        for r in 1..=4 {
            let by_recursion = t.p_table(k, r);
            let by_solve = t
                .p_oracle(k, r)
                .map_err(|e| format!("triangular solve failed at (k={k}, r={r}): {e}"))?;
            if by_recursion != by_solve {
                return Err(format!("table routes disagree at (k={k}, r={r})"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} slices agree across both construction routes"))
}

fn step_recursion() -> Result<String, String> {
    failures_summary(&grids::step(3, 3, &qschmidt_core::ExponentPlan::registry()))
}

fn pfaff_box() -> Result<String, String> {
    let reports = grids::pfaff_box(6);
    let failed = reports.iter().filter(|r| !r.holds).count();
    if failed == 0 {
        return Ok(format!("{} points hold", reports.len()));
    }
    // Verified finding, stated precisely: see the acceptance test of the
    // core crate for the full characterization.
    Err(format!(
        "{failed} of {} tuples fail, exactly those with M < m and N <= n; \
         minimal counterexample (m,n,M,N) = (1,0,0,0); the claim is false as \
         stated under the zero convention for out-of-range q-binomials",
        reports.len()
    ))
}

fn pfaff_sub() -> Result<String, String> {
    failures_summary(&grids::pfaff_substituted(8))
}

fn positivity() -> Result<String, String> {
    let mut t = Tables::new();
    for k in 0..=4u32 {
        for r in 1..=4 {
            for (i, p) in t.p_table(k, r).entries {
                if !p.is_nonneg() {
                    return Err(format!("P[{k},{i}] at r={r} has a negative coefficient"));
                }
            }
        }
    }
    for r in 1..=4u32 {
        for i in 0..=6 {
            if !t.b_poly(i, r).is_nonneg() {
                return Err(format!("b[{i}] at r={r} has a negative coefficient"));
            }
        }
        for i in 0..=8 {
            let c = t.c_poly(i, r).map_err(|e| e.to_string())?;
            if !c.is_polynomial() || !c.is_nonneg() {
                return Err(format!("c[{i}] at r={r} escapes the polynomial cone"));
            }
        }
    }
    Ok("P (k<=4), b (i<=6), c (i<=8) nonnegative for r<=4; c polynomial".to_owned())
}

fn closed_form_2() -> Result<String, String> {
    let mut t = Tables::new();
    for i in 0..=8u32 {
        let direct = t.c_poly(i, 2).map_err(|e| e.to_string())?;
        if direct != t.c2_closed_form(i) {
            return Err(format!("closed form differs at i={i}"));
        }
    }
    Ok("c at level 2 matches its closed form for i <= 8".to_owned())
}

fn bridge() -> Result<String, String> {
    let mut t = Tables::new();
    for r in 1..=4u32 {
        let classical = schmidt_numbers(r, 1, 6);
        for i in 0..=6usize {
            let c = t.c_poly(i as u32, r).map_err(|e| e.to_string())?;
            if BigRat::from_integer(c.eval_one()) != classical.values[i] {
                return Err(format!("q=1 specialization differs at (i={i}, r={r})"));
            }
        }
    }
    let one = BigRat::from_integer(BigInt::from(1));
    for r in [1u32, 2, 3, 4, 7] {
        if schmidt_numbers(r, r, 8).values.iter().any(|c| c != &one) {
            return Err(format!("equal exponents give a non-unit value at r={r}"));
        }
    }
    Ok("q=1 column sums match the classical solve; equal exponents give all ones".to_owned())
}

fn nonint_probe() -> Result<String, String> {
    let (k, value) =
        first_noninteger(3, 2, 10).ok_or("no non-integral entry found through k=10")?;
    if k != 3 || value != BigRat::new(BigInt::from(343), BigInt::from(5)) {
        return Err(format!(
            "expected the first non-integral entry 343/5 at k=3, got {value} at k={k}"
        ));
    }
    let table = schmidt_numbers(3, 2, 10);
    let mut bt = BinomTable::new();
    for n in 0..=10i64 {
        let mut lhs = BigRat::from_integer(BigInt::from(0));
        let mut rhs = lhs.clone();
        for k in 0..=n {
            let base = bt.binom(n, k) * bt.binom(n + k, k);
            lhs += BigRat::from_integer(&base * &base * &base);
            rhs += BigRat::from_integer(&base * &base) * &table.values[k as usize];
        }
        if lhs != rhs {
            return Err(format!("re-substitution leaves a residual on row n={n}"));
        }
    }
    Ok("c_3 = 343/5 at (r,s) = (3,2); full table satisfies every defining row".to_owned())
}

fn qbinom_props() -> Result<String, String> {
    let mut qb = QBinomTable::new();
    for n in 0..=20i64 {
        for k in 0..=n {
            let b = qb.qbinom(n, k);
            let deg = k * (n - k);
            if b.min_exp() != 0 || b.max_exp() != deg || !b.is_nonneg() {
                return Err(format!("shape violation at [{n},{k}]"));
            }
            if b != qb.qbinom(n, n - k) || b.reversed().shift(deg) != b {
                return Err(format!("symmetry violation at [{n},{k}]"));
            }
            let assembled = &(&b * &qschmidt_core::qcomb::qpoch(k as u32))
                * &qschmidt_core::qcomb::qpoch((n - k) as u32);
            if assembled != qschmidt_core::qcomb::qpoch(n as u32) {
                return Err(format!("product formula violation at [{n},{k}]"));
            }
        }
    }
    Ok("degree, positivity, symmetry, palindromy, product formula for n <= 20".to_owned())
}

fn ring_axioms() -> Result<String, String> {
    // Deterministic congruential sweep; the randomized version with a seeded
    // generator lives in the core crate's acceptance suite.
    let mut state = 9u64;
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state
    };
    let poly = |next: &mut dyn FnMut() -> u64| {
        let min_exp = (next() % 20) as i64 - 10;
        let len = next() % 8;
        let coeffs: Vec<i64> = (0..len).map(|_| (next() % 19) as i64 - 9).collect();
        LaurentPoly::from_coeffs(min_exp, coeffs)
    };
    for case in 0..1200 {
        let a = poly(&mut next);
        let b = poly(&mut next);
        let c = poly(&mut next);
        let laws = [
            &a + &b == &b + &a,
            &(&a + &b) + &c == &a + &(&b + &c),
            &a * &b == &b * &a,
            &(&a * &b) * &c == &a * &(&b * &c),
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            &a + &LaurentPoly::zero() == a,
            &a * &LaurentPoly::one() == a,
            (&a - &a).is_zero(),
        ];
        if laws.contains(&false) {
            return Err(format!("ring law violated on case {case}"));
        }
    }
    Ok("1200 randomized triples satisfy the commutative ring laws".to_owned())
}
