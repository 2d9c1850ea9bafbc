//! Parameter-grid runners for the verification suites.
//!
//! Every runner is a parallel map over an explicit point list followed by an
//! order-preserving collect, with one memo table per worker; results are
//! pure functions of the grid point, so the schedule cannot change output.

use std::collections::BTreeMap;

use rayon::prelude::*;

use qschmidt_core::qcomb::{verify_pfaff, verify_pfaff_substituted};
use qschmidt_core::{ExponentPlan, IdentityReport, QBinomTable, Tables};

pub fn thm11(n_max: u32, r_max: u32) -> Vec<IdentityReport> {
    let points: Vec<(u32, u32)> =
        (0..=n_max).flat_map(|n| (1..=r_max).map(move |r| (n, r))).collect();
    points.par_iter().map_init(Tables::new, |t, &(n, r)| t.verify_theorem11(n, r)).collect()
}

pub fn thm13(n_max: u32, r_max: u32) -> Vec<IdentityReport> {
    let points: Vec<(u32, u32)> =
        (0..=n_max).flat_map(|n| (1..=r_max).map(move |r| (n, r))).collect();
    points.par_iter().map_init(Tables::new, |t, &(n, r)| t.verify_theorem13(n, r)).collect()
}

pub fn lemma12(n_max: u32, r_max: u32) -> Vec<IdentityReport> {
    let points: Vec<(u32, u32, u32)> = (0..=n_max)
        .flat_map(|n| (0..=n).flat_map(move |k| (1..=r_max).map(move |r| (n, k, r))))
        .collect();
    points.par_iter().map_init(Tables::new, |t, &(n, k, r)| t.verify_lemma(n, k, r)).collect()
}

pub fn step(k_max: u32, r_max: u32, plans: &[ExponentPlan]) -> Vec<IdentityReport> {
    let points: Vec<(usize, u32, u32, u32)> = (0..plans.len())
        .flat_map(|p| {
            (0..=k_max).flat_map(move |k| {
                (1..=r_max).flat_map(move |r| (k..=(r + 1) * k).map(move |i| (p, k, r, i)))
            })
        })
        .collect();
    points
        .par_iter()
        .map_init(Tables::new, |t, &(p, k, r, i)| t.verify_step_recursion(k, i, r, &plans[p]))
        .collect()
}

fn bool_report(identity: &str, params: &[(&str, i64)], holds: bool) -> IdentityReport {
    IdentityReport {
        identity: identity.to_owned(),
        params: params.iter().map(|(k, v)| ((*k).to_owned(), *v)).collect(),
        holds,
        lhs: None,
        rhs: None,
    }
}

/// The balanced summation over the whole box 0 <= m, n, M, N <= max, checked
/// as stated, with no constraint tying M to m. The region M < m, N <= n
/// genuinely fails under the zero convention for out-of-range q-binomials;
/// the runner reports what it finds.
pub fn pfaff_box(max: i64) -> Vec<IdentityReport> {
    let points: Vec<(i64, i64, i64, i64)> = (0..=max)
        .flat_map(|m| {
            (0..=max).flat_map(move |n| {
                (0..=max).flat_map(move |big_m| (0..=max).map(move |big_n| (m, n, big_m, big_n)))
            })
        })
        .collect();
    points
        .par_iter()
        .map_init(QBinomTable::new, |qb, &(m, n, big_m, big_n)| {
            let holds = verify_pfaff(qb, m, n, big_m, big_n);
            bool_report(
                "balanced-summation-box",
                &[("m", m), ("n", n), ("M", big_m), ("N", big_n)],
                holds,
            )
        })
        .collect()
}

/// The substituted balanced summation over 0 <= k, i <= n <= n_max. A
/// rearrangement failure inside the checker is reported as a failing point
/// with the error text attached.
pub fn pfaff_substituted(n_max: i64) -> Vec<IdentityReport> {
    let points: Vec<(i64, i64, i64)> = (0..=n_max)
        .flat_map(|n| (0..=n).flat_map(move |k| (0..=n).map(move |i| (n, k, i))))
        .collect();
    points
        .par_iter()
        .map_init(QBinomTable::new, |qb, &(n, k, i)| {
            let params = [("n", n), ("k", k), ("i", i)];
            match verify_pfaff_substituted(qb, n, k, i) {
                Ok(holds) => bool_report("balanced-summation-substituted", &params, holds),
                Err(e) => {
                    let mut report = bool_report("balanced-summation-substituted", &params, false);
                    report.lhs = Some(format!("rearrangement failed: {e}"));
                    report
                }
            }
        })
        .collect()
}

/// Renders a params map as "k=1 n=2 r=3" (alphabetical by key).
pub fn params_line(params: &BTreeMap<String, i64>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}
