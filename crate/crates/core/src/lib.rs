//! Exact arithmetic for Schmidt-type binomial sums and their q-analogues.
//!
//! Sums of the shape `sum_k C(n,k)^r * C(n+k,k)^r` can be re-expanded in the
//! basis `C(n,i) * C(n+i,i)` with integer connection coefficients, and the
//! same happens one level up for Gaussian binomials, where the connection
//! coefficients become Laurent polynomials in q with nonnegative integer
//! coefficients. This crate builds those tables exactly and verifies the
//! identities behind them at desk scale:
//!
//! * [`bigmath`]: arbitrary-precision integers and rationals, plus dense
//!   Laurent polynomials with structural equality. No floating point.
//! * [`qcomb`]: Gaussian binomials via the Pascal recurrence, q-Pochhammer
//!   products, classical binomials, and the Pfaff-Saalschutz checks.
//! * [`schmidt_q`]: the P/T/b/c coefficient tables, built two independent
//!   ways (row recursion vs. triangular solve), with identity verifiers.
//! * [`schmidt_z`]: the q = 1 side; triangular solves for the integer
//!   connection coefficients and searches for integrality thresholds.
//!
//! # Quick start
//!
//! ```
//! use qschmidt_core::{schmidt_z, Tables};
//!
//! let mut tables = Tables::new();
//! let c = tables.c_poly(2, 2).unwrap();
//! assert_eq!(c.to_string(), "2 + 3q + 3q^2 + q^3 + q^4");
//!
//! // Evaluating at q = 1 lands on the integer coefficients.
//! let table = schmidt_z::schmidt_numbers(2, 1, 2);
//! assert_eq!(c.eval_one(), table.values[2].numer().clone());
//! ```

pub mod bigmath;
pub mod qcomb;
pub mod schmidt_q;
pub mod schmidt_z;

pub use bigmath::{BigInt, BigRat, LaurentPoly};
pub use qcomb::{BinomTable, QBinomTable};
pub use schmidt_q::{ExponentPlan, IdentityReport, PTable, Tables};
pub use schmidt_z::{SchmidtTable, SearchRecord};
