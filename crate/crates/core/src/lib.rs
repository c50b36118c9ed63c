//! Exact construction and analysis of rising-factorial determinant polynomials.
//!
//! The crate is organised in five layers:
//!
//! * [`exactmath`]: rationals, dense polynomials and combinatorial primitives.
//! * [`detpoly`]: the polynomials `Q_n^{α,β}`, `P_n` and `P_n^r`, each built by
//!   more than one independent route, and the `Φ_k` decomposition.
//! * [`pfgen`]: random Pólya frequency sequences and exact `PF_r` membership checks.
//! * [`rootcheck`]: exact predicates (positive coefficients, Hurwitz stability,
//!   real negative roots) and the majorization / weighted-sum lemma checkers.
//! * [`harness`]: deterministic, optionally parallel conjecture campaigns with
//!   shrinking and JSON/CSV reports.

pub mod detpoly;
pub mod error;
pub mod exactmath;
pub mod harness;
pub mod pfgen;
pub mod rootcheck;

pub use error::{Error, Result};
pub use exactmath::{Multiset, Polynomial, Rational};
