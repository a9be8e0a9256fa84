//! Exact statistics of gcd(n, phi(n)) under bounded multiplicative weights,
//! together with the asymptotic main terms they converge to.
//!
//! The library has two halves that are kept deliberately independent and
//! are compared against each other by the verification suites:
//!
//! * the *empirical* half ([`arith`], [`scan`]) streams exact Euler-phi
//!   values over n <= x and counts things;
//! * the *prediction* half ([`asympt`]) evaluates the main-term product,
//!   the prime-sum correction Q_g, divisibility predictions, expansion
//!   coefficients and the supporting constants, all numerically with
//!   explicit truncation certificates.
//!
//! [`report`] and the `phigcd` binary tie the two together into CSV/JSON
//! comparison reports.

pub mod arith;
pub mod asympt;
pub mod cli;
pub mod error;
pub mod multiplicative;
pub mod report;
pub mod scan;
pub mod verify;

pub use error::{Error, Result};
