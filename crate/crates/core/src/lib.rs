//! Exact q-series arithmetic for Dedekind eta quotients.
//!
//! The crate expands eta quotients as integer power series, evaluates the
//! closed-form coefficient formulas tied to sums of two squares, computes
//! the Hilbert-scheme point-count polynomials C_n(x), and machine-verifies
//! the identities connecting all of these to configurable truncation
//! orders. No floating point is used anywhere: coefficients live in exact
//! rings (big integers, rationals, Q(zeta_12), integer Laurent
//! polynomials).
//!
//! Module map:
//! - [`ring`]: the coefficient rings and the shared [`ring::Ring`] contract
//! - [`series`]: truncated power series over any ring
//! - [`eta`]: eta quotients and their Euler-product expansions
//! - [`arith`]: scalar arithmetic functions and closed coefficient forms
//! - [`hilbert`]: the polynomials C_n(x), P_n(x) and specializations a_k(n)
//! - [`verify`]: the identity harness producing machine-readable reports
//! - [`oeis`]: b-file fixtures, cache, fetcher, and sequence comparison

pub mod arith;
pub mod eta;
pub mod hilbert;
pub mod oeis;
pub mod ring;
pub mod series;
pub mod verify;

pub use arith::RootOrder;
pub use eta::{EtaQuotient, NamedQuotient};
pub use ring::{Cyclo12, Int, LaurentPoly, Rat, Ring, RingError};
pub use series::TruncatedSeries;
pub use verify::{CoeffReport, VerifyConfig};
