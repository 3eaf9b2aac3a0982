//! Exact q-series toolkit for refined q-trinomial identities.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`] and [`series`]: Laurent polynomials with half-integer exponents
//!   and truncated power series over big integers.
//! * [`qprim`]: q-Pochhammer symbols, Gaussian binomials, finite q-exponential
//!   sums and theta series.
//! * [`trinomials`]: the Andrews-Baxter q-trinomials and Warnaar's refined
//!   trinomials with limit-stabilization checks.
//! * [`catalog`]: every identity as a pair of independently computed sides,
//!   plus the Bailey-type transform operators.
//! * [`recurrence`]: summand and sum recurrences, boundary rows and the
//!   reconstruction of the seed polynomials from them.
//! * [`partitions`]: brute-force partition counts used as oracles.
//! * [`sweep`]: batch verification, parallel when the `parallel` feature is on.

pub mod error;
pub mod poly;
pub mod qprim;
pub mod series;
mod sums;
pub mod trinomials;
pub mod catalog;
pub mod recurrence;
pub mod partitions;
pub mod sweep;

pub use error::{Error, Result};
pub use poly::{HalfExp, LaurentPoly, Mismatch};
pub use qprim::{MonomialArg, qbinom};
pub use series::TruncatedSeries;
