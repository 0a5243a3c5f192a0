//! Exact-arithmetic toolkit for infinite products of polynomials.
//!
//! Everything revolves around the series
//!
//! ```text
//! F(x) = p(x) * p(x^q) * p(x^{q^2}) * ...        (and its inverse variant)
//! ```
//!
//! for a polynomial `p` with `p(0) = 1` and an integer base `q >= 2`.
//! The crate provides:
//!
//! - [`algebra`]: arbitrary-precision rationals, dense polynomials, truncated
//!   power series, decimation operators and cyclotomic factorization
//! - [`expansion`]: coefficient expansion of the product by recurrence and by
//!   an independent brute-force oracle
//! - [`automaticity`]: transition matrices, semigroup closure, DFAO
//!   extraction, q-kernel computation and the automaticity decision pipeline
//! - [`mahler`]: derivation and verification of linear functional equations
//!   `sum_i a_i(x) F(x^{q^i}) = 0`, candidate recovery from an equation,
//!   rationality testing and inverse-product root-condition checks
//! - [`search`]: exhaustive classification sweeps over bounded polynomial
//!   spaces with deterministic, resumable reports
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod algebra;
pub mod automaticity;
pub mod error;
pub mod expansion;
pub mod linalg;
pub mod mahler;
pub mod search;

pub use error::Error;

/// Crate version, echoed into output file headers by the CLI.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
