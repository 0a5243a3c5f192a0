//! Exact rational arithmetic, dense polynomials, truncated power series and
//! cyclotomic machinery; the substrate for every other module.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here is safe to share between threads.

mod cyclotomic;
mod parser;
mod polynomial;
pub mod rational;
mod series;

pub use cyclotomic::{cyclotomic, cyclotomic_factorize, euler_phi, rational_roots, CyclotomicFactorization};
pub use parser::poly_parse;
pub use polynomial::Polynomial;
pub use rational::{rat_from_i64, rat_parse, rat_to_string, Int, Rat};
pub use series::TruncatedSeries;
