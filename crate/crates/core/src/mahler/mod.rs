//! Linear functional equations `sum_{i=0}^{m} a_i(x) F(x^{q^i}) = 0` with
//! polynomial coefficients: derivation, verification, candidate recovery,
//! rationality of the product, and root conditions for inverse products.

mod candidates;
mod derive;
mod inverse;
mod rationality;

use serde::{Deserialize, Serialize};

pub use candidates::{candidates_from_equation, CandidateSet};
pub use derive::derive_equation;
pub use inverse::{find_cofactor, inverse_regularity_necessary, InverseRegularityReport};
pub use rationality::{rationality_test, RationalityResult};

use crate::algebra::{Polynomial, TruncatedSeries};
use crate::error::{Error, Result};

/// A linear Mahler-type functional equation, stored as the coefficient
/// polynomials `a_0(x)..a_m(x)`.
///
/// `verified_to` is truncation evidence, never proof: the largest order at
/// which the residual has been checked to vanish against some series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MahlerEquation {
    q: u32,
    coefficients: Vec<Polynomial>,
    verified_to: Option<usize>,
}

impl MahlerEquation {
    /// Requires a nonempty coefficient list whose first and last entries are
    /// not both zero.
    pub fn new(q: u32, coefficients: Vec<Polynomial>) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidEquation(format!("q must be >= 2, got {q}")));
        }
        if coefficients.is_empty() {
            return Err(Error::InvalidEquation("no coefficient polynomials".into()));
        }
        let first_zero = coefficients.first().expect("nonempty").is_zero();
        let last_zero = coefficients.last().expect("nonempty").is_zero();
        if first_zero && last_zero {
            return Err(Error::InvalidEquation(
                "a_0 and a_m must not both be zero".into(),
            ));
        }
        Ok(MahlerEquation {
            q,
            coefficients,
            verified_to: None,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// The order `m` of the equation.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn coefficient(&self, i: usize) -> &Polynomial {
        &self.coefficients[i]
    }

    pub fn verified_to(&self) -> Option<usize> {
        self.verified_to
    }

    pub(crate) fn with_verified_to(mut self, order: Option<usize>) -> Self {
        self.verified_to = order;
        self
    }

    /// The residual series `sum_i a_i(x) F(x^{q^i})` truncated at the order
    /// of `coeffs`.
    pub fn residual(&self, coeffs: &TruncatedSeries) -> TruncatedSeries {
        let order = coeffs.order();
        let mut acc = TruncatedSeries::new(vec![crate::algebra::Rat::from_integer(0.into()); order + 1]);
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let step = (self.q as usize)
                .checked_pow(i as u32)
                .unwrap_or(usize::MAX);
            let composed = coeffs.compose_power(step);
            acc = acc.add(&composed.mul_polynomial(a));
        }
        acc
    }

    /// Human-readable rendering like `(x^4-1)F(x^4)+(1+x)F(x^2)-xF(x) = 0`.
    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let arg = if i == 0 {
                "x".to_string()
            } else {
                format!("x^{}", (self.q as u64).pow(i as u32))
            };
            parts.push(format!("({})*F({})", a.to_text(false), arg));
        }
        format!("{} = 0", parts.join(" + "))
    }

    pub fn to_json(&self) -> JsonEquation {
        JsonEquation {
            q: self.q,
            coefficients: self
                .coefficients
                .iter()
                .map(Polynomial::coeff_strings)
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serialization cannot fail")
    }

    /// Parse the JSON form; lines starting with `#` are skipped.
    pub fn from_json_str(text: &str) -> Result<MahlerEquation> {
        let body: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .collect::<Vec<_>>()
            .join("\n");
        let json: JsonEquation =
            serde_json::from_str(&body).map_err(|e| Error::Json(e.to_string()))?;
        let coefficients = json
            .coefficients
            .iter()
            .map(|c| Polynomial::from_coeff_strings(c))
            .collect::<Result<Vec<_>>>()?;
        MahlerEquation::new(json.q, coefficients)
    }

    /// True when `other` spans the same coefficient line up to a scalar.
    pub fn proportional_to(&self, other: &[Polynomial]) -> bool {
        if self.coefficients.len() != other.len() {
            return false;
        }
        // find a nonzero pair to fix the ratio
        let mut ratio: Option<crate::algebra::Rat> = None;
        for (a, b) in self.coefficients.iter().zip(other) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (false, false) => {
                    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
                    if da != db {
                        return false;
                    }
                    let r = a.leading_coeff().unwrap() / b.leading_coeff().unwrap();
                    match &ratio {
                        None => ratio = Some(r),
                        Some(prev) if *prev == r => {}
                        _ => return false,
                    }
                }
                _ => return false,
            }
        }
        let Some(r) = ratio else { return false };
        self.coefficients
            .iter()
            .zip(other)
            .all(|(a, b)| *a == b.scale(&r))
    }
}

#[derive(Serialize, Deserialize)]
pub struct JsonEquation {
    pub q: u32,
    pub coefficients: Vec<Vec<String>>,
}

/// Largest `T'` at or below the series order such that the residual
/// vanishes through `x^{T'}`; `None` when it is already nonzero at order 0.
pub fn verify_equation(eq: &MahlerEquation, coeffs: &TruncatedSeries) -> Option<usize> {
    let residual = eq.residual(coeffs);
    for (t, r) in residual.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(r) {
            return t.checked_sub(1);
        }
    }
    Some(coeffs.order())
}
