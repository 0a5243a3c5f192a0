//! Truncated formal power series with exact rational coefficients.
//!
//! A series of order `N` stores exactly the coefficients `c_0..c_N`.
//! Arithmetic between two series produces the minimum of their orders.

use std::fmt;

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::rational::{rat_to_string, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rat>,
}

impl TruncatedSeries {
    /// Build from `c_0..c_N`; the list length fixes the order.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        TruncatedSeries::new(values.iter().map(|&v| super::rational::rat_from_i64(v)).collect())
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = Rat::one();
        TruncatedSeries { coeffs }
    }

    /// Truncate a polynomial to a series of the given order.
    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        let coeffs = (0..=order).map(|i| p.coeff(i)).collect();
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> Self {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, rhs: &TruncatedSeries) -> Self {
        let n = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }

    pub fn mul(&self, rhs: &TruncatedSeries) -> Self {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiply by a polynomial, keeping this series' order.
    pub fn mul_polynomial(&self, p: &Polynomial) -> Self {
        let n = self.order();
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (j, b) in p.coeffs().iter().enumerate() {
            if b.is_zero() || j > n {
                continue;
            }
            for i in 0..=(n - j) {
                if self.coeffs[i].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Substitution `x -> x^t`, truncated at this series' order.
    pub fn compose_power(&self, t: usize) -> Self {
        assert!(t >= 1);
        let n = self.order();
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(t) {
                Some(k) if k <= n => coeffs[k] = c.clone(),
                _ => break,
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Decimation operator: coefficient `n` of the result is this series'
    /// coefficient `q^l * n + b`. The result order is `floor((N - b) / q^l)`.
    pub fn decimate(&self, q: u32, l: u32, b: u64) -> Result<TruncatedSeries> {
        if q < 2 {
            return Err(Error::DecimationBase(q));
        }
        let step = (q as u64)
            .checked_pow(l)
            .ok_or(Error::DecimationOutOfRange { b, modulus: u64::MAX })?;
        if b >= step {
            return Err(Error::DecimationOutOfRange { b, modulus: step });
        }
        let order = self.order() as u64;
        if b > order {
            return Err(Error::InsufficientOrder {
                order: self.order(),
                needed: b as usize,
            });
        }
        let count = (order - b) / step + 1;
        let coeffs = (0..count)
            .map(|n| self.coeffs[(step * n + b) as usize].clone())
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Comma-separated exact coefficients.
    pub fn to_csv(&self) -> String {
        self.coeffs
            .iter()
            .map(rat_to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{}]", self.to_csv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimate_thue_morse_even_part() {
        let f = TruncatedSeries::from_integers(&[1, -1, -1, 1, -1, 1, 1, -1]);
        let even = f.decimate(2, 1, 0).unwrap();
        assert_eq!(even, TruncatedSeries::from_integers(&[1, -1, -1, 1]));
    }

    #[test]
    fn decimate_identity_and_index_arithmetic() {
        let f = TruncatedSeries::from_integers(&[0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(f.decimate(2, 0, 0).unwrap(), f);
        // q=2, l=2, b=3 picks c_3, c_7
        assert_eq!(f.decimate(2, 2, 3).unwrap(), TruncatedSeries::from_integers(&[3, 7]));
    }

    #[test]
    fn decimate_bounds_checked() {
        let f = TruncatedSeries::from_integers(&[1, 2, 3]);
        assert!(f.decimate(2, 1, 2).is_err());
        assert!(f.decimate(1, 1, 0).is_err());
    }

    #[test]
    fn arithmetic_uses_min_order() {
        let a = TruncatedSeries::from_integers(&[1, 2, 3, 4]);
        let b = TruncatedSeries::from_integers(&[1, 1]);
        assert_eq!(a.add(&b).order(), 1);
        assert_eq!(a.mul(&b), TruncatedSeries::from_integers(&[1, 3]));
    }

    #[test]
    fn mul_polynomial_keeps_order() {
        let a = TruncatedSeries::from_integers(&[1, 1, 1, 1]);
        let p = Polynomial::from_integers(&[1, -1]);
        assert_eq!(a.mul_polynomial(&p), TruncatedSeries::from_integers(&[1, 0, 0, 0]));
    }
}
