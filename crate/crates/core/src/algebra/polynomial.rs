//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree with no trailing zero entry;
//! the zero polynomial is the empty list (degree `None`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{rat_is_integer, rat_to_string, Int, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    /// Build from ascending-degree coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^d`.
    pub fn monomial(c: Rat, d: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); d + 1];
        coeffs[d] = c;
        Polynomial { coeffs }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Polynomial::new(values.iter().map(|&v| Rat::from_integer(Int::from(v))).collect())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// True when every coefficient is an integer.
    pub fn is_integer(&self) -> bool {
        self.coeffs.iter().all(rat_is_integer)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitution `x -> x^t`; the coefficient of `x^{t*i}` is this
    /// polynomial's coefficient of `x^i`.
    pub fn compose_power(&self, t: usize) -> Self {
        assert!(t >= 1, "compose_power requires t >= 1");
        if self.is_zero() || t == 1 {
            return self.clone();
        }
        let d = self.coeffs.len() - 1;
        let mut coeffs = vec![Rat::zero(); d * t + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * t] = c.clone();
        }
        Polynomial { coeffs }
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = div.degree().ok_or(Error::DivisionByZero)?;
        let lead = div.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() < div.coeffs.len() {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![Rat::zero(); qlen];
        let mut top = rem.len();
        while top > dd {
            let k = top - 1;
            if !rem[k].is_zero() {
                let factor = &rem[k] / &lead;
                let shift = k - dd;
                for (j, dc) in div.coeffs.iter().enumerate() {
                    let t = &factor * dc;
                    rem[shift + j] -= t;
                }
                quot[shift] = factor;
            }
            top = k;
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact quotient when `div` divides `self`, else `None`.
    pub fn exact_div(&self, div: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(div).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.exact_div(self).is_some()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => Polynomial::zero(),
            Some(lc) => {
                let inv = Rat::one() / lc;
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Index of the lowest nonzero coefficient (`None` for zero).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `(unit, primitive)` with `unit * primitive = self`, where `primitive`
    /// has coprime integer coefficients and positive leading coefficient.
    pub fn primitive_integer(&self) -> (Rat, Polynomial) {
        if self.is_zero() {
            return (Rat::one(), Polynomial::zero());
        }
        let mut den_lcm = Int::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<Int> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        let mut content = Int::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().expect("nonzero").is_negative() {
            content = -content;
        }
        let prim = Polynomial::new(
            ints.iter().map(|v| Rat::from_integer(v / &content)).collect(),
        );
        (Rat::new(content, den_lcm), prim)
    }

    /// Render in the input grammar. `descending` flips the term order.
    pub fn to_text(&self, descending: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let degrees: Vec<usize> = if descending {
            (0..self.coeffs.len()).rev().collect()
        } else {
            (0..self.coeffs.len()).collect()
        };
        for d in degrees {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let abs = c.abs();
            if d == 0 {
                out.push_str(&rat_to_string(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&rat_to_string(&abs));
                    out.push('*');
                }
                out.push('x');
                if d > 1 {
                    out.push_str(&format!("^{d}"));
                }
            }
        }
        out
    }

    /// Coefficients as exact strings, ascending degree.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }

    pub fn from_coeff_strings(strs: &[String]) -> Result<Polynomial> {
        let coeffs = strs
            .iter()
            .map(|s| super::rational::rat_parse(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coeffs))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_text(false))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        Polynomial::new(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Polynomial {
        Polynomial::from_integers(v)
    }

    #[test]
    fn mul_basic() {
        // (1+x)(1-x) = 1-x^2
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
    }

    #[test]
    fn div_rem_exact_factor() {
        // x^2-1 by x-1 -> (x+1, 0)
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[-1, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn div_rem_degree_invariant() {
        let a = p(&[3, 1, -2, 0, 5]);
        let b = p(&[-1, 2, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
    }

    #[test]
    fn division_by_zero_rejected() {
        assert!(p(&[1]).div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(x^4-1, x^6-1) = x^2-1
        let g = p(&[-1, 0, 0, 0, 1]).gcd(&p(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(g, p(&[-1, 0, 1]));
    }

    #[test]
    fn compose_power_examples() {
        assert_eq!(p(&[1, 1]).compose_power(2), p(&[1, 0, 1]));
        assert_eq!(p(&[1, 1, 1, 1, 1]).compose_power(2), p(&[1, 0, 1, 0, 1, 0, 1, 0, 1]));
        assert_eq!(p(&[1, -1]).compose_power(4), p(&[1, 0, 0, 0, -1]));
    }

    #[test]
    fn zero_trimming_and_degree() {
        let z = Polynomial::new(vec![Rat::zero(), Rat::zero()]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&[1, 1]).degree(), Some(1));
    }

    #[test]
    fn primitive_integer_parts() {
        let (unit, prim) = Polynomial::new(vec![
            Rat::new(Int::from(-2), Int::from(3)),
            Rat::new(Int::from(-4), Int::from(3)),
        ])
        .primitive_integer();
        // -2/3 - 4/3 x = -2/3 (1 + 2x)
        assert_eq!(prim, p(&[1, 2]));
        assert_eq!(unit, Rat::new(Int::from(-2), Int::from(3)));
    }

    #[test]
    fn text_rendering() {
        assert_eq!(p(&[1, 1, 0, -1, -1]).to_text(false), "1+x-x^3-x^4");
        assert_eq!(p(&[1, 1, 0, -1, -1]).to_text(true), "-x^4-x^3+x+1");
        assert_eq!(Polynomial::zero().to_text(false), "0");
        let half_x = Polynomial::new(vec![Rat::zero(), Rat::new(Int::from(1), Int::from(2))]);
        assert_eq!(half_x.to_text(false), "1/2*x");
    }
}
