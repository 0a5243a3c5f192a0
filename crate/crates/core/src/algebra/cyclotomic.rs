//! Cyclotomic polynomials and cyclotomic trial-division factorization.
//!
//! Roots of unity are represented exactly through the cyclotomic polynomials
//! `Phi_n`; no numerical root finding happens anywhere in the crate.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::polynomial::Polynomial;
use super::rational::{Int, Rat};
use crate::error::{Error, Result};

pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The n-th cyclotomic polynomial, computed by dividing `x^n - 1` by the
/// product of `Phi_d` over proper divisors `d` of `n`. Monic with integer
/// coefficients, degree `phi(n)`.
pub fn cyclotomic(n: u64) -> Polynomial {
    assert!(n >= 1);
    cyclotomic_table(n)
        .into_iter()
        .last()
        .expect("table is nonempty")
        .1
}

/// `Phi_d` for every divisor `d` of `n`, ascending.
fn cyclotomic_table(n: u64) -> Vec<(u64, Polynomial)> {
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut table: Vec<(u64, Polynomial)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        // x^d - 1
        let mut coeffs = vec![Rat::zero(); d as usize + 1];
        coeffs[0] = -Rat::one();
        coeffs[d as usize] = Rat::one();
        let mut phi = Polynomial::new(coeffs);
        for (e, q) in &table {
            if d % e == 0 {
                phi = phi.exact_div(q).expect("Phi_e divides x^d - 1");
            }
        }
        table.push((d, phi));
    }
    table
}

/// A factorization `input = unit * remainder * prod Phi_n^{multiplicity}`.
///
/// The remainder is monic and has no cyclotomic divisor with index up to
/// the search bound `2 * deg(input)^2`; factors are sorted by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub factors: Vec<(u64, u32)>,
    pub remainder: Polynomial,
    pub unit: Rat,
}

impl CyclotomicFactorization {
    /// Rebuild `unit * remainder * prod Phi_n^m` exactly.
    pub fn reconstruct(&self) -> Polynomial {
        let mut acc = self.remainder.scale(&self.unit);
        for &(n, m) in &self.factors {
            let phi = cyclotomic(n);
            for _ in 0..m {
                acc = &acc * &phi;
            }
        }
        acc
    }

    /// True when every root of the input is a root of unity.
    pub fn is_fully_cyclotomic(&self) -> bool {
        self.remainder.is_one()
    }

    pub fn multiplicity(&self, n: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(i, _)| i == n)
            .map_or(0, |&(_, m)| m)
    }
}

/// Trial-divide by `Phi_n` for every candidate index.
///
/// Any cyclotomic divisor has `phi(n) <= deg(p)`, and `phi(n) >= sqrt(n/2)`
/// makes `n <= 2 deg(p)^2` a complete search bound.
pub fn cyclotomic_factorize(p: &Polynomial) -> Result<CyclotomicFactorization> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut work = p.clone();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let bound = 2 * (deg as u64) * (deg as u64);
    for n in 1..=bound.max(1) {
        let current_deg = work.degree().expect("work stays nonzero") as u64;
        if current_deg == 0 {
            break;
        }
        if euler_phi(n) > current_deg {
            continue;
        }
        let phi = cyclotomic(n);
        let mut mult = 0u32;
        while let Some(q) = work.exact_div(&phi) {
            work = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((n, mult));
        }
    }
    let lead = work.leading_coeff().expect("nonzero").clone();
    let remainder = work.monic();
    Ok(CyclotomicFactorization {
        factors,
        remainder,
        unit: lead,
    })
}

/// Rational roots with multiplicities, by the rational root theorem on the
/// primitive integer form. Returns pairs `(root, multiplicity)` sorted by
/// the root value; the `x = 0` root is included when present.
pub fn rational_roots(p: &Polynomial) -> Vec<(Rat, u32)> {
    if p.degree().is_none() {
        return Vec::new();
    }
    let mut work = p.clone();
    let mut roots: Vec<(Rat, u32)> = Vec::new();

    if let Some(v) = work.valuation() {
        if v > 0 {
            let mut coeffs = work.coeffs()[v..].to_vec();
            work = Polynomial::new(std::mem::take(&mut coeffs));
            roots.push((Rat::zero(), v as u32));
        }
    }

    let (_, prim) = work.primitive_integer();
    if prim.degree() == Some(0) {
        return roots;
    }
    let lead = prim.leading_coeff().expect("nonzero").numer().clone();
    let cons = prim.constant_term().numer().clone();
    let mut candidates: Vec<Rat> = Vec::new();
    for num in divisors_of(&cons) {
        for den in divisors_of(&lead) {
            for sgn in [1i64, -1] {
                let r = Rat::new(&num * Int::from(sgn), den.clone());
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
    }
    candidates.sort();
    let mut work = prim;
    for r in candidates {
        let mut mult = 0u32;
        // divide out (x - r) while it is a root
        let linear = Polynomial::new(vec![-r.clone(), Rat::one()]);
        while work.degree().map_or(false, |d| d >= 1) && work.eval(&r).is_zero() {
            work = work.exact_div(&linear).expect("r is a root");
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

/// Positive divisors of |n| (n nonzero), ascending.
fn divisors_of(n: &Int) -> Vec<Int> {
    let n = n.abs();
    assert!(!n.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Int::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Polynomial {
        Polynomial::from_integers(v)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), ints(&[1, 1]));
        assert_eq!(cyclotomic(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(5), ints(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(105).degree(), Some(euler_phi(105) as usize));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn factorize_one_minus_x() {
        let f = cyclotomic_factorize(&ints(&[1, -1])).unwrap();
        assert_eq!(f.factors, vec![(1, 1)]);
        assert!(f.remainder.is_one());
        assert_eq!(f.unit, super::super::rational::rat_from_i64(-1));
        assert_eq!(f.reconstruct(), ints(&[1, -1]));
    }

    #[test]
    fn factorize_paper_product() {
        // (x^2+x+1)(x^6-1)(x^4-1) = Phi1^2 Phi2^2 Phi3^2 Phi4 Phi6
        let p = ints(&[1, 1, 1, 0, -1, -1, -2, -1, -1, 0, 1, 1, 1]);
        let f = cyclotomic_factorize(&p).unwrap();
        assert_eq!(f.factors, vec![(1, 2), (2, 2), (3, 2), (4, 1), (6, 1)]);
        assert!(f.remainder.is_one());
        assert!(f.unit.is_one());
        assert_eq!(f.reconstruct(), p);
    }

    #[test]
    fn factorize_phi5() {
        let f = cyclotomic_factorize(&ints(&[1, 1, 1, 1, 1])).unwrap();
        assert_eq!(f.factors, vec![(5, 1)]);
        assert!(f.remainder.is_one());
    }

    #[test]
    fn factorize_with_remainder() {
        // (1-2x)(1+x): only Phi2 comes out
        let p = &ints(&[1, -2]) * &ints(&[1, 1]);
        let f = cyclotomic_factorize(&p).unwrap();
        assert_eq!(f.factors, vec![(2, 1)]);
        assert_eq!(f.remainder, ints(&[-1, 2]).monic());
        assert_eq!(f.reconstruct(), p);
    }

    #[test]
    fn rational_roots_examples() {
        // (x) (x-1)^2 (2x+3)
        let p = &(&ints(&[0, 1]) * &ints(&[-1, 1])) * &(&ints(&[-1, 1]) * &ints(&[3, 2]));
        let roots = rational_roots(&p);
        let expected: Vec<(Rat, u32)> = vec![
            (Rat::new(Int::from(-3), Int::from(2)), 1),
            (Rat::zero(), 1),
            (Rat::one(), 2),
        ];
        assert_eq!(roots, expected);
        // irreducible over Q
        assert!(rational_roots(&ints(&[1, 0, 1])).is_empty());
    }
}
