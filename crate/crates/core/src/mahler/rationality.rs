//! Rationality of the infinite product.
//!
//! `prod p(x^{q^s})` is a rational function exactly when `p(x) = Q(x^q)/Q(x)`
//! for a polynomial `Q` with `Q(0) = 1` whose roots are roots of unity with
//! root set closed under q-th powers; the product then telescopes to `1/Q`.
//! The cofactor `Q` is forced coefficient-by-coefficient, so failures carry a
//! canonical witness: the index of the `Q` coefficient that the triangular
//! solve re-determines inconsistently.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{cyclotomic_factorize, Polynomial, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalityResult {
    Rational {
        /// The cofactor with `Q(0) = 1`, `p(x) Q(x) = Q(x^q)` exactly.
        q_poly: Polynomial,
        /// Pairs `(n, n/gcd(n,q))` for each cyclotomic index of `Q`; the
        /// second component is again an index of `Q`, certifying closure of
        /// the root set under q-th powers.
        closure_certificate: Vec<(u64, u64)>,
    },
    NotRational {
        /// Index of the inconsistently forced `Q` coefficient, when the
        /// failure happens inside the linear solve (absent for the degree
        /// obstruction).
        witness: Option<usize>,
    },
}

impl RationalityResult {
    pub fn is_rational(&self) -> bool {
        matches!(self, RationalityResult::Rational { .. })
    }
}

pub fn rationality_test(p: &Polynomial, q: u32) -> Result<RationalityResult> {
    if !p.constant_term().is_one() {
        return Err(Error::InvalidProductSpec(
            "rationality test requires p(0) = 1".into(),
        ));
    }
    let deg_p = p
        .degree()
        .filter(|&d| d >= 1)
        .ok_or(Error::ConstantPolynomial)?;
    let q_us = q as usize;
    if deg_p % (q_us - 1) != 0 {
        // deg Q would have to be deg p / (q - 1)
        return Ok(RationalityResult::NotRational { witness: None });
    }
    let d = deg_p / (q_us - 1);

    // triangular solve of Q(x^q) = p(x) Q(x), Q_0 = 1
    let mut qc: Vec<Rat> = Vec::with_capacity(d + 1);
    qc.push(Rat::one());
    for t in 1..=d {
        let lhs = if t % q_us == 0 { qc[t / q_us].clone() } else { Rat::zero() };
        let mut sum = Rat::zero();
        for s in 1..=deg_p.min(t) {
            let ps = p.coeff(s);
            if !ps.is_zero() {
                sum += ps * &qc[t - s];
            }
        }
        qc.push(lhs - sum);
    }
    for t in d + 1..=q_us * d {
        let lhs = if t % q_us == 0 && t / q_us <= d {
            qc[t / q_us].clone()
        } else {
            Rat::zero()
        };
        let mut rhs = Rat::zero();
        for s in t.saturating_sub(d)..=deg_p.min(t) {
            let ps = p.coeff(s);
            if !ps.is_zero() {
                rhs += ps * &qc[t - s];
            }
        }
        if lhs != rhs {
            return Ok(RationalityResult::NotRational {
                witness: Some(blamed_coefficient(p, q_us, d, t)),
            });
        }
    }

    let q_poly = Polynomial::new(qc);
    debug_assert_eq!(
        &q_poly.compose_power(q_us),
        &(p * &q_poly),
        "triangular solve guarantees the identity"
    );

    // every root of Q must be a root of unity with q-th-power-closed orbit
    let f = cyclotomic_factorize(&q_poly).expect("Q nonzero");
    if !f.remainder.is_one() {
        return Ok(RationalityResult::NotRational { witness: None });
    }
    let indices: Vec<u64> = f.factors.iter().map(|&(n, _)| n).collect();
    let mut certificate = Vec::with_capacity(indices.len());
    for &n in &indices {
        let image = n / n.gcd(&(q as u64));
        if !indices.contains(&image) {
            return Ok(RationalityResult::NotRational { witness: None });
        }
        certificate.push((n, image));
    }
    Ok(RationalityResult::Rational {
        q_poly,
        closure_certificate: certificate,
    })
}

/// The highest `Q` coefficient appearing with nonzero symbolic weight in the
/// failed constraint at `x^t`.
fn blamed_coefficient(p: &Polynomial, q: usize, d: usize, t: usize) -> usize {
    for u in (0..=d).rev() {
        let mut w = Rat::zero();
        if t % q == 0 && t / q == u {
            w += Rat::one();
        }
        if t >= u && t - u <= p.degree().unwrap_or(0) {
            w -= p.coeff(t - u);
        }
        if !w.is_zero() {
            return u;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly_parse;
    use crate::expansion::{expand_product, series_inverse, ProductSpec};

    fn parse(s: &str) -> Polynomial {
        poly_parse(s).unwrap()
    }

    #[test]
    fn one_plus_x_is_rational() {
        match rationality_test(&parse("1+x"), 2).unwrap() {
            RationalityResult::Rational { q_poly, closure_certificate } => {
                assert_eq!(q_poly, parse("1-x"));
                assert_eq!(closure_certificate, vec![(1, 1)]);
            }
            other => panic!("expected rational, got {other:?}"),
        }
    }

    #[test]
    fn one_minus_x_is_not_rational() {
        match rationality_test(&parse("1-x"), 2).unwrap() {
            RationalityResult::NotRational { witness } => assert_eq!(witness, Some(1)),
            other => panic!("expected not rational, got {other:?}"),
        }
    }

    #[test]
    fn base_three_example() {
        match rationality_test(&parse("1+x+x^2"), 3).unwrap() {
            RationalityResult::Rational { q_poly, .. } => assert_eq!(q_poly, parse("1-x")),
            other => panic!("expected rational, got {other:?}"),
        }
    }

    #[test]
    fn degree_obstruction() {
        // q = 3 needs deg p divisible by 2
        match rationality_test(&parse("1+x+x^2+x^3"), 3).unwrap() {
            RationalityResult::NotRational { witness } => assert_eq!(witness, None),
            other => panic!("expected not rational, got {other:?}"),
        }
    }

    #[test]
    fn telescoping_against_expansion() {
        // when rational, the expansion equals the truncate of 1/Q
        for (p, q) in [("1+x", 2u32), ("1+x+x^2", 3), ("1+x^2", 2)] {
            let poly = parse(p);
            if let RationalityResult::Rational { q_poly, .. } =
                rationality_test(&poly, q).unwrap()
            {
                let spec = ProductSpec::forward(poly, q).unwrap();
                let lhs = expand_product(&spec, 512);
                let rhs = series_inverse(&q_poly, 512).unwrap();
                assert_eq!(lhs, rhs, "{p}");
            } else {
                panic!("{p} should be rational");
            }
        }
    }

    #[test]
    fn certificate_closure_property() {
        // p = 1+x^2, q=2: Q = 1-x^2 = -(Phi1 Phi2), indices {1, 2}, 2 -> 1
        match rationality_test(&parse("1+x^2"), 2).unwrap() {
            RationalityResult::Rational { q_poly, closure_certificate } => {
                assert_eq!(q_poly, parse("1-x^2"));
                assert_eq!(closure_certificate, vec![(1, 1), (2, 1)]);
            }
            other => panic!("expected rational, got {other:?}"),
        }
    }
}
