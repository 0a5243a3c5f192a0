//! Root conditions for inverse products `prod 1/p(x^{q^s})`.
//!
//! Necessary conditions for the coefficient sequence to be q-regular: every
//! root of `p` is a root of unity and the order of every root is a multiple
//! of `q`. The modulus-one condition is represented by its exact surrogate
//! (cyclotomic remainder 1); no numerical root finding is performed.
//!
//! When the conditions hold, a cofactor `Q` with `p(x) Q(x) | Q(x^q)` is
//! searched among cyclotomic products within caller-supplied bounds.

use num_integer::Integer;
use num_traits::One;

use crate::algebra::{cyclotomic, cyclotomic_factorize, CyclotomicFactorization, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct InverseRegularityReport {
    /// Cyclotomic remainder is 1: every root is a root of unity.
    pub all_roots_roots_of_unity: bool,
    /// Every cyclotomic index `n` in the factorization satisfies `q | n`.
    pub all_orders_multiple_of_q: bool,
    /// Exact surrogate for the modulus-one condition; alias of the first
    /// check by construction.
    pub modulus_one_necessary: bool,
    pub factorization: CyclotomicFactorization,
}

impl InverseRegularityReport {
    /// A false value on either root condition certifies that the inverse
    /// product is not q-regular, hence not automatic.
    pub fn passes(&self) -> bool {
        self.all_roots_roots_of_unity && self.all_orders_multiple_of_q
    }
}

pub fn inverse_regularity_necessary(p: &Polynomial, q: u32) -> Result<InverseRegularityReport> {
    if !p.constant_term().is_one() {
        return Err(Error::InvalidProductSpec(
            "inverse-product checks require p(0) = 1".into(),
        ));
    }
    let factorization = cyclotomic_factorize(p)?;
    let all_roots_roots_of_unity = factorization.is_fully_cyclotomic();
    let all_orders_multiple_of_q = factorization
        .factors
        .iter()
        .all(|&(n, _)| n % q as u64 == 0);
    Ok(InverseRegularityReport {
        all_roots_roots_of_unity,
        all_orders_multiple_of_q,
        modulus_one_necessary: all_roots_roots_of_unity,
        factorization,
    })
}

/// Bounded search for `Q = prod Phi_n^{e_n}` (indices up to `max_index`,
/// multiplicities up to `max_mult`) with `p(x) Q(x) | Q(x^q)`.
///
/// Returns the lexicographically least exponent vector, which is also the
/// pointwise-least feasible one: writing `sigma(m) = m / gcd(m, q)`, the
/// exponent of `Phi_m` in `Q(x^q)` is `e_{sigma(m)}`, so feasibility is the
/// constraint system `e_{sigma(m)} >= e_m + f_m` (with `f` the exponents of
/// `p`), and the least solution propagates up the `sigma` chains.
///
/// `None` means the bounded search failed; it is not a disproof.
pub fn find_cofactor(
    p: &Polynomial,
    q: u32,
    max_index: u64,
    max_mult: u32,
) -> Result<Option<(Polynomial, Polynomial)>> {
    if !p.constant_term().is_one() {
        return Err(Error::InvalidProductSpec(
            "inverse-product checks require p(0) = 1".into(),
        ));
    }
    let f = cyclotomic_factorize(p)?;
    if !f.remainder.is_one() {
        return Ok(None);
    }
    let q64 = q as u64;
    let max_f_index = f.factors.last().map_or(0, |&(n, _)| n);
    let horizon = q64 * max_index.max(max_f_index).max(1);
    let mult_of = |n: u64| -> u64 {
        f.factors
            .iter()
            .find(|&&(i, _)| i == n)
            .map_or(0, |&(_, m)| m as u64)
    };
    // self-loops: sigma(m) = m exactly when gcd(m, q) = 1
    for &(n, _) in &f.factors {
        if n.gcd(&q64) == 1 {
            return Ok(None);
        }
    }

    let mut need = vec![0u64; horizon as usize + 1];
    for m in (1..=horizon).rev() {
        let mut req = 0u64;
        let mut child = 2 * m;
        // children c of m satisfy sigma(c) = m, hence c = m * gcd(c, q) <= m q
        while child <= q64 * m {
            if child <= horizon && child / child.gcd(&q64) == m {
                let contribution = need[child as usize] + mult_of(child);
                req = req.max(contribution);
            }
            child += m;
        }
        need[m as usize] = req;
    }

    for m in 1..=horizon {
        let n = need[m as usize];
        if m > max_index && n > 0 {
            return Ok(None);
        }
        if n > max_mult as u64 {
            return Ok(None);
        }
    }

    let mut q_poly = Polynomial::one();
    for n in 1..=max_index {
        let e = need[n as usize];
        if e > 0 {
            let phi = cyclotomic(n);
            for _ in 0..e {
                q_poly = &q_poly * &phi;
            }
        }
    }
    // normalize so Q(0) = 1
    if !q_poly.constant_term().is_one() {
        q_poly = -&q_poly;
    }
    let numerator = q_poly.compose_power(q as usize);
    let denominator = &q_poly * p;
    match numerator.exact_div(&denominator) {
        Some(r) => Ok(Some((q_poly, r))),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly_parse;

    fn parse(s: &str) -> Polynomial {
        poly_parse(s).unwrap()
    }

    #[test]
    fn order_condition_fails_for_one_minus_x_squared() {
        let r = inverse_regularity_necessary(&parse("1-x^2"), 2).unwrap();
        assert!(r.all_roots_roots_of_unity);
        assert!(!r.all_orders_multiple_of_q);
        assert!(!r.passes());
        assert_eq!(r.factorization.factors, vec![(1, 1), (2, 1)]);
    }

    #[test]
    fn both_conditions_pass_for_one_plus_x_squared() {
        let r = inverse_regularity_necessary(&parse("1+x^2"), 2).unwrap();
        assert!(r.all_roots_roots_of_unity);
        assert!(r.all_orders_multiple_of_q);
        assert!(r.modulus_one_necessary);
        assert!(r.passes());
    }

    #[test]
    fn non_unit_root_fails() {
        let r = inverse_regularity_necessary(&parse("1-2x"), 2).unwrap();
        assert!(!r.all_roots_roots_of_unity);
        assert!(!r.modulus_one_necessary);
        assert!(!r.passes());
    }

    #[test]
    fn cofactor_for_one_plus_x_squared() {
        let (q_poly, r) = find_cofactor(&parse("1+x^2"), 2, 8, 2).unwrap().unwrap();
        assert_eq!(q_poly, parse("1-x^2"));
        assert!(r.is_one());
    }

    #[test]
    fn cofactor_for_constant_one() {
        let (q_poly, r) = find_cofactor(&parse("1"), 3, 8, 2).unwrap().unwrap();
        assert!(q_poly.is_one());
        assert!(r.is_one());
    }

    #[test]
    fn cofactor_absent_when_order_condition_fails() {
        assert!(find_cofactor(&parse("1-x"), 2, 8, 2).unwrap().is_none());
        assert!(find_cofactor(&parse("1-x^2"), 2, 8, 2).unwrap().is_none());
    }

    #[test]
    fn cofactor_matches_brute_force_on_small_bounds() {
        // brute force: first exponent vector in lexicographic order
        // (e_1 most significant) with p Q | Q(x^q)
        let brute = |p: &Polynomial, q: u32, max_index: u64, max_mult: u32| {
            let k = max_index as usize;
            let mut e = vec![0u32; k];
            loop {
                let mut q_poly = Polynomial::one();
                for (i, &m) in e.iter().enumerate() {
                    let phi = cyclotomic(i as u64 + 1);
                    for _ in 0..m {
                        q_poly = &q_poly * &phi;
                    }
                }
                let num = q_poly.compose_power(q as usize);
                let den = &q_poly * p;
                if num.exact_div(&den).is_some() {
                    if !q_poly.constant_term().is_one() {
                        q_poly = -&q_poly;
                    }
                    return Some(q_poly);
                }
                // increment the vector, last index fastest
                let mut i = k;
                loop {
                    if i == 0 {
                        return None;
                    }
                    i -= 1;
                    if e[i] < max_mult {
                        e[i] += 1;
                        break;
                    }
                    e[i] = 0;
                }
            }
        };
        for (p, q) in [("1+x^2", 2u32), ("1", 2), ("1+x^2+x^4", 3), ("1+x+x^2", 3)] {
            let poly = parse(p);
            let fast = find_cofactor(&poly, q, 6, 2).unwrap().map(|(qp, _)| qp);
            let slow = brute(&poly, q, 6, 2);
            assert_eq!(fast, slow, "{p} q={q}");
        }
    }
}
