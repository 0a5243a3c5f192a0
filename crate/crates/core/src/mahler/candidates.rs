//! Candidate polynomials from a functional equation.
//!
//! For an equation of order `m`, plugging `G(x) = p(x) G(x^q)` into itself
//! forces `p(x^{q^{m-1}})` to divide `a_m(x)`, so every generator `p` with
//! `p(0) = 1` appears among the divisors of `a_m` supported on powers of
//! `x^{q^{m-1}}`. Divisors are enumerated from a three-stage factor base:
//! rational roots, cyclotomic trial division, then bounded-coefficient trial
//! division of whatever remains.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{cyclotomic, cyclotomic_factorize, rational_roots, Int, Polynomial, Rat};
use crate::error::{Error, Result};

use super::MahlerEquation;

/// Total trial-division candidates allowed before giving up on completeness.
const TRIAL_BUDGET: usize = 200_000;

#[derive(Clone, Debug)]
pub struct CandidateSet {
    /// Polynomials `g` with `g(0) = 1` and `g(x^{q^{m-1}})` dividing `a_m`,
    /// deduplicated and sorted by degree then coefficients.
    pub candidates: Vec<Polynomial>,
    /// False when the factor base may be incomplete (the remainder resisted
    /// the bounded trial division); candidates are then a lower bound only.
    pub complete: bool,
}

pub fn candidates_from_equation(eq: &MahlerEquation) -> Result<CandidateSet> {
    let m = eq.order();
    if m < 1 {
        return Err(Error::InvalidEquation(
            "candidate recovery needs order m >= 1".into(),
        ));
    }
    let a_m = eq.coefficient(m);
    if a_m.is_zero() {
        return Err(Error::InvalidEquation("a_m must be nonzero".into()));
    }
    let stride = (eq.q() as u64)
        .checked_pow(m as u32 - 1)
        .and_then(|s| usize::try_from(s).ok())
        .ok_or_else(|| Error::InvalidEquation("q^(m-1) overflows".into()))?;

    let (factors, complete) = factor_base(a_m);

    // subset products over the factor base
    let mut found: Vec<Polynomial> = Vec::new();
    let mut stack: Vec<(usize, Polynomial)> = vec![(0, Polynomial::one())];
    while let Some((idx, prod)) = stack.pop() {
        if idx == factors.len() {
            if let Some(g) = normalize_supported(&prod, stride) {
                if !found.contains(&g) {
                    found.push(g);
                }
            }
            continue;
        }
        let (f, mult) = &factors[idx];
        let mut acc = prod;
        stack.push((idx + 1, acc.clone()));
        for _ in 0..*mult {
            acc = &acc * f;
            stack.push((idx + 1, acc.clone()));
        }
    }
    found.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(CandidateSet {
        candidates: found,
        complete,
    })
}

/// `g` from a divisor supported on powers of `x^stride`, scaled to `g(0)=1`.
fn normalize_supported(d: &Polynomial, stride: usize) -> Option<Polynomial> {
    let deg = d.degree()?;
    if deg % stride != 0 {
        return None;
    }
    let constant = d.constant_term();
    if constant.is_zero() {
        return None;
    }
    let mut g = Vec::with_capacity(deg / stride + 1);
    for (i, c) in d.coeffs().iter().enumerate() {
        if i % stride == 0 {
            g.push(c / &constant);
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(Polynomial::new(g))
}

/// Factor `a_m` into primitive integer factors with multiplicities.
/// Returns the base and whether it is known complete.
fn factor_base(a_m: &Polynomial) -> (Vec<(Polynomial, u32)>, bool) {
    let (_, mut rest) = a_m.primitive_integer();
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();

    // powers of x never contribute (divisors containing x have d(0) = 0)
    if let Some(v) = rest.valuation() {
        if v > 0 {
            rest = Polynomial::new(rest.coeffs()[v..].to_vec());
        }
    }

    // stage 1: rational roots
    for (root, mult) in rational_roots(&rest) {
        if root.is_zero() {
            continue;
        }
        let linear = Polynomial::new(vec![
            Rat::from_integer(-root.numer().clone()),
            Rat::from_integer(root.denom().clone()),
        ]);
        let (_, linear) = linear.primitive_integer();
        for _ in 0..mult {
            rest = rest.exact_div(&linear).expect("root divides");
        }
        factors.push((linear, mult));
    }

    // stage 2: cyclotomic trial division
    if rest.degree().is_some_and(|d| d >= 2) {
        let f = cyclotomic_factorize(&rest).expect("rest nonzero");
        for &(n, mult) in &f.factors {
            let phi = cyclotomic(n);
            for _ in 0..mult {
                rest = rest.exact_div(&phi).expect("factor divides");
            }
            factors.push((phi, mult));
        }
        let (_, prim) = rest.primitive_integer();
        rest = prim;
    }

    // stage 3: bounded trial division of the remainder
    let mut complete = true;
    let mut budget = TRIAL_BUDGET;
    'outer: while rest.degree().is_some_and(|d| d >= 4) {
        let deg = rest.degree().expect("nonzero");
        for k in 2..=deg / 2 {
            match trial_divisor(&rest, k, &mut budget) {
                TrialOutcome::Found(f) => {
                    let mut mult = 0u32;
                    while let Some(q) = rest.exact_div(&f) {
                        rest = q;
                        mult += 1;
                    }
                    let (_, prim) = rest.primitive_integer();
                    rest = prim;
                    factors.push((f, mult));
                    continue 'outer;
                }
                TrialOutcome::None => {}
                TrialOutcome::BudgetExhausted => {
                    complete = false;
                    break 'outer;
                }
            }
        }
        break; // no divisor up to deg/2: irreducible
    }
    if let Some(d) = rest.degree() {
        if d >= 1 {
            factors.push((rest, 1));
        }
    }
    (factors, complete)
}

enum TrialOutcome {
    Found(Polynomial),
    None,
    BudgetExhausted,
}

/// Search for a primitive integer divisor of degree `k`, coefficients within
/// the Landau-Mignotte bound `2^k ||f||_2`.
fn trial_divisor(f: &Polynomial, k: usize, budget: &mut usize) -> TrialOutcome {
    let lead = f.leading_coeff().expect("nonzero").numer().abs();
    let cons = f.constant_term().numer().abs();
    if cons.is_zero() {
        return TrialOutcome::None;
    }
    let norm_sq: Int = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * c.numer())
        .sum();
    let bound = (Int::from(2).pow(k as u32)) * (norm_sq.sqrt() + 1);
    let Ok(bound) = i64::try_from(bound) else {
        return TrialOutcome::BudgetExhausted;
    };
    let lead_divs = int_divisors(&lead);
    let cons_divs = int_divisors(&cons);
    let middle = (2 * bound + 1) as usize;
    let total = lead_divs
        .len()
        .checked_mul(cons_divs.len() * 2)
        .and_then(|t| middle.checked_pow(k as u32 - 1).map(|m| t.saturating_mul(m)));
    match total {
        Some(t) if t <= *budget => *budget -= t,
        _ => return TrialOutcome::BudgetExhausted,
    }

    let mut coeffs = vec![Int::zero(); k + 1];
    for ld in &lead_divs {
        coeffs[k] = ld.clone();
        for cd in &cons_divs {
            for sign in [1i64, -1] {
                coeffs[0] = cd * Int::from(sign);
                if try_middle(f, &mut coeffs, 1, bound) {
                    let cand = Polynomial::new(
                        coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect(),
                    );
                    let (_, prim) = cand.primitive_integer();
                    return TrialOutcome::Found(prim);
                }
            }
        }
    }
    TrialOutcome::None
}

fn try_middle(f: &Polynomial, coeffs: &mut Vec<Int>, idx: usize, bound: i64) -> bool {
    if idx == coeffs.len() - 1 {
        let cand = Polynomial::new(
            coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect(),
        );
        return cand.degree() == Some(coeffs.len() - 1) && cand.divides(f);
    }
    for v in -bound..=bound {
        coeffs[idx] = Int::from(v);
        if try_middle(f, coeffs, idx + 1, bound) {
            return true;
        }
    }
    false
}

fn int_divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
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
    use crate::algebra::poly_parse;

    fn eq(q: u32, coeffs: &[&str]) -> MahlerEquation {
        MahlerEquation::new(q, coeffs.iter().map(|c| poly_parse(c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn thue_morse_candidates() {
        let e = eq(2, &["-x", "1+x", "x^4-1"]);
        let set = candidates_from_equation(&e).unwrap();
        assert!(set.complete);
        let expected: Vec<Polynomial> = ["1", "1-x", "1+x", "1-x^2"]
            .iter()
            .map(|s| poly_parse(s).unwrap())
            .collect();
        assert_eq!(set.candidates, expected);
        // soundness: g(x^{q^{m-1}}) divides a_m
        for g in &set.candidates {
            assert!(g.compose_power(2).divides(e.coefficient(2)));
        }
    }

    #[test]
    fn unit_tail_gives_single_candidate() {
        let e = eq(2, &["1", "-1", "1"]);
        let set = candidates_from_equation(&e).unwrap();
        assert_eq!(set.candidates, vec![Polynomial::one()]);
        assert!(set.complete);
    }

    #[test]
    fn geometric_series_equation_regenerates_generator() {
        // F = 1/(1-x) satisfies F(x) - (1+x) F(x^2) = 0
        let e = eq(2, &["1", "-1-x"]);
        let set = candidates_from_equation(&e).unwrap();
        let expected: Vec<Polynomial> = ["1", "1+x"].iter().map(|s| poly_parse(s).unwrap()).collect();
        assert_eq!(set.candidates, expected);
    }

    #[test]
    fn non_cyclotomic_tail_is_trial_divided() {
        // a_1 = (1+2x)(1+3x^2), irreducible non-cyclotomic factors
        let e = eq(2, &["1", "(1+2x)*(1+3x^2)"]);
        let set = candidates_from_equation(&e).unwrap();
        assert!(set.complete);
        let texts: Vec<String> = set.candidates.iter().map(|p| p.to_text(false)).collect();
        assert!(texts.contains(&"1".to_string()));
        assert!(texts.contains(&"1+2*x".to_string()));
        assert!(texts.contains(&"1+3*x^2".to_string()));
        for g in &set.candidates {
            assert!(g.divides(e.coefficient(1)));
        }
    }

    #[test]
    fn order_zero_rejected() {
        let e = MahlerEquation::new(2, vec![poly_parse("1").unwrap()]).unwrap();
        assert!(candidates_from_equation(&e).is_err());
    }
}
