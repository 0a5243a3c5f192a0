//! Coefficient expansion of `F(x) = prod_{s>=0} p(x^{q^s})` and of the
//! inverse product `prod 1/p(x^{q^s})`.
//!
//! Two independent routes are provided: the digit recurrence
//! `c_{qn+r} = sum_{j == r mod q} a_j c_{n+(r-j)/q}` and a brute-force oracle
//! that multiplies truncated factors explicitly. Tests hold them equal.

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, Rat, TruncatedSeries};
use crate::error::{Error, Result};

/// The pair `(p, q)` defining an infinite product, with `inverse` selecting
/// `prod 1/p(x^{q^s})` instead of `prod p(x^{q^s})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    p: Polynomial,
    q: u32,
    inverse: bool,
}

impl ProductSpec {
    /// Requires `q >= 2` and `p(0) = 1`.
    pub fn new(p: Polynomial, q: u32, inverse: bool) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidProductSpec(format!("q must be >= 2, got {q}")));
        }
        if !p.constant_term().is_one() {
            return Err(Error::InvalidProductSpec(format!(
                "constant coefficient must be exactly 1, got {}",
                crate::algebra::rat_to_string(&p.constant_term())
            )));
        }
        Ok(ProductSpec { p, q, inverse })
    }

    pub fn forward(p: Polynomial, q: u32) -> Result<Self> {
        ProductSpec::new(p, q, false)
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn inverse(&self) -> bool {
        self.inverse
    }
}

/// Window mode for the recurrence/transition machinery.
///
/// `Full` is the classical bound `2 q^k + 1` with `q^{k-1} < deg p <= q^k`;
/// `Minimal` is the least contiguous window closed under index rewriting;
/// `Width(w)` forces an explicit width (at least the minimal one).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowMode {
    Minimal,
    Full,
    Width(usize),
}

/// Digit-indexed rewriting rules over a contiguous window of offsets
/// `{0, -1, ..., -(W-1)}`.
///
/// `rule(r, i)` expresses `c_{qn+r-i}` as a sparse combination of window
/// entries `c_{n-u}`: a list of `(u, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSystem {
    q: u32,
    width: usize,
    rules: Vec<Vec<Vec<(usize, Rat)>>>,
}

impl RecurrenceSystem {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Offsets `{0, -1, ..., -(W-1)}`.
    pub fn window(&self) -> Vec<i64> {
        (0..self.width).map(|i| -(i as i64)).collect()
    }

    pub fn rule(&self, digit: u32, offset_index: usize) -> &[(usize, Rat)] {
        &self.rules[digit as usize][offset_index]
    }
}

/// Rewrite `c_{qn+r-i}` over the window: indices `(u, a_s)` with
/// `u = (s+i-r)/q` for every `s <= deg p`, `s == (r-i) mod q`, `a_s != 0`.
fn rewrite_row(p: &Polynomial, q: u32, r: u32, i: usize) -> Vec<(usize, Rat)> {
    let q = q as i64;
    let d = p.degree().expect("nonzero p") as i64;
    let rem = (r as i64 - i as i64).rem_euclid(q);
    let mut row = Vec::new();
    let mut s = rem;
    while s <= d {
        let a = p.coeff(s as usize);
        if !a.is_zero() {
            let u = (s + i as i64 - r as i64) / q;
            debug_assert!(u >= 0);
            row.push((u as usize, a));
        }
        s += q;
    }
    row
}

/// Least window width closed under the rewriting fixpoint.
pub fn minimal_width(p: &Polynomial, q: u32) -> Result<usize> {
    if p.degree().map_or(true, |d| d == 0) {
        return Err(Error::ConstantPolynomial);
    }
    let mut width = 1usize;
    loop {
        let mut needed = 1usize;
        for r in 0..q {
            for i in 0..width {
                for &(u, _) in rewrite_row(p, q, r, i).iter() {
                    needed = needed.max(u + 1);
                }
            }
        }
        if needed <= width {
            return Ok(width);
        }
        width = needed;
    }
}

/// The classical width `2 q^k + 1` where `q^{k-1} < deg p <= q^k`.
pub fn full_width(p: &Polynomial, q: u32) -> Result<usize> {
    let d = p.degree().filter(|&d| d > 0).ok_or(Error::ConstantPolynomial)?;
    let mut qk = 1usize;
    while qk < d {
        qk *= q as usize;
    }
    Ok(2 * qk + 1)
}

/// Build the digit rewriting rules for a forward product.
pub fn build_recurrence(spec: &ProductSpec, mode: WindowMode) -> Result<RecurrenceSystem> {
    if spec.inverse() {
        return Err(Error::InvalidProductSpec(
            "recurrence windows exist only for forward products".into(),
        ));
    }
    let p = spec.polynomial();
    let q = spec.q();
    let minimal = minimal_width(p, q)?;
    let width = match mode {
        WindowMode::Minimal => minimal,
        WindowMode::Full => full_width(p, q)?,
        WindowMode::Width(w) => {
            if w < minimal {
                return Err(Error::WindowTooSmall {
                    requested: w,
                    minimal,
                });
            }
            w
        }
    };
    let mut rules = Vec::with_capacity(q as usize);
    for r in 0..q {
        let mut digit_rules = Vec::with_capacity(width);
        for i in 0..width {
            let row = rewrite_row(p, q, r, i);
            debug_assert!(row.iter().all(|&(u, _)| u < width));
            digit_rules.push(row);
        }
        rules.push(digit_rules);
    }
    Ok(RecurrenceSystem { q, width, rules })
}

/// First `n+1` coefficients of the product, starting from `c_0 = 1`.
///
/// The forward case iterates the digit recurrence; the inverse case first
/// inverts `p` as a truncated series and applies
/// `c_{qn+i} = sum_j a_{qj+i} c_{n-j}`.
pub fn expand_product(spec: &ProductSpec, n: usize) -> TruncatedSeries {
    if spec.inverse() {
        return expand_inverse(spec, n);
    }
    let p = spec.polynomial();
    let q = spec.q() as usize;
    let d = p.degree().unwrap_or(0);
    let mut c = Vec::with_capacity(n + 1);
    c.push(Rat::one());
    for m in 1..=n {
        let mut acc = Rat::zero();
        let mut j = m % q;
        while j <= d.min(m) {
            let a = p.coeff(j);
            if !a.is_zero() {
                acc += a * &c[(m - j) / q];
            }
            j += q;
        }
        c.push(acc);
    }
    TruncatedSeries::new(c)
}

fn expand_inverse(spec: &ProductSpec, n: usize) -> TruncatedSeries {
    let q = spec.q() as usize;
    let inv = series_inverse(spec.polynomial(), n).expect("p(0) = 1 by construction");
    let a = inv.coeffs();
    let mut c: Vec<Rat> = Vec::with_capacity(n + 1);
    c.push(Rat::one());
    for m in 1..=n {
        let i = m % q;
        let nn = m / q;
        let mut acc = Rat::zero();
        for j in 0..=nn {
            let ai = &a[q * j + i];
            if !ai.is_zero() {
                acc += ai * &c[nn - j];
            }
        }
        c.push(acc);
    }
    TruncatedSeries::new(c)
}

/// Brute-force oracle: multiply the truncated factors explicitly.
///
/// Factors with `q^s > n` contribute nothing below `x^{q^s}` because every
/// factor has constant term 1, so the product over `q^s <= n` is exact.
pub fn oracle_truncated_product(spec: &ProductSpec, n: usize) -> TruncatedSeries {
    let q = spec.q() as usize;
    let mut acc = TruncatedSeries::one(n);
    let base = if spec.inverse() {
        series_inverse(spec.polynomial(), n).expect("p(0) = 1 by construction")
    } else {
        TruncatedSeries::from_polynomial(spec.polynomial(), n)
    };
    let mut step = 1usize;
    loop {
        if step > n {
            break;
        }
        acc = acc.mul(&base.compose_power(step));
        match step.checked_mul(q) {
            Some(next) => step = next,
            None => break,
        }
    }
    acc
}

/// Truncated multiplicative inverse: `a_0..a_n` with `p * sum a_i x^i = 1`
/// modulo `x^{n+1}`, by `a_0 = 1`, `a_m = -sum_{i>=1} p_i a_{m-i}`.
pub fn series_inverse(p: &Polynomial, n: usize) -> Result<TruncatedSeries> {
    if !p.constant_term().is_one() {
        return Err(Error::InverseConstantTerm(crate::algebra::rat_to_string(
            &p.constant_term(),
        )));
    }
    let d = p.degree().unwrap_or(0);
    let mut a = Vec::with_capacity(n + 1);
    a.push(Rat::one());
    for m in 1..=n {
        let mut acc = Rat::zero();
        for i in 1..=d.min(m) {
            let pi = p.coeff(i);
            if !pi.is_zero() {
                acc += pi * &a[m - i];
            }
        }
        a.push(-acc);
    }
    Ok(TruncatedSeries::new(a))
}
