//! Derivation of a functional equation from a coefficient series.
//!
//! The primary route works from the decimation-relation structure of the
//! series alone: group the pairs `(l, b)` by equality of their decimated
//! subsequences, treat the classes as formal unknown series
//! `S_r(x) = sum_d x^d S_{delta(r,d)}(x^q)`, and look for a polynomial
//! dependence among `F(x), F(x^q), ..., F(x^{q^m})` expressed over a common
//! deep level. Any equation found this way holds for every series with the
//! same relation pattern, not just the input values.
//!
//! When the relation structure does not stabilize within bounds (the series
//! need not be automatic), a value-based fallback solves the direct linear
//! system on the coefficients; its result is truncation evidence only and is
//! reported through `verified_to` like any other equation.

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, Rat, TruncatedSeries};
use crate::error::{Error, Result};
use crate::linalg::Rref;

use super::{verify_equation, MahlerEquation};

/// Minimum decimated-subsequence overlap required to judge two pairs equal.
const MIN_SAMPLES: usize = 8;
/// Abort the structural route past this many relation classes.
const CLASS_CAP: usize = 64;
/// Cap on `q^L` for the common expression level.
const DEGREE_CAP: usize = 4096;

/// Search for an equation with order at most `m_max` and coefficient degrees
/// at most `d_max`, minimal order first, then minimal degree.
pub fn derive_equation(
    coeffs: &TruncatedSeries,
    q: u32,
    m_max: u32,
    d_max: usize,
) -> Result<MahlerEquation> {
    let needed = 2 * (m_max as usize + 1) * (d_max + 1);
    if coeffs.order() < needed {
        return Err(Error::InsufficientOrder {
            order: coeffs.order(),
            needed,
        });
    }
    if let Some(kernel) = SeriesKernel::infer(coeffs, q) {
        for m in 1..=m_max {
            if let Some(eq) = kernel.find_equation(m, d_max) {
                if verify_equation(&eq, coeffs) == Some(coeffs.order()) {
                    return Ok(eq.with_verified_to(Some(coeffs.order())));
                }
            }
        }
    }
    for m in 1..=m_max {
        for d in 0..=d_max {
            if let Some(eq) = value_system_solution(coeffs, q, m, d) {
                let v = verify_equation(&eq, coeffs);
                debug_assert_eq!(v, Some(coeffs.order()));
                return Ok(eq.with_verified_to(v));
            }
        }
    }
    Err(Error::EquationNotFound)
}

/// Relation classes of the decimation pairs of a series, inferred from the
/// available prefix.
struct SeriesKernel {
    q: u32,
    /// `transitions[class][digit]` = class of the digit-decimated subsequence
    transitions: Vec<Vec<usize>>,
}

impl SeriesKernel {
    fn infer(coeffs: &TruncatedSeries, q: u32) -> Option<SeriesKernel> {
        let order = coeffs.order() as u64;
        // representative prefixes per class, plus (l, b) -> class for the
        // explored levels
        let mut class_prefixes: Vec<Vec<Rat>> = Vec::new();
        let mut assignments: Vec<Vec<usize>> = Vec::new(); // per level, per b

        let subsequence = |l: u32, b: u64| -> Option<Vec<Rat>> {
            let step = (q as u64).checked_pow(l)?;
            if b > order {
                return None;
            }
            let len = (order - b) / step + 1;
            if (len as usize) < MIN_SAMPLES {
                return None;
            }
            Some(
                (0..len)
                    .map(|n| coeffs.coeff((step * n + b) as usize).clone())
                    .collect(),
            )
        };

        let mut l = 0u32;
        loop {
            let count = (q as u64).checked_pow(l)?;
            let mut level = Vec::with_capacity(count as usize);
            let mut new_class = false;
            for b in 0..count {
                let s = subsequence(l, b)?;
                let found = class_prefixes.iter().position(|rep| {
                    let overlap = rep.len().min(s.len());
                    rep[..overlap] == s[..overlap]
                });
                let class = match found {
                    Some(c) => c,
                    None => {
                        if class_prefixes.len() >= CLASS_CAP {
                            return None;
                        }
                        class_prefixes.push(s);
                        new_class = true;
                        class_prefixes.len() - 1
                    }
                };
                level.push(class);
            }
            assignments.push(level);
            if l >= 1 && !new_class {
                break;
            }
            l += 1;
        }

        // transitions: every class representative sits at a level below the
        // stabilization level, so its digit children are all explored
        let n = class_prefixes.len();
        let mut rep_pair: Vec<Option<(u32, u64)>> = vec![None; n];
        for (lv, level) in assignments.iter().enumerate() {
            for (b, &c) in level.iter().enumerate() {
                if rep_pair[c].is_none() {
                    rep_pair[c] = Some((lv as u32, b as u64));
                }
            }
        }
        let mut transitions = vec![vec![0usize; q as usize]; n];
        for (c, pair) in rep_pair.iter().enumerate() {
            let (l, b) = pair.expect("every class has a representative");
            let step = (q as u64).pow(l);
            for d in 0..q as u64 {
                let child = (l + 1, b + step * d);
                let class = *assignments
                    .get(child.0 as usize)?
                    .get(child.1 as usize)?;
                transitions[c][d as usize] = class;
            }
        }
        Some(SeriesKernel { q, transitions })
    }

    fn class_count(&self) -> usize {
        self.transitions.len()
    }

    /// `C(x)` with `C[r][s] = sum of x^d over digits d with delta(r,d) = s`,
    /// so that `S_r(x) = (C(x) S(x^q))_r`.
    fn structure_matrix(&self) -> Vec<Vec<Polynomial>> {
        let n = self.class_count();
        let mut m = vec![vec![Polynomial::zero(); n]; n];
        for (r, row) in self.transitions.iter().enumerate() {
            for (d, &s) in row.iter().enumerate() {
                m[r][s] = &m[r][s] + &Polynomial::monomial(Rat::one(), d);
            }
        }
        m
    }

    /// Seek `sum_i a_i(x) F(x^{q^i}) = 0` of order exactly `m` with
    /// coefficient degrees at most `d_max`, as a dependence of the rows
    /// `W_i = V_{L-i}(x^{q^i})` where `V_j = e_0 C(x) C(x^q) ... C(x^{q^{j-1}})`.
    fn find_equation(&self, m: u32, d_max: usize) -> Option<MahlerEquation> {
        let q = self.q as usize;
        let n = self.class_count();
        // the common level: deep enough for transient classes to wash out
        let mut level = m as usize + n;
        loop {
            let width = q.checked_pow(level as u32);
            if width.is_some_and(|w| w <= DEGREE_CAP) || level <= m as usize {
                break;
            }
            level -= 1;
        }
        if q.checked_pow(level as u32).is_none() {
            return None;
        }

        let c = self.structure_matrix();
        // V_j rows for j = 0..=level
        let mut v_rows: Vec<Vec<Polynomial>> = Vec::with_capacity(level + 1);
        let mut row: Vec<Polynomial> = (0..n)
            .map(|s| if s == 0 { Polynomial::one() } else { Polynomial::zero() })
            .collect();
        v_rows.push(row.clone());
        for j in 0..level {
            let step = q.pow(j as u32);
            let substituted: Vec<Vec<Polynomial>> = c
                .iter()
                .map(|r| r.iter().map(|p| if p.is_zero() { p.clone() } else { p.compose_power(step) }).collect())
                .collect();
            let mut next = vec![Polynomial::zero(); n];
            for (r, vr) in row.iter().enumerate() {
                if vr.is_zero() {
                    continue;
                }
                for (s, entry) in substituted[r].iter().enumerate() {
                    if !entry.is_zero() {
                        next[s] = &next[s] + &(vr * entry);
                    }
                }
            }
            v_rows.push(next.clone());
            row = next;
        }

        // W_i = V_{level - i} with x -> x^{q^i}
        let w: Vec<Vec<Polynomial>> = (0..=m as usize)
            .map(|i| {
                let step = q.pow(i as u32);
                v_rows[level - i]
                    .iter()
                    .map(|p| if p.is_zero() { p.clone() } else { p.compose_power(step) })
                    .collect()
            })
            .collect();

        for d in 0..=d_max {
            if let Some(eq) = dependence_solution(self.q, &w, m as usize, d) {
                return Some(eq);
            }
        }
        None
    }
}

/// Solve `sum_i a_i(x) W_i = 0` componentwise with `deg a_i <= d`; returns
/// the canonical solution with `a_m` nonzero, if any.
fn dependence_solution(
    q: u32,
    w: &[Vec<Polynomial>],
    m: usize,
    d: usize,
) -> Option<MahlerEquation> {
    let n = w[0].len();
    let unknowns = (m + 1) * (d + 1);
    let mut rref = Rref::new(unknowns);
    for s in 0..n {
        let max_deg = w
            .iter()
            .filter_map(|wi| wi[s].degree())
            .max()
            .unwrap_or(0);
        for t in 0..=(max_deg + d) {
            let mut row = vec![Rat::zero(); unknowns];
            let mut nonzero = false;
            for (i, wi) in w.iter().enumerate() {
                for j in 0..=d {
                    if t >= j && t - j <= max_deg {
                        let c = wi[s].coeff(t - j);
                        if !c.is_zero() {
                            row[i * (d + 1) + j] = c;
                            nonzero = true;
                        }
                    }
                }
            }
            if nonzero {
                rref.push(row);
            }
        }
    }
    solution_from_nullspace(q, &rref, m, d)
}

/// Direct linear system on the series values: coefficient of `x^t` in
/// `sum_{i,j} a_{i,j} x^j F(x^{q^i})` must vanish for every `t` up to the
/// series order.
fn value_system_solution(
    coeffs: &TruncatedSeries,
    q: u32,
    m: u32,
    d: usize,
) -> Option<MahlerEquation> {
    let m = m as usize;
    let unknowns = (m + 1) * (d + 1);
    let mut rref = Rref::new(unknowns);
    let order = coeffs.order();
    for t in 0..=order {
        let mut row = vec![Rat::zero(); unknowns];
        let mut nonzero = false;
        for i in 0..=m {
            let step = match (q as usize).checked_pow(i as u32) {
                Some(s) => s,
                None => continue,
            };
            for j in 0..=d.min(t) {
                if (t - j) % step == 0 {
                    let c = coeffs.coeff((t - j) / step);
                    if !c.is_zero() {
                        row[i * (d + 1) + j] = c.clone();
                        nonzero = true;
                    }
                }
            }
        }
        if nonzero {
            rref.push(row);
        }
    }
    solution_from_nullspace(q, &rref, m, d)
}

/// Pick the earliest nullspace basis vector whose `a_m` block is nonzero,
/// cleared to coprime integer coefficients with positive leading entry.
fn solution_from_nullspace(q: u32, rref: &Rref, m: usize, d: usize) -> Option<MahlerEquation> {
    let basis = rref.nullspace();
    let solution = basis
        .iter()
        .find(|v| v[m * (d + 1)..].iter().any(|c| !c.is_zero()))?;
    let polys: Vec<Polynomial> = (0..=m)
        .map(|i| Polynomial::new(solution[i * (d + 1)..(i + 1) * (d + 1)].to_vec()))
        .collect();
    // clear to integer coprime coefficients with positive leading pivot
    let combined = Polynomial::new(solution.clone());
    let (unit, _) = combined.primitive_integer();
    let scale = Rat::one() / unit;
    let polys: Vec<Polynomial> = polys.iter().map(|p| p.scale(&scale)).collect();
    MahlerEquation::new(q, polys).ok()
}
