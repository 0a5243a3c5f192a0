//! Exhaustive classification sweeps over bounded polynomial spaces.
//!
//! Enumerates integer polynomials with constant term 1, fixed degree and
//! bounded coefficients (optionally a half-integer grid), classifies every
//! candidate, and produces a deterministic report: records keyed by
//! candidate index are byte-identical regardless of worker count.

use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Polynomial, Rat};
use crate::automaticity::{classify_with_stats, Classification, JsonDfao};
use crate::error::{Error, Result};
use crate::expansion::ProductSpec;
use crate::mahler::{rationality_test, RationalityResult};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchConfig {
    pub degree: usize,
    pub q: u32,
    pub coeff_bound: u32,
    pub semigroup_cap: usize,
    pub check_order: u64,
    /// Admit half-integer coefficients; the integrality proposition predicts
    /// (and the suite confirms) that none of them certify automatic.
    pub include_rationals: bool,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::InvalidProductSpec("search degree must be >= 1".into()));
        }
        if self.q < 2 {
            return Err(Error::InvalidProductSpec("search base must be >= 2".into()));
        }
        if self.coeff_bound < 1 {
            return Err(Error::InvalidProductSpec("coefficient bound must be >= 1".into()));
        }
        if self.semigroup_cap < self.q as usize {
            return Err(Error::CapTooSmall {
                cap: self.semigroup_cap,
                q: self.q,
            });
        }
        Ok(())
    }

    /// Number of grid points: `(2B+1)^{d-1} * 2B` on the integer grid,
    /// `(4B+1)^{d-1} * 4B` on the half-integer grid.
    pub fn space_size(&self) -> u128 {
        let values = if self.include_rationals {
            4 * self.coeff_bound as u128 + 1
        } else {
            2 * self.coeff_bound as u128 + 1
        };
        values.pow(self.degree as u32 - 1) * (values - 1)
    }
}

/// Every polynomial of the grid, constant term 1, degree exactly `d`,
/// in lexicographic coefficient order (values descending from +B, so the
/// first candidates are `1 + B x + ...`).
pub fn enumerate_polynomials(config: &SearchConfig) -> Vec<Polynomial> {
    let b = config.coeff_bound as i64;
    let values: Vec<Rat> = if config.include_rationals {
        (0..=4 * b)
            .map(|k| Rat::new((2 * b - k).into(), 2.into()))
            .collect()
    } else {
        (0..=2 * b).map(|k| crate::algebra::rat_from_i64(b - k)).collect()
    };
    let inner = values.len();
    let leading: Vec<Rat> = values
        .iter()
        .filter(|v| !num_traits::Zero::is_zero(*v))
        .cloned()
        .collect();
    let d = config.degree;
    let total = inner.pow(d as u32 - 1) * leading.len();
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![Rat::one()];
    enumerate_rec(&values, &leading, d, &mut stack, &mut out);
    out
}

fn enumerate_rec(
    values: &[Rat],
    leading: &[Rat],
    degree: usize,
    prefix: &mut Vec<Rat>,
    out: &mut Vec<Polynomial>,
) {
    if prefix.len() == degree {
        for v in leading {
            let mut coeffs = prefix.clone();
            coeffs.push(v.clone());
            out.push(Polynomial::new(coeffs));
        }
        return;
    }
    for v in values {
        prefix.push(v.clone());
        enumerate_rec(values, leading, degree, prefix, out);
        prefix.pop();
    }
}

/// True exactly when every coefficient has denominator 1 after
/// normalization.
pub fn integrality_filter(p: &Polynomial) -> bool {
    p.is_integer()
}

/// One line of the JSON-lines report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CandidateRecord {
    pub index: usize,
    pub poly: String,
    pub verdict: String,
    pub integer: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semigroup_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dfao_states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_classes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_values: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dfao: Option<JsonDfao>,
}

impl CandidateRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serialization cannot fail")
    }
}

/// Aggregate counts; the three verdict classes partition the total, the
/// rational and non-integer counts overlap them.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct SearchSummary {
    pub total: usize,
    pub automatic_certified: usize,
    pub not_automatic_evidence: usize,
    pub undetermined: usize,
    pub rational: usize,
    pub non_integer: usize,
    pub matrices_explored: usize,
}

impl SearchSummary {
    pub fn absorb(&mut self, record: &CandidateRecord, matrices: usize) {
        self.total += 1;
        match record.verdict.as_str() {
            "automatic" => self.automatic_certified += 1,
            "not_automatic_evidence" => self.not_automatic_evidence += 1,
            _ => self.undetermined += 1,
        }
        if record.rational_q.is_some() {
            self.rational += 1;
        }
        if !record.integer {
            self.non_integer += 1;
        }
        self.matrices_explored += matrices;
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serialization cannot fail")
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub records: Vec<CandidateRecord>,
    pub summary: SearchSummary,
    pub wall_time_ms: u128,
}

impl SearchReport {
    /// Re-verify every embedded DFAO certificate against a fresh expansion
    /// on indices beyond the certification range.
    pub fn verify_hits(&self, extra: u64) -> Result<()> {
        for record in &self.records {
            let Some(json) = &record.dfao else { continue };
            let dfao = serde_json::from_str::<JsonDfao>(&serde_json::to_string(json).unwrap())
                .map_err(|e| Error::Json(e.to_string()))?
                .into_dfao()?;
            let poly = crate::algebra::poly_parse(&record.poly)?;
            let spec = ProductSpec::forward(poly, self.config.q)?;
            let n0 = self.config.check_order + 1;
            let series = crate::expansion::expand_product(&spec, (n0 + extra) as usize);
            for n in n0..=(n0 + extra) {
                if &dfao.eval(n) != series.coeff(n as usize) {
                    return Err(Error::SelfValidation(n));
                }
            }
        }
        Ok(())
    }
}

/// Classify every candidate from `start_index` on, streaming records in
/// index order through `sink`. Candidate-level parallelism only; results
/// never depend on `workers`.
pub fn run_search<F>(
    config: &SearchConfig,
    workers: usize,
    start_index: usize,
    mut sink: F,
) -> Result<SearchReport>
where
    F: FnMut(&CandidateRecord),
{
    config.validate()?;
    let started = std::time::Instant::now();
    let candidates = enumerate_polynomials(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidProductSpec(format!("thread pool: {e}")))?;

    let mut records = Vec::with_capacity(candidates.len().saturating_sub(start_index));
    let mut summary = SearchSummary::default();
    const CHUNK: usize = 32;
    let mut next = start_index;
    while next < candidates.len() {
        let end = (next + CHUNK).min(candidates.len());
        let chunk: Vec<(usize, &Polynomial)> =
            (next..end).map(|i| (i, &candidates[i])).collect();
        let classified: Vec<Result<(CandidateRecord, usize)>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&(index, poly)| classify_candidate(config, index, poly))
                .collect()
        });
        for item in classified {
            let (record, matrices) = item?;
            summary.absorb(&record, matrices);
            sink(&record);
            records.push(record);
        }
        next = end;
    }

    Ok(SearchReport {
        config: config.clone(),
        records,
        summary,
        wall_time_ms: started.elapsed().as_millis(),
    })
}

fn classify_candidate(
    config: &SearchConfig,
    index: usize,
    poly: &Polynomial,
) -> Result<(CandidateRecord, usize)> {
    let spec = ProductSpec::forward(poly.clone(), config.q)?;
    let (classification, matrices) =
        classify_with_stats(&spec, config.semigroup_cap, config.check_order)?;
    let rational = match rationality_test(poly, config.q)? {
        RationalityResult::Rational { q_poly, .. } => Some(q_poly.to_text(false)),
        RationalityResult::NotRational { .. } => None,
    };
    let mut record = CandidateRecord {
        index,
        poly: poly.to_text(false),
        verdict: classification.verdict_str().to_string(),
        integer: integrality_filter(poly),
        semigroup_size: None,
        dfao_states: None,
        kernel_classes: None,
        distinct_values: None,
        rational_q: rational,
        dfao: None,
    };
    match classification {
        Classification::AutomaticCertified {
            dfao,
            semigroup_size,
            kernel_count,
        } => {
            record.semigroup_size = Some(semigroup_size);
            record.dfao_states = Some(dfao.state_count());
            record.kernel_classes = Some(kernel_count);
            record.dfao = Some(dfao.to_json());
        }
        Classification::NotAutomaticEvidence { distinct_value_count } => {
            record.distinct_values = Some(distinct_value_count);
        }
        Classification::Undetermined { .. } => {}
    }
    Ok((record, matrices))
}

/// CSV rendering of the per-candidate rows (no DFAO payloads).
pub fn records_to_csv(records: &[CandidateRecord]) -> String {
    let mut out = String::from("index,poly,verdict,integer,semigroup_size,dfao_states,kernel_classes,distinct_values,rational_q\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.index,
            r.poly,
            r.verdict,
            r.integer,
            r.semigroup_size.map_or(String::new(), |v| v.to_string()),
            r.dfao_states.map_or(String::new(), |v| v.to_string()),
            r.kernel_classes.map_or(String::new(), |v| v.to_string()),
            r.distinct_values.map_or(String::new(), |v| v.to_string()),
            r.rational_q.clone().unwrap_or_default(),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(degree: usize, q: u32, bound: u32) -> SearchConfig {
        SearchConfig {
            degree,
            q,
            coeff_bound: bound,
            semigroup_cap: 2_000,
            check_order: 512,
            include_rationals: false,
        }
    }

    #[test]
    fn enumeration_counts_and_order() {
        let polys = enumerate_polynomials(&config(1, 2, 1));
        let texts: Vec<String> = polys.iter().map(|p| p.to_text(false)).collect();
        assert_eq!(texts, vec!["1+x", "1-x"]);
        assert_eq!(enumerate_polynomials(&config(2, 2, 1)).len(), 6);
        assert_eq!(enumerate_polynomials(&config(4, 2, 1)).len(), 54);
        assert_eq!(config(4, 2, 1).space_size(), 54);
        for p in enumerate_polynomials(&config(3, 2, 2)) {
            assert!(p.constant_term().is_one());
            assert_eq!(p.degree(), Some(3));
        }
    }

    #[test]
    fn half_integer_grid() {
        let mut cfg = config(1, 2, 1);
        cfg.include_rationals = true;
        let polys = enumerate_polynomials(&cfg);
        let texts: Vec<String> = polys.iter().map(|p| p.to_text(false)).collect();
        assert_eq!(texts, vec!["1+x", "1+1/2*x", "1-1/2*x", "1-x"]);
        assert_eq!(cfg.space_size(), 4);
    }

    #[test]
    fn integrality_filter_examples() {
        use crate::algebra::poly_parse;
        assert!(!integrality_filter(&poly_parse("1+1/2*x").unwrap()));
        assert!(integrality_filter(&poly_parse("1-x+x^3").unwrap()));
        assert!(integrality_filter(&poly_parse("1+3/3*x").unwrap()));
    }

    #[test]
    fn degree_one_sweep() {
        let report = run_search(&config(1, 2, 1), 1, 0, |_| {}).unwrap();
        assert_eq!(report.summary.total, 2);
        assert_eq!(report.summary.automatic_certified, 2);
        assert_eq!(report.summary.rational, 1);
        let plus = &report.records[0];
        assert_eq!(plus.poly, "1+x");
        assert_eq!(plus.verdict, "automatic");
        assert_eq!(plus.rational_q.as_deref(), Some("1-x"));
        let minus = &report.records[1];
        assert_eq!(minus.poly, "1-x");
        assert_eq!(minus.verdict, "automatic");
        assert!(minus.rational_q.is_none());
        report.verify_hits(64).unwrap();
    }

    #[test]
    fn base_three_degree_two_sweep() {
        let report = run_search(&config(2, 3, 1), 2, 0, |_| {}).unwrap();
        let hit = report
            .records
            .iter()
            .find(|r| r.poly == "1+x+x^2")
            .expect("enumerated");
        assert_eq!(hit.verdict, "automatic");
        assert_eq!(hit.rational_q.as_deref(), Some("1-x"));
    }

    #[test]
    fn reports_identical_across_worker_counts() {
        let cfg = config(2, 2, 1);
        let one = run_search(&cfg, 1, 0, |_| {}).unwrap();
        let many = run_search(&cfg, 4, 0, |_| {}).unwrap();
        let lines1: Vec<String> = one.records.iter().map(|r| r.to_json_line()).collect();
        let lines2: Vec<String> = many.records.iter().map(|r| r.to_json_line()).collect();
        assert_eq!(lines1, lines2);
        assert_eq!(one.summary, many.summary);
    }

    #[test]
    fn resume_from_index() {
        let cfg = config(2, 2, 1);
        let full = run_search(&cfg, 1, 0, |_| {}).unwrap();
        let tail = run_search(&cfg, 1, 4, |_| {}).unwrap();
        assert_eq!(tail.records.len(), 2);
        assert_eq!(full.records[4..], tail.records[..]);
    }

    #[test]
    fn no_non_integer_automatic_hits() {
        let mut cfg = config(2, 2, 1);
        cfg.include_rationals = true;
        cfg.semigroup_cap = 500;
        cfg.check_order = 128;
        let report = run_search(&cfg, 2, 0, |_| {}).unwrap();
        assert_eq!(report.summary.total as u128, cfg.space_size());
        assert!(report.summary.non_integer > 0);
        for r in &report.records {
            if r.verdict == "automatic" {
                assert!(r.integer, "non-integer certified: {}", r.poly);
            }
        }
    }
}
