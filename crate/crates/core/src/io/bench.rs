//! Timing harness comparing engines on generated instances.
//!
//! Suites are TOML:
//!
//! ```toml
//! repetitions = 3
//!
//! [[case]]
//! n = 64
//! m = 256
//! W = 16
//! mode = "approx"
//! epsilon = "0.5"
//! seed = 1
//! ```

use std::fmt::Write as _;
use std::time::Instant;

use serde::Deserialize;
use thiserror::Error;

use crate::engine::{karp_mcm, solve, McmError, Mode, SolveOptions};
use crate::rational::Rational;

use super::generate::generate_graph;

pub const CSV_HEADER: &str = "n,m,W,epsilon,mode,median_ms,ratio";

#[derive(Debug, Error)]
pub enum BenchConfigError {
    #[error("invalid suite config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("repetitions must be at least 1")]
    NoRepetitions,
}

fn default_repetitions() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    #[serde(default, rename = "case")]
    pub cases: Vec<BenchCase>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchCase {
    pub n: usize,
    pub m: usize,
    #[serde(rename = "W")]
    pub max_weight: u64,
    pub mode: Mode,
    /// Accepted as `"0.5"` or `"1/2"`; only used by `approx`.
    #[serde(default)]
    pub epsilon: Option<String>,
    #[serde(default)]
    pub seed: u64,
}

impl SuiteConfig {
    pub fn from_toml(text: &str) -> Result<Self, BenchConfigError> {
        let cfg: SuiteConfig = toml::from_str(text)?;
        if cfg.repetitions == 0 {
            return Err(BenchConfigError::NoRepetitions);
        }
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub case: BenchCase,
    pub timings_ms: Vec<f64>,
    pub median_ms: Option<f64>,
    /// `max_x result(x) / mu(x)` over vertices with `mu(x) > 0`, against Karp.
    pub ratio: Option<Rational>,
    pub error: Option<String>,
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2.0
    })
}

/// Worst ratio `estimate(x) / exact(x)`; a nonzero estimate for a zero-mean
/// vertex is an error since no finite ratio describes it.
pub fn achieved_ratio(estimate: &[Rational], exact: &[Rational]) -> Result<Rational, String> {
    let mut worst = Rational::ONE;
    for (x, (e, m)) in estimate.iter().zip(exact).enumerate() {
        if m.is_zero() {
            if !e.is_zero() {
                return Err(format!("vertex {} has mu = 0 but estimate {e}", x + 1));
            }
            continue;
        }
        let r = Rational::from_u128(
            e.num() as u128 * m.den() as u128,
            e.den() as u128 * m.num() as u128,
        )
        .map_err(|err| err.to_string())?;
        worst = worst.max(r);
    }
    Ok(worst)
}

fn run_case(case: &BenchCase, repetitions: usize, base: &SolveOptions) -> Result<BenchRow, String> {
    let g =
        generate_graph(case.n, case.m, case.max_weight, case.seed).map_err(|e| e.to_string())?;
    let mut opts = base.clone();
    if let Some(eps) = &case.epsilon {
        opts.epsilon = eps
            .parse()
            .map_err(|e: crate::rational::RationalError| e.to_string())?;
    }
    let mut timings = Vec::with_capacity(repetitions);
    let mut last = None;
    for _ in 0..repetitions {
        let start = Instant::now();
        let res = solve(&g, case.mode, &opts).map_err(|e: McmError| e.to_string())?;
        timings.push(start.elapsed().as_secs_f64() * 1e3);
        last = Some(res);
    }
    let result = last.expect("repetitions >= 1");
    let reference = karp_mcm(&g);
    let ratio = achieved_ratio(&result.per_vertex, &reference.per_vertex)?;
    Ok(BenchRow {
        case: case.clone(),
        median_ms: median(&timings),
        timings_ms: timings,
        ratio: Some(ratio),
        error: None,
    })
}

/// Runs every case; a failing case becomes an error row and the run goes on.
pub fn run_benchmark(config: &SuiteConfig, base: &SolveOptions) -> Vec<BenchRow> {
    config
        .cases
        .iter()
        .map(|case| {
            run_case(case, config.repetitions.max(1), base).unwrap_or_else(|error| BenchRow {
                case: case.clone(),
                timings_ms: Vec::new(),
                median_ms: None,
                ratio: None,
                error: Some(error),
            })
        })
        .collect()
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{CSV_HEADER}");
    for row in rows {
        let c = &row.case;
        let eps = if c.mode == Mode::Approx {
            c.epsilon.clone().unwrap_or_default()
        } else {
            String::new()
        };
        let median = row.median_ms.map(|v| format!("{v:.3}")).unwrap_or_default();
        let ratio = match (&row.ratio, &row.error) {
            (_, Some(err)) => format!("error: {}", err.replace([',', '\n'], ";")),
            (Some(r), None) => format!("{:.6}", r.to_f64()),
            (None, None) => String::new(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            c.n, c.m, c.max_weight, eps, c.mode, median, ratio
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_is_header_only() {
        let cfg = SuiteConfig::from_toml("repetitions = 2").unwrap();
        assert!(cfg.cases.is_empty());
        assert_eq!(
            to_csv(&run_benchmark(&cfg, &SolveOptions::default())),
            format!("{CSV_HEADER}\n")
        );
    }

    #[test]
    fn median_of_three() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }

    #[test]
    fn three_repetitions_are_aggregated() {
        let cfg = SuiteConfig::from_toml(
            "repetitions = 3\n[[case]]\nn = 6\nm = 12\nW = 4\nmode = \"karp\"\nseed = 5\n",
        )
        .unwrap();
        let rows = run_benchmark(&cfg, &SolveOptions::default());
        assert_eq!(rows[0].timings_ms.len(), 3);
        assert_eq!(rows[0].median_ms, median(&rows[0].timings_ms));
        assert_eq!(rows[0].ratio, Some(Rational::ONE));
    }

    #[test]
    fn engine_errors_become_rows() {
        let cfg = SuiteConfig::from_toml(
            "[[case]]\nn = 20\nm = 40\nW = 3\nmode = \"brute\"\n\n[[case]]\nn = 4\nm = 8\nW = 3\nmode = \"karp\"\n",
        )
        .unwrap();
        let rows = run_benchmark(&cfg, &SolveOptions::default());
        assert!(rows[0].error.as_deref().unwrap().contains("n <= 12"));
        assert!(rows[1].error.is_none());
        let csv = to_csv(&rows);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("20,40,3,,brute,,error: "));
    }

    #[test]
    fn rejects_zero_repetitions_and_unknown_keys() {
        assert!(SuiteConfig::from_toml("repetitions = 0").is_err());
        assert!(SuiteConfig::from_toml("reps = 1").is_err());
    }

    #[test]
    fn ratio_flags_nonzero_estimate_of_zero_mean() {
        let one = Rational::ONE;
        assert!(achieved_ratio(&[one], &[Rational::ZERO]).is_err());
        let r = achieved_ratio(
            &[Rational::new(3, 1).unwrap(), one],
            &[Rational::new(2, 1).unwrap(), one],
        );
        assert_eq!(r.unwrap(), Rational::new(3, 2).unwrap());
    }
}
