//! Mean errors, failure counts and timing per `(estimator, κ, N)`.

use std::collections::BTreeMap;

use vmkappa_core::{EstimatorId, Failure};

use crate::harness::ErrorRecord;

pub const SUMMARY_FILE: &str = "summary.csv";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSummary {
    pub estimator: EstimatorId,
    pub kappa: f64,
    pub n: usize,
    /// Mean absolute error over the non-failed replicates.
    pub mae: Option<f64>,
    /// Mean relative absolute error; absent when `κ = 0`.
    pub mrae: Option<f64>,
    pub n_failures: usize,
    pub n_used: usize,
    pub time_mean_ms: f64,
    pub time_std_ms: f64,
}

impl ErrorSummary {
    pub fn level(&self) -> u32 {
        self.n.trailing_zeros()
    }

    pub fn replicates(&self) -> usize {
        self.n_used + self.n_failures
    }
}

/// Failures of one group, by tag in [`Failure::ALL`] order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FailureCounts(pub [usize; 3]);

impl FailureCounts {
    pub fn get(&self, f: Failure) -> usize {
        self.0[Failure::ALL.iter().position(|&g| g == f).unwrap()]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

#[derive(Debug, Default, Clone)]
struct Group {
    abs_sum: f64,
    rel_sum: f64,
    used: usize,
    failures: FailureCounts,
    // Welford accumulators for the call time, in milliseconds.
    calls: usize,
    time_mean: f64,
    time_m2: f64,
}

/// Streaming accumulator; feed records in any order.
#[derive(Debug, Default)]
pub struct Summarizer {
    kappas: Vec<f64>,
    groups: BTreeMap<(usize, usize, u32), Group>,
}

impl Summarizer {
    pub fn new() -> Self {
        Self::default()
    }

    fn kappa_slot(&mut self, kappa: f64) -> usize {
        match self.kappas.iter().position(|k| k.to_bits() == kappa.to_bits()) {
            Some(i) => i,
            None => {
                self.kappas.push(kappa);
                self.kappas.len() - 1
            }
        }
    }

    pub fn push(&mut self, r: &ErrorRecord) {
        let q = self.kappa_slot(r.kappa);
        let g = self.groups.entry((r.estimator.index(), q, r.level)).or_default();
        match r.result {
            Ok(_) => {
                g.used += 1;
                g.abs_sum += r.abs_error().unwrap();
                if let Some(e) = r.rel_error() {
                    g.rel_sum += e;
                }
            }
            Err(f) => {
                let i = Failure::ALL.iter().position(|&x| x == f).unwrap();
                g.failures.0[i] += 1;
            }
        }
        let ms = r.seconds * 1e3;
        g.calls += 1;
        let delta = ms - g.time_mean;
        g.time_mean += delta / g.calls as f64;
        g.time_m2 += delta * (ms - g.time_mean);
    }

    /// Rows ordered by estimator, then κ in order of first appearance, then `N`.
    pub fn finish(&self) -> Vec<ErrorSummary> {
        self.groups
            .iter()
            .map(|(&(j, q, level), g)| {
                let kappa = self.kappas[q];
                let used = g.used as f64;
                ErrorSummary {
                    estimator: EstimatorId::ALL[j],
                    kappa,
                    n: 1 << level,
                    mae: (g.used > 0).then(|| g.abs_sum / used),
                    mrae: (g.used > 0 && kappa > 0.0).then(|| g.rel_sum / used),
                    n_failures: g.failures.total(),
                    n_used: g.used,
                    time_mean_ms: g.time_mean,
                    time_std_ms: if g.calls > 1 {
                        (g.time_m2 / (g.calls - 1) as f64).sqrt()
                    } else {
                        0.0
                    },
                }
            })
            .collect()
    }

    /// Failure counts by tag, keyed like [`Summarizer::finish`]'s rows.
    pub fn failure_counts(&self) -> Vec<(EstimatorId, f64, usize, FailureCounts)> {
        self.groups
            .iter()
            .map(|(&(j, q, level), g)| (EstimatorId::ALL[j], self.kappas[q], 1 << level, g.failures))
            .collect()
    }
}

pub fn summarize_errors(records: &[ErrorRecord]) -> Vec<ErrorSummary> {
    let mut s = Summarizer::new();
    for r in records {
        s.push(r);
    }
    s.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(kappa: f64, result: Result<f64, Failure>) -> ErrorRecord {
        ErrorRecord {
            estimator: EstimatorId::JointMl,
            kappa,
            level: 3,
            replicate: 1,
            result,
            seconds: 1e-3,
        }
    }

    #[test]
    fn mean_of_absolute_errors() {
        let s = summarize_errors(&[rec(0.0, Ok(1.0)), rec(0.0, Ok(3.0))]);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].mae, Some(2.0));
        assert_eq!(s[0].mrae, None);
        assert_eq!(s[0].n, 8);
        assert!((s[0].time_mean_ms - 1.0).abs() < 1e-12);
        assert_eq!(s[0].time_std_ms, 0.0);
    }

    #[test]
    fn failures_are_excluded() {
        let s = summarize_errors(&[
            rec(0.0, Ok(1.0)),
            rec(0.0, Err(Failure::Unbounded)),
            rec(0.0, Ok(3.0)),
        ]);
        assert_eq!(s[0].mae, Some(2.0));
        assert_eq!((s[0].n_failures, s[0].n_used), (1, 2));
    }

    #[test]
    fn relative_error_at_ten() {
        let s = summarize_errors(&[rec(10.0, Ok(11.0)), rec(10.0, Ok(8.0))]);
        assert!((s[0].mrae.unwrap() - 0.15).abs() < 1e-15);
    }

    #[test]
    fn all_failed_group_has_no_means() {
        let mut s = Summarizer::new();
        s.push(&rec(1.0, Err(Failure::Undefined)));
        s.push(&rec(1.0, Err(Failure::NoSolution)));
        let rows = s.finish();
        assert_eq!((rows[0].mae, rows[0].mrae), (None, None));
        let counts = s.failure_counts()[0].3;
        assert_eq!(counts.get(Failure::Undefined), 1);
        assert_eq!(counts.get(Failure::NoSolution), 1);
        assert_eq!(counts.total(), 2);
    }
}
