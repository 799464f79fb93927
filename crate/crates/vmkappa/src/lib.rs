//! Benchmark harness, file formats and command-line plumbing around
//! [`vmkappa_core`].
//!
//! A run draws `M` nested datasets per concentration, applies every
//! selected estimator at each level `N = 2^l`, and streams one record per
//! call to `estimates.csv`. `summary.csv` and `fits.csv` are derived from it.

pub mod angles;
pub mod config;
pub mod error;
pub mod fits;
pub mod formats;
pub mod harness;
pub mod report;
pub mod summary;

pub use config::BenchmarkConfig;
pub use error::{Error, Result};
pub use fits::{fit_summaries, FitRow};
pub use harness::{generate_maximal_dataset, run_benchmark, ErrorRecord, RunOptions, RunReport};
pub use summary::{summarize_errors, ErrorSummary, Summarizer};
