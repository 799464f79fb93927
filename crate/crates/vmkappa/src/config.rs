//! Benchmark configuration and its flat `key = value` file format.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use vmkappa_core::EstimatorId;

use crate::error::{Error, Result};

pub const DEFAULT_KAPPAS: [f64; 6] = [0.0, 0.01, 0.1, 1.0, 10.0, 100.0];
pub const DEFAULT_REPLICATES: usize = 1000;
pub const DEFAULT_L_MAX: u32 = 13;
pub const DEFAULT_SEED: u64 = 20_181_220;

/// Keeps the maximal dataset (`2^l_max` angles) to a size that fits in memory.
pub const L_MAX_LIMIT: u32 = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub kappas: Vec<f64>,
    pub m_replicates: usize,
    pub l_max: u32,
    pub estimators: Vec<EstimatorId>,
    pub master_seed: u64,
    pub output_dir: PathBuf,
}

impl Default for BenchmarkConfig {
    fn default() -> Self {
        Self {
            kappas: DEFAULT_KAPPAS.to_vec(),
            m_replicates: DEFAULT_REPLICATES,
            l_max: DEFAULT_L_MAX,
            estimators: EstimatorId::ALL.to_vec(),
            master_seed: DEFAULT_SEED,
            output_dir: PathBuf::from("."),
        }
    }
}

impl BenchmarkConfig {
    pub fn validate(&self) -> Result<()> {
        if self.kappas.is_empty() {
            return Err(Error::Config("kappas must not be empty".into()));
        }
        let mut seen = HashSet::new();
        for &k in &self.kappas {
            if !(k.is_finite() && k >= 0.0) {
                return Err(Error::Config(format!("kappa {k} is not a finite nonnegative number")));
            }
            if !seen.insert(k.to_bits()) {
                return Err(Error::Config(format!("kappa {k} is listed twice")));
            }
        }
        if self.m_replicates == 0 {
            return Err(Error::Config("m_replicates must be at least 1".into()));
        }
        if !(1..=L_MAX_LIMIT).contains(&self.l_max) {
            return Err(Error::Config(format!("l_max must lie in 1..={L_MAX_LIMIT}")));
        }
        if self.estimators.is_empty() {
            return Err(Error::Config("estimators must not be empty".into()));
        }
        let mut seen = HashSet::new();
        for id in &self.estimators {
            if !seen.insert(*id) {
                return Err(Error::Config(format!("estimator {id} is listed twice")));
            }
        }
        Ok(())
    }

    /// `|κ| · M · L · J`, the number of records a run emits.
    pub fn planned_records(&self) -> u64 {
        self.kappas.len() as u64
            * self.m_replicates as u64
            * self.l_max as u64
            * self.estimators.len() as u64
    }

    pub fn records_per_dataset(&self) -> usize {
        self.l_max as usize * self.estimators.len()
    }

    /// Reads a config file on top of the defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config = Self::default();
        config.apply_text(&text)?;
        Ok(config)
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::Config(format!("line {}: {}", i + 1, strip(e))))?;
        }
        Ok(())
    }

    /// Sets one field by name. Command-line spellings are accepted as aliases.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "kappas" => self.kappas = parse_kappas(value)?,
            "m_replicates" | "m" => self.m_replicates = parse_number(key, value)?,
            "l_max" | "lmax" => self.l_max = parse_number(key, value)?,
            "estimators" => self.estimators = parse_estimators(value)?,
            "master_seed" | "seed" => self.master_seed = parse_number(key, value)?,
            "output_dir" | "out" => self.output_dir = PathBuf::from(value),
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::Config(m) => m,
        other => other.to_string(),
    }
}

fn parse_number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{value}` as a nonnegative integer")))
}

/// Comma-separated concentrations.
pub fn parse_kappas(value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .map_err(|_| Error::Config(format!("cannot parse kappa `{s}`")))
        })
        .collect()
}

/// Comma-separated estimator identifiers, or `all`.
pub fn parse_estimators(value: &str) -> Result<Vec<EstimatorId>> {
    if value.trim() == "all" {
        return Ok(EstimatorId::ALL.to_vec());
    }
    value
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<EstimatorId>().map_err(|_| {
                Error::Config(format!("unknown estimator `{s}`; valid ids: {}", valid_ids()))
            })
        })
        .collect()
}

pub fn valid_ids() -> String {
    EstimatorId::ALL.iter().map(|id| id.as_str()).collect::<Vec<_>>().join(", ")
}
