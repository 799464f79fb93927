//! The simulation study: nested datasets, timed estimator runs, raw records.
//!
//! Each `(q, m)` pair owns one maximal dataset of `2^l_max` angles drawn
//! from its own seed stream, and the level-`l` dataset is its first `2^l`
//! points. Pairs are independent work items; they run on a rayon pool in
//! chunks and their records are written in `(q, m)` order, so the output
//! does not depend on the number of threads.

use std::cell::Cell;
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fs::{self, File, OpenOptions};
use std::hint::black_box;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use vmkappa_core::sampler::{sample_von_mises_with, seeded_rng, wrap_angle};
use vmkappa_core::{estimate, prefix, AngleSample, Estimate, EstimatorId, PreparedSample, TrueParams};

use crate::config::BenchmarkConfig;
use crate::error::{Error, Result};
use crate::formats::EstimatesWriter;

pub const ESTIMATES_FILE: &str = "estimates.csv";
pub const WATERMARK_FILE: &str = "estimates.csv.watermark";

/// Records are written and flushed in batches of at least this many.
pub const CHUNK_RECORDS: usize = 10_000;

/// One estimator run on one dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRecord {
    pub estimator: EstimatorId,
    pub kappa: f64,
    pub level: u32,
    /// 1-based replicate index.
    pub replicate: usize,
    pub result: Estimate,
    pub seconds: f64,
}

impl ErrorRecord {
    pub fn n(&self) -> usize {
        1 << self.level
    }

    /// `|κ̂ - κ|`, absent on failure.
    pub fn abs_error(&self) -> Option<f64> {
        self.result.ok().map(|k| (k - self.kappa).abs())
    }

    /// `|κ̂ - κ| / κ`, absent on failure or when `κ = 0`.
    pub fn rel_error(&self) -> Option<f64> {
        (self.kappa > 0.0)
            .then(|| self.abs_error().map(|e| e / self.kappa))
            .flatten()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of dataset `(q, m)`, with `m` 0-based.
pub fn dataset_seed(master_seed: u64, q: usize, m: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(master_seed) ^ q as u64) ^ m as u64)
}

/// Seeds for every dataset of the run, checked to be pairwise distinct.
pub fn seed_schedule(config: &BenchmarkConfig) -> Result<Vec<u64>> {
    let mut owner = HashMap::with_capacity(config.kappas.len() * config.m_replicates);
    let mut seeds = Vec::with_capacity(config.kappas.len() * config.m_replicates);
    for q in 0..config.kappas.len() {
        for m in 0..config.m_replicates {
            let seed = dataset_seed(config.master_seed, q, m);
            if let Some((q0, m0)) = owner.insert(seed, (q, m)) {
                return Err(Error::Config(format!(
                    "master seed {} gives datasets ({q0}, {m0}) and ({q}, {m}) the same stream",
                    config.master_seed
                )));
            }
            seeds.push(seed);
        }
    }
    Ok(seeds)
}

/// The maximal dataset for kappa index `q` and 0-based replicate `m`.
///
/// The location is the first draw of the dataset's stream, uniform on the
/// circle; the `2^l_max` angles follow from the same stream.
pub fn generate_maximal_dataset(
    config: &BenchmarkConfig,
    q: usize,
    m: usize,
) -> (AngleSample, TrueParams) {
    let mut rng = seeded_rng(dataset_seed(config.master_seed, q, m));
    let mu = wrap_angle(TAU * rng.random::<f64>());
    let params = TrueParams::new(mu, config.kappas[q]).expect("validated config");
    let sample = sample_von_mises_with(params, 1 << config.l_max, &mut rng).expect("n > 0");
    (sample, params)
}

thread_local! {
    static WARMED: Cell<u32> = const { Cell::new(0) };
}

/// Runs `id` once untimed the first time this thread sees it.
fn warm_up(id: EstimatorId, sample: &PreparedSample<'_>) {
    WARMED.with(|w| {
        let bit = 1 << id.index();
        if w.get() & bit == 0 {
            let _ = black_box(estimate(id, sample));
            w.set(w.get() | bit);
        }
    });
}

/// Every record for dataset `(q, m)`, ordered by level then estimator.
///
/// The circular summary is computed once per prefix and shared, outside
/// the timed region; each timed call covers the estimator's own work.
pub fn run_dataset(config: &BenchmarkConfig, q: usize, m: usize) -> Vec<ErrorRecord> {
    let (full, params) = generate_maximal_dataset(config, q, m);
    let mut out = Vec::with_capacity(config.records_per_dataset());
    for level in 1..=config.l_max {
        let sub = prefix(&full, 1 << level).expect("prefix within dataset");
        let prepared = PreparedSample::new(&sub);
        for &id in &config.estimators {
            warm_up(id, &prepared);
            let start = Instant::now();
            let result = black_box(estimate(id, black_box(&prepared)));
            let seconds = start.elapsed().as_secs_f64();
            out.push(ErrorRecord {
                estimator: id,
                kappa: params.kappa(),
                level,
                replicate: m + 1,
                result,
                seconds,
            });
        }
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    /// Continue an interrupted run from its watermark.
    pub resume: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub path: PathBuf,
    pub records: u64,
    /// Datasets skipped because an earlier run had finished them.
    pub resumed_datasets: usize,
}

/// Progress of a partially written `estimates.csv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Watermark {
    pub datasets: usize,
    pub records: u64,
    pub bytes: u64,
}

impl Watermark {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut fields = HashMap::new();
        for line in text.lines() {
            if let Some((k, v)) = line.split_once('=') {
                fields.insert(k.trim().to_owned(), v.trim().to_owned());
            }
        }
        let get = |k: &str| -> Result<u64> {
            fields
                .get(k)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::schema(path, format!("watermark lacks `{k}`")))
        };
        Ok(Self {
            datasets: get("datasets")? as usize,
            records: get("records")?,
            bytes: get("bytes")?,
        })
    }

    fn write(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("watermark.tmp");
        let text = format!(
            "datasets={}\nrecords={}\nbytes={}\n",
            self.datasets, self.records, self.bytes
        );
        fs::write(&tmp, text).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }
}

/// Byte-counting sink so the watermark knows where each chunk ends.
struct Counting<W> {
    inner: W,
    bytes: u64,
}

impl<W: Write> Write for Counting<W> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

/// Runs the study and writes `estimates.csv` into the output directory.
///
/// After every chunk the file is flushed and a watermark is updated; it is
/// removed once the run completes. On an I/O error the records of finished
/// chunks stay on disk and `resume` picks up after them.
pub fn run_benchmark(config: &BenchmarkConfig, options: &RunOptions) -> Result<RunReport> {
    config.validate()?;
    seed_schedule(config)?;
    let dir = &config.output_dir;
    if !dir.is_dir() {
        return Err(Error::io(
            dir,
            std::io::Error::new(std::io::ErrorKind::NotFound, "output directory does not exist"),
        ));
    }
    let path = dir.join(ESTIMATES_FILE);
    let mark_path = dir.join(WATERMARK_FILE);

    let (file, mut mark) = if options.resume && mark_path.exists() {
        let mark = Watermark::read(&mark_path)?;
        let file = OpenOptions::new()
            .write(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        file.set_len(mark.bytes).map_err(|e| Error::io(&path, e))?;
        let mut file = file;
        use std::io::Seek;
        file.seek(std::io::SeekFrom::End(0)).map_err(|e| Error::io(&path, e))?;
        (file, mark)
    } else {
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        (file, Watermark { datasets: 0, records: 0, bytes: 0 })
    };
    let resumed = mark.datasets;
    let sink = Counting { inner: BufWriter::new(file), bytes: mark.bytes };
    let mut writer = EstimatesWriter::new(sink, mark.bytes == 0);

    let items: Vec<(usize, usize)> = (0..config.kappas.len())
        .flat_map(|q| (0..config.m_replicates).map(move |m| (q, m)))
        .collect();
    let per_chunk = CHUNK_RECORDS.div_ceil(config.records_per_dataset()).max(1);

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = options.jobs {
            b = b.num_threads(j.max(1));
        }
        b.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?
    };

    for chunk in items[mark.datasets.min(items.len())..].chunks(per_chunk) {
        let batches: Vec<Vec<ErrorRecord>> =
            pool.install(|| chunk.par_iter().map(|&(q, m)| run_dataset(config, q, m)).collect());
        for rec in batches.iter().flatten() {
            writer.write(rec).map_err(|e| Error::io(&path, e))?;
            mark.records += 1;
        }
        writer.flush().map_err(|e| Error::io(&path, e))?;
        mark.datasets += chunk.len();
        mark.bytes = writer.get_ref().bytes;
        mark.write(&mark_path)?;
    }
    writer.flush().map_err(|e| Error::io(&path, e))?;
    if mark_path.exists() {
        fs::remove_file(&mark_path).map_err(|e| Error::io(&mark_path, e))?;
    }
    Ok(RunReport { path, records: mark.records, resumed_datasets: resumed })
}
