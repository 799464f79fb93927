use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vmkappa::config::{parse_estimators, parse_kappas, BenchmarkConfig};
use vmkappa::formats::{self, default_paths};
use vmkappa::{fit_summaries, run_benchmark, Error, RunOptions, Summarizer};
use vmkappa_core::{estimate, PreparedSample};

/// Estimate von Mises concentration and run the estimator benchmark.
#[derive(Parser)]
#[command(name = "vmkappa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// `<id>\t<value|failure>` per line.
    Text,
    /// CSV with an `estimator,estimate,failure` header.
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate κ from a file of angles, one per line.
    Estimate {
        input: PathBuf,
        /// Comma-separated estimator ids, or `all`.
        #[arg(long, default_value = "all")]
        estimators: String,
        /// Read the angles as degrees rather than radians.
        #[arg(long)]
        degrees: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the simulation study and write estimates.csv.
    Simulate {
        /// Flat key = value file; flags override its values.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        kappas: Option<String>,
        /// Maximal datasets per κ.
        #[arg(long)]
        m: Option<usize>,
        /// Largest level; datasets hold 2^lmax angles.
        #[arg(long)]
        lmax: Option<u32>,
        #[arg(long)]
        estimators: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (must exist). Defaults to $VMKAPPA_OUT, then `.`.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Print the number of records the run would emit and stop.
        #[arg(long)]
        dry_run: bool,
        /// Continue an interrupted run from its watermark.
        #[arg(long)]
        resume: bool,
    },
    /// Reduce estimates.csv to summary.csv.
    Summarize {
        /// Defaults to <out>/estimates.csv.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit error trends from summary.csv into fits.csv.
    Fit {
        /// Defaults to <out>/summary.csv.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print tables from summary.csv and fits.csv.
    Report {
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long)]
        fits: Option<PathBuf>,
        /// Raw records, for failure counts by kind.
        #[arg(long)]
        estimates: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("VMKAPPA_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn require_dir(dir: &Path) -> Result<(), Error> {
    if dir.is_dir() {
        Ok(())
    } else {
        Err(Error::Input(format!("output directory {} does not exist", dir.display())))
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Estimate { input, estimators, degrees, format } => {
            let ids = parse_estimators(&estimators)?;
            let sample = vmkappa::angles::read_angles(&input, degrees)?;
            let prepared = PreparedSample::new(&sample);
            let mut stdout = std::io::stdout().lock();
            if let Format::Csv = format {
                let _ = writeln!(stdout, "estimator,estimate,failure");
            }
            let mut any_ok = false;
            for id in ids {
                let r = estimate(id, &prepared);
                any_ok |= r.is_ok();
                let line = match (format, r) {
                    (Format::Text, Ok(v)) => format!("{id}\t{v}"),
                    (Format::Text, Err(f)) => format!("{id}\t{f}"),
                    (Format::Csv, Ok(v)) => format!("{id},{},", formats::format_float(v)),
                    (Format::Csv, Err(f)) => format!("{id},,{f}"),
                };
                let _ = writeln!(stdout, "{line}");
            }
            Ok(if any_ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Simulate { config, kappas, m, lmax, estimators, seed, out, jobs, dry_run, resume } => {
            let mut cfg = match &config {
                Some(path) => BenchmarkConfig::from_file(path)?,
                None => BenchmarkConfig::default(),
            };
            let file_set_out = config.is_some() && cfg.output_dir != BenchmarkConfig::default().output_dir;
            if let Some(k) = kappas {
                cfg.kappas = parse_kappas(&k)?;
            }
            if let Some(m) = m {
                cfg.m_replicates = m;
            }
            if let Some(l) = lmax {
                cfg.l_max = l;
            }
            if let Some(e) = estimators {
                cfg.estimators = parse_estimators(&e)?;
            }
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if out.is_some() || !file_set_out {
                cfg.output_dir = out_dir(out);
            }
            cfg.validate()?;
            if dry_run {
                println!("{}", cfg.planned_records());
                return Ok(ExitCode::SUCCESS);
            }
            require_dir(&cfg.output_dir)?;
            let report = run_benchmark(&cfg, &RunOptions { jobs, resume })?;
            eprintln!("wrote {} records to {}", report.records, report.path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Summarize { input, out } => {
            let dir = out_dir(out);
            require_dir(&dir)?;
            let (estimates, summary_path, _) = default_paths(&dir);
            let input = input.unwrap_or(estimates);
            let mut s = Summarizer::new();
            formats::for_each_estimate(&input, |r| s.push(&r))?;
            let rows = s.finish();
            formats::write_summary(&summary_path, &rows)?;
            eprintln!("wrote {} rows to {}", rows.len(), summary_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Fit { input, out } => {
            let dir = out_dir(out);
            require_dir(&dir)?;
            let (_, summary_path, fits_path) = default_paths(&dir);
            let rows = formats::read_summary(&input.unwrap_or(summary_path))?;
            let (fits, skipped) = fit_summaries(&rows);
            for s in &skipped {
                eprintln!("skipped {} kappa={} {}: {}", s.estimator, s.kappa, s.error_kind, s.reason);
            }
            if fits.is_empty() {
                let why = skipped.first().map_or_else(|| "summary is empty".to_owned(), |s| s.reason.to_string());
                return Err(Error::Fit(why));
            }
            formats::write_fits(&fits_path, &fits)?;
            eprintln!("wrote {} fits to {}", fits.len(), fits_path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Report { summary, fits, estimates, out } => {
            let dir = out_dir(out);
            let (_, summary_path, fits_path) = default_paths(&dir);
            let rows = formats::read_summary(&summary.unwrap_or(summary_path))?;
            let fit_rows = formats::read_fits(&fits.unwrap_or(fits_path))?;
            let counts = match estimates {
                Some(path) => {
                    let mut s = Summarizer::new();
                    formats::for_each_estimate(&path, |r| s.push(&r))?;
                    Some(s.failure_counts())
                }
                None => None,
            };
            print!("{}", vmkappa::report::render(&rows, &fit_rows, counts.as_deref()));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("vmkappa: {e}");
            ExitCode::from(1)
        }
    }
}

