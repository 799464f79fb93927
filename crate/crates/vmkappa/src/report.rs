//! Plain-text tables: mean errors per κ, failures, timing and trend fits.

use std::fmt::Write;

use vmkappa_core::{ErrorKind, EstimatorId, Failure};

use crate::fits::FitRow;
use crate::summary::{ErrorSummary, FailureCounts};

fn distinct<T: Copy, K: PartialEq>(items: impl Iterator<Item = T>, key: impl Fn(&T) -> K) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for x in items {
        if !out.iter().any(|y| key(y) == key(&x)) {
            out.push(x);
        }
    }
    out
}

/// Left-aligned first column, right-aligned rest.
fn render_table(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let cols = header.len();
    let mut width = vec![0; cols];
    for r in std::iter::once(header).chain(rows.iter().map(|r| r.as_slice())) {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |out: &mut String, r: &[String]| {
        for (i, cell) in r.iter().enumerate() {
            let pad = width[i] - cell.chars().count();
            if i == 0 {
                out.push_str(cell);
                out.push_str(&" ".repeat(pad));
            } else {
                out.push_str("  ");
                out.push_str(&" ".repeat(pad));
                out.push_str(cell);
            }
        }
        out.push('\n');
    };
    line(out, header);
    let total: usize = width.iter().sum::<usize>() + 2 * (cols - 1);
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for r in rows {
        line(out, r);
    }
    out.push('\n');
}

fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn estimators(rows: &[ErrorSummary]) -> Vec<EstimatorId> {
    let mut ids = distinct(rows.iter().map(|s| s.estimator), |&e| e);
    ids.sort();
    ids
}

fn sizes(rows: &[ErrorSummary]) -> Vec<usize> {
    let mut n = distinct(rows.iter().map(|s| s.n), |&n| n);
    n.sort_unstable();
    n
}

fn size_header(first: &str, sizes: &[usize]) -> Vec<String> {
    std::iter::once(first.to_owned())
        .chain(sizes.iter().map(|n| format!("N={n}")))
        .collect()
}

/// Error tables per κ (MAE for κ ≤ 1, MRAE for κ ≥ 1), a failure table, a
/// timing table pooled over κ, and the fitted trend parameters.
pub fn render(
    summary: &[ErrorSummary],
    fits: &[FitRow],
    failures: Option<&[(EstimatorId, f64, usize, FailureCounts)]>,
) -> String {
    let mut out = String::new();
    let ids = estimators(summary);
    let ns = sizes(summary);
    let kappas = distinct(summary.iter().map(|s| s.kappa), |k| k.to_bits());
    let lookup = |e: EstimatorId, k: f64, n: usize| {
        summary
            .iter()
            .find(|s| s.estimator == e && s.kappa.to_bits() == k.to_bits() && s.n == n)
    };

    for &kappa in &kappas {
        for &kind in ErrorKind::for_kappa(kappa) {
            let _ = writeln!(out, "{kind} at kappa = {kappa}");
            let rows: Vec<Vec<String>> = ids
                .iter()
                .map(|&e| {
                    let mut r = vec![e.to_string()];
                    for &n in &ns {
                        let v = lookup(e, kappa, n).and_then(|s| match kind {
                            ErrorKind::Mae => s.mae,
                            ErrorKind::Mrae => s.mrae,
                        });
                        r.push(v.map_or_else(|| "-".to_owned(), sci));
                    }
                    r
                })
                .collect();
            render_table(&mut out, &size_header("estimator", &ns), &rows);
        }
    }

    let failed: Vec<&ErrorSummary> = summary.iter().filter(|s| s.n_failures > 0).collect();
    out.push_str("Failures (count of replicates)\n");
    if failed.is_empty() {
        out.push_str("none\n\n");
    } else {
        let mut header = vec!["estimator".to_owned(), "kappa".to_owned(), "N".to_owned()];
        match failures {
            Some(_) => header.extend(Failure::ALL.iter().map(|f| f.to_string())),
            None => header.push("failures".to_owned()),
        }
        header.push("of".to_owned());
        let rows: Vec<Vec<String>> = failed
            .iter()
            .map(|s| {
                let mut r = vec![s.estimator.to_string(), s.kappa.to_string(), s.n.to_string()];
                let tags = failures.and_then(|f| {
                    f.iter()
                        .find(|(e, k, n, _)| *e == s.estimator && k.to_bits() == s.kappa.to_bits() && *n == s.n)
                        .map(|t| t.3)
                });
                match (failures, tags) {
                    (Some(_), Some(c)) => r.extend(Failure::ALL.iter().map(|&f| c.get(f).to_string())),
                    (Some(_), None) => r.extend(Failure::ALL.iter().map(|_| "?".to_owned())),
                    (None, _) => r.push(s.n_failures.to_string()),
                }
                r.push(s.replicates().to_string());
                r
            })
            .collect();
        render_table(&mut out, &header, &rows);
    }

    out.push_str("Time per call in ms (mean +- std, pooled over kappa)\n");
    let rows: Vec<Vec<String>> = ids
        .iter()
        .map(|&e| {
            let mut r = vec![e.to_string()];
            for &n in &ns {
                let groups: Vec<&ErrorSummary> =
                    summary.iter().filter(|s| s.estimator == e && s.n == n).collect();
                r.push(match pooled_time(&groups) {
                    Some((m, sd)) => format!("{m:.4} +- {sd:.4}"),
                    None => "-".to_owned(),
                });
            }
            r
        })
        .collect();
    render_table(&mut out, &size_header("estimator", &ns), &rows);

    out.push_str("Trend fits\n");
    if fits.is_empty() {
        out.push_str("none\n");
    } else {
        let header: Vec<String> = [
            "estimator", "kappa", "error", "alpha", "beta", "eta", "pred l=4", "pred l=13", "gamma",
            "tau", "eta decay",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let rows: Vec<Vec<String>> = fits
            .iter()
            .map(|f| {
                vec![
                    f.estimator.to_string(),
                    f.kappa.to_string(),
                    f.error_kind.to_string(),
                    format!("{:.4}", f.alpha),
                    format!("{:.4}", f.beta),
                    format!("{:.4}", f.resid_std_lin),
                    format!("{:.4}", f.pred_l4),
                    format!("{:.4}", f.pred_l13),
                    format!("{:.4}", f.gamma),
                    if f.tau_degenerate { "n/a".to_owned() } else { format!("{:.4}", f.tau) },
                    format!("{:.4}", f.resid_std_decay),
                ]
            })
            .collect();
        render_table(&mut out, &header, &rows);
    }
    out
}

/// Mean and standard deviation of the union of several timing groups.
fn pooled_time(groups: &[&ErrorSummary]) -> Option<(f64, f64)> {
    let total: usize = groups.iter().map(|s| s.replicates()).sum();
    if total == 0 {
        return None;
    }
    let t = total as f64;
    let mean = groups.iter().map(|s| s.replicates() as f64 * s.time_mean_ms).sum::<f64>() / t;
    let ss: f64 = groups
        .iter()
        .map(|s| {
            let c = s.replicates() as f64;
            (c - 1.0).max(0.0) * s.time_std_ms.powi(2) + c * (s.time_mean_ms - mean).powi(2)
        })
        .sum();
    let sd = if total > 1 { (ss / (t - 1.0)).sqrt() } else { 0.0 };
    Some((mean, sd))
}
