//! Trend fits of the summarised error curves.

use vmkappa_core::{fit_decay, fit_linear, predict, CurvePoint, ErrorKind, EstimatorId, FitError};

use crate::summary::ErrorSummary;

pub const FITS_FILE: &str = "fits.csv";

/// Linear and decay fit of one `(estimator, κ, error kind)` curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitRow {
    pub estimator: EstimatorId,
    pub kappa: f64,
    pub error_kind: ErrorKind,
    pub alpha: f64,
    pub beta: f64,
    pub resid_std_lin: f64,
    /// Predicted `log₁₀` error at `N = 2⁴` and `N = 2¹³`.
    pub pred_l4: f64,
    pub pred_l13: f64,
    pub gamma: f64,
    pub tau: f64,
    pub tau_degenerate: bool,
    pub resid_std_decay: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedCurve {
    pub estimator: EstimatorId,
    pub kappa: f64,
    pub error_kind: ErrorKind,
    pub reason: FitError,
}

/// The error curve of `kind` for one estimator and κ, sorted by level.
///
/// Levels without a mean (every replicate failed) or with a zero mean are
/// left out, since neither has a logarithm.
pub fn curve(rows: &[ErrorSummary], estimator: EstimatorId, kappa: f64, kind: ErrorKind) -> Vec<CurvePoint> {
    let mut pts: Vec<CurvePoint> = rows
        .iter()
        .filter(|s| s.estimator == estimator && s.kappa.to_bits() == kappa.to_bits())
        .filter_map(|s| {
            let e = match kind {
                ErrorKind::Mae => s.mae,
                ErrorKind::Mrae => s.mrae,
            }?;
            (e > 0.0).then(|| CurvePoint::new(s.level(), e))
        })
        .collect();
    pts.sort_by_key(|p| p.level);
    pts
}

pub fn fit_curve(
    points: &[CurvePoint],
    estimator: EstimatorId,
    kappa: f64,
    kind: ErrorKind,
) -> Result<FitRow, FitError> {
    let lin = fit_linear(points)?;
    let dec = fit_decay(points, &lin)?;
    Ok(FitRow {
        estimator,
        kappa,
        error_kind: kind,
        alpha: lin.alpha,
        beta: lin.beta,
        resid_std_lin: lin.resid_std,
        pred_l4: predict(&lin, 4),
        pred_l13: predict(&lin, 13),
        gamma: dec.gamma,
        tau: dec.tau,
        tau_degenerate: dec.tau_degenerate,
        resid_std_decay: dec.resid_std,
    })
}

/// Fits every curve in a summary: MAE for `κ ≤ 1`, MRAE for `κ ≥ 1`.
pub fn fit_summaries(rows: &[ErrorSummary]) -> (Vec<FitRow>, Vec<SkippedCurve>) {
    let mut keys: Vec<(EstimatorId, f64)> = Vec::new();
    for s in rows {
        if !keys.iter().any(|&(e, k)| e == s.estimator && k.to_bits() == s.kappa.to_bits()) {
            keys.push((s.estimator, s.kappa));
        }
    }
    let mut fits = Vec::new();
    let mut skipped = Vec::new();
    for (estimator, kappa) in keys {
        for &kind in ErrorKind::for_kappa(kappa) {
            let pts = curve(rows, estimator, kappa, kind);
            match fit_curve(&pts, estimator, kappa, kind) {
                Ok(f) => fits.push(f),
                Err(reason) => skipped.push(SkippedCurve { estimator, kappa, error_kind: kind, reason }),
            }
        }
    }
    (fits, skipped)
}
