//! Trend fits of mean-error curves against sample size `N = 2^l`.
//!
//! The large-sample part is an ordinary least-squares line in
//! `log₁₀ N` / `log₁₀ error` coordinates over `N ≥ 2⁴`. The small-sample
//! departure from that line is modelled as
//! `γ · 10^{-(log₁₀ N - log₁₀ 2)/τ}` with the line held fixed.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::LOG10_2;
use core::fmt;


use crate::optimize::golden;

/// Smallest level used by the linear fit (`N = 16`).
pub const LINEAR_MIN_LEVEL: u32 = 4;
pub const TAU_MIN: f64 = 0.01;
pub const TAU_MAX: f64 = 4.0;
const TAU_SCAN: usize = 400;

/// Which mean error a curve carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorKind {
    Mae,
    Mrae,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Mae => "MAE",
            ErrorKind::Mrae => "MRAE",
        }
    }

    /// MAE for `κ ≤ 1`, MRAE for `κ ≥ 1`; both at `κ = 1`.
    pub fn for_kappa(kappa: f64) -> &'static [ErrorKind] {
        if kappa < 1.0 {
            &[ErrorKind::Mae]
        } else if kappa == 1.0 {
            &[ErrorKind::Mae, ErrorKind::Mrae]
        } else {
            &[ErrorKind::Mrae]
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for ErrorKind {
    type Err = crate::estimators::UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "MAE" => Ok(ErrorKind::Mae),
            "MRAE" => Ok(ErrorKind::Mrae),
            _ => Err(crate::estimators::UnknownName),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum FitError {
    #[error("need at least 3 points on the curve, got {0}")]
    TooFewPoints(usize),
    #[error("need at least 2 points with N >= 16 for the slope, got {0}")]
    TooFewLarge(usize),
    #[error("mean error at level {0} is not positive")]
    NonPositive(u32),
}

/// One point of a mean-error curve at `N = 2^level`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub level: u32,
    pub error: f64,
}

impl CurvePoint {
    pub fn new(level: u32, error: f64) -> Self {
        Self { level, error }
    }

    fn log_n(&self) -> f64 {
        self.level as f64 * LOG10_2
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    /// Slope of `log₁₀ error` against `log₁₀ N`.
    pub alpha: f64,
    pub beta: f64,
    /// Sample standard deviation of the residuals.
    pub resid_std: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Departure from the line at `N = 2`.
    pub gamma: f64,
    /// Decades of `N` over which the departure shrinks tenfold.
    pub tau: f64,
    pub resid_std: f64,
    /// The curve sits on the line, so `τ` carries no information.
    pub tau_degenerate: bool,
}

fn sample_std(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1) as f64).sqrt()
}

fn checked_log(p: &CurvePoint) -> Result<f64, FitError> {
    if p.error > 0.0 && p.error.is_finite() {
        Ok(p.error.log10())
    } else {
        Err(FitError::NonPositive(p.level))
    }
}

/// Least-squares line through the points with `N ≥ 2⁴`.
///
/// The curve must have at least three points, two of them in the fitted
/// range; with exactly two the line is exact and the residual spread 0.
pub fn fit_linear(curve: &[CurvePoint]) -> Result<LinearFit, FitError> {
    if curve.len() < 3 {
        return Err(FitError::TooFewPoints(curve.len()));
    }
    let pts: Vec<&CurvePoint> = curve.iter().filter(|p| p.level >= LINEAR_MIN_LEVEL).collect();
    if pts.len() < 2 {
        return Err(FitError::TooFewLarge(pts.len()));
    }
    let mut xs = Vec::with_capacity(pts.len());
    let mut ys = Vec::with_capacity(pts.len());
    for p in &pts {
        xs.push(p.log_n());
        ys.push(checked_log(p)?);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let alpha = sxy / sxx;
    let beta = my - alpha * mx;
    let resid: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| y - alpha * x - beta).collect();
    Ok(LinearFit {
        alpha,
        beta,
        resid_std: sample_std(&resid),
        n_points: xs.len(),
    })
}

/// Predicted `log₁₀ error` at `N = 2^level`.
pub fn predict(fit: &LinearFit, level: u32) -> f64 {
    fit.alpha * level as f64 * LOG10_2 + fit.beta
}

fn decay_basis(level: u32, tau: f64) -> f64 {
    10f64.powf(-((level as f64 - 1.0) * LOG10_2) / tau)
}

/// Optimal `γ` and residual sum of squares for a fixed `τ`.
fn decay_profile(levels: &[u32], resid: &[f64], tau: f64) -> (f64, f64) {
    let mut sbb = 0.0;
    let mut syb = 0.0;
    let mut syy = 0.0;
    for (&l, &y) in levels.iter().zip(resid) {
        let b = decay_basis(l, tau);
        sbb += b * b;
        syb += y * b;
        syy += y * y;
    }
    let gamma = syb / sbb;
    (gamma, (syy - gamma * syb).max(0.0))
}

/// Exponential-decay fit of the departure from `linear` at every level.
///
/// The model is linear in `γ`, so `γ` is solved in closed form for each
/// `τ` and only `τ ∈ [0.01, 4]` is searched: a log-spaced scan followed by
/// golden-section refinement. A curve lying on the line is reported as
/// degenerate with `γ = 0` and `τ` at the lower bound.
pub fn fit_decay(curve: &[CurvePoint], linear: &LinearFit) -> Result<DecayFit, FitError> {
    if curve.is_empty() {
        return Err(FitError::TooFewPoints(0));
    }
    let mut levels = Vec::with_capacity(curve.len());
    let mut resid = Vec::with_capacity(curve.len());
    for p in curve {
        levels.push(p.level);
        resid.push(checked_log(p)? - predict(linear, p.level));
    }

    if resid.iter().all(|r| r.abs() <= 1e-12) {
        return Ok(DecayFit {
            gamma: 0.0,
            tau: TAU_MIN,
            resid_std: sample_std(&resid),
            tau_degenerate: true,
        });
    }

    let log_lo = TAU_MIN.ln();
    let step = (TAU_MAX.ln() - log_lo) / (TAU_SCAN - 1) as f64;
    let sse = |log_tau: f64| decay_profile(&levels, &resid, log_tau.exp()).1;
    let mut best = 0;
    let mut best_sse = f64::INFINITY;
    for i in 0..TAU_SCAN {
        let s = sse(log_lo + step * i as f64);
        if s < best_sse {
            best_sse = s;
            best = i;
        }
    }
    let a = log_lo + step * best.saturating_sub(1) as f64;
    let b = log_lo + step * (best + 1).min(TAU_SCAN - 1) as f64;
    let refined = golden(|t| -sse(t), a, b, 1e-12);
    let log_tau = if sse(refined) <= best_sse {
        refined
    } else {
        log_lo + step * best as f64
    };
    let tau = log_tau.exp().clamp(TAU_MIN, TAU_MAX);
    let (gamma, _) = decay_profile(&levels, &resid, tau);
    let fitted: Vec<f64> = levels
        .iter()
        .zip(&resid)
        .map(|(&l, &y)| y - gamma * decay_basis(l, tau))
        .collect();
    Ok(DecayFit {
        gamma,
        tau,
        resid_std: sample_std(&fitted),
        tau_degenerate: false,
    })
}

/// Sum of squared decay-model residuals, for comparing fits.
pub fn decay_objective(curve: &[CurvePoint], linear: &LinearFit, gamma: f64, tau: f64) -> f64 {
    curve
        .iter()
        .map(|p| {
            let r = p.error.log10() - predict(linear, p.level) - gamma * decay_basis(p.level, tau);
            r * r
        })
        .sum()
}
