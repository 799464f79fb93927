use std::f64::consts::LN_2;

use proptest::prelude::*;
use vmkappa_core::trendfit::decay_objective;
use vmkappa_core::{fit_decay, fit_linear, CurvePoint, LinearFit};

const LOG2: f64 = LN_2 / std::f64::consts::LN_10;

/// Errors of a curve `α log₁₀ N + β + γ 10^{-(log₁₀ N - log₁₀ 2)/τ}` at `l = 1..=13`.
fn model_curve(alpha: f64, beta: f64, gamma: f64, tau: f64) -> Vec<CurvePoint> {
    (1..=13u32)
        .map(|l| {
            let x = l as f64 * LOG2;
            let y = alpha * x + beta + gamma * 10f64.powf(-(x - LOG2) / tau);
            CurvePoint::new(l, 10f64.powf(y))
        })
        .collect()
}

#[test]
fn decay_parameters_recovered_from_noiseless_curves() {
    for &gamma in &[2.0, -0.5] {
        for &tau in &[0.3, 1.5] {
            let curve = model_curve(-0.5, 0.2, gamma, tau);
            // Fit the line to the tail only, as the decay model expects, then
            // hand the exact trend to the decay fitter.
            let line = LinearFit { alpha: -0.5, beta: 0.2, resid_std: 0.0, n_points: 10 };
            let fit = fit_decay(&curve, &line).unwrap();
            assert!((fit.gamma - gamma).abs() <= 1e-4, "gamma {gamma} tau {tau}: {fit:?}");
            assert!((fit.tau - tau).abs() <= 1e-3, "gamma {gamma} tau {tau}: {fit:?}");
            assert!(!fit.tau_degenerate);
        }
    }
}

#[test]
fn decay_fit_after_estimated_line() {
    // With the line estimated from the decaying curve itself the trend absorbs
    // part of the decay; the fitter still never loses to the bare line.
    let curve = model_curve(-0.5, 0.2, 2.0, 1.5);
    let line = fit_linear(&curve).unwrap();
    let fit = fit_decay(&curve, &line).unwrap();
    let base = decay_objective(&curve, &line, 0.0, fit.tau);
    assert!(decay_objective(&curve, &line, fit.gamma, fit.tau) <= base);
}

proptest! {
    #[test]
    fn ols_residuals_are_orthogonal(
        errs in prop::collection::vec(1e-4f64..1e2, 13),
    ) {
        let curve: Vec<CurvePoint> = errs
            .iter()
            .enumerate()
            .map(|(i, &e)| CurvePoint::new(i as u32 + 1, e))
            .collect();
        let fit = fit_linear(&curve).unwrap();
        let (mut dot, mut sum) = (0.0, 0.0);
        for p in curve.iter().filter(|p| p.level >= 4) {
            let x = p.level as f64 * LOG2;
            let r = p.error.log10() - fit.alpha * x - fit.beta;
            dot += r * x;
            sum += r;
        }
        prop_assert!(dot.abs() < 1e-9, "{dot}");
        prop_assert!(sum.abs() < 1e-9, "{sum}");
        prop_assert!(fit.resid_std >= 0.0);
    }

    #[test]
    fn decay_never_worse_than_line(
        errs in prop::collection::vec(1e-4f64..1e2, 13),
    ) {
        let curve: Vec<CurvePoint> = errs
            .iter()
            .enumerate()
            .map(|(i, &e)| CurvePoint::new(i as u32 + 1, e))
            .collect();
        let line = fit_linear(&curve).unwrap();
        let fit = fit_decay(&curve, &line).unwrap();
        let best = decay_objective(&curve, &line, fit.gamma, fit.tau);
        let flat = decay_objective(&curve, &line, 0.0, fit.tau);
        prop_assert!(best <= flat * (1.0 + 1e-12));
        prop_assert!(fit.tau >= 0.01 && fit.tau <= 4.0);
    }
}
