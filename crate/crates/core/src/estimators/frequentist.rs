//! Likelihood-based, bias-corrected, median-based and linear estimators.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::PI;


use super::{capped, Estimate, Failure, PreparedSample};
use crate::descriptives::{median_direction, median_of, wrap_signed, CircularSummary};
use crate::optimize::find_root;
use crate::quad::integrate;
use crate::special::{a_inverse, scaled};
use crate::{Error, KAPPA_CAP};

/// Numerator of the median-based estimator `0.6724 / median{2[1 - cos]}`.
pub const MEDIAN1_CONSTANT: f64 = 0.6724;

fn jml_from_rbar(rbar: f64) -> Estimate {
    a_inverse(rbar).map_err(|e| match e {
        Error::Unbounded => Failure::Unbounded,
        Error::Domain(_) => Failure::Undefined,
    })
}

/// Maximum likelihood: solves `A(κ) = R̄`.
pub fn estimate_jml(sample: &PreparedSample<'_>) -> Estimate {
    jml_from_rbar(sample.rbar())
}

/// Marginal maximum likelihood from the density of the resultant length.
///
/// Zero whenever `R̄ ≤ 1/√N`; otherwise the positive root of
/// `A(κ) - R̄ A(N R̄ κ)`.
pub fn estimate_mml_marginal(sample: &PreparedSample<'_>) -> Estimate {
    marginal_from(sample.n(), sample.rbar())
}

pub(crate) fn marginal_from(n: usize, r: f64) -> Estimate {
    let n = n as f64;
    if r <= 1.0 / n.sqrt() {
        return Ok(0.0);
    }
    if r >= scaled(KAPPA_CAP).ratio {
        return Err(Failure::Unbounded);
    }
    let root = find_root(|k| scaled(k).ratio - r * scaled(n * r * k).ratio)?;
    capped(root)
}

fn bf1_correction(kappa: f64, n: f64) -> f64 {
    if kappa < 2.0 {
        if kappa == 0.0 {
            0.0
        } else {
            (kappa - 2.0 / (n * kappa)).max(0.0)
        }
    } else {
        (n - 1.0).powi(3) / (n.powi(3) + n) * kappa
    }
}

/// Maximum likelihood with the approximate-expansion bias correction.
pub fn estimate_bf1(sample: &PreparedSample<'_>) -> Estimate {
    if sample.n() < 2 {
        return Err(Failure::Undefined);
    }
    let kappa = estimate_jml(sample)?;
    Ok(bf1_correction(kappa, sample.n() as f64))
}

/// Maximum likelihood with a jackknife bias correction,
/// `max{N κ̂ - (N-1)/N Σ κ̂₋ₙ, 0}`.
///
/// Leave-one-out estimates come from the retained cosine and sine sums. A
/// leave-one-out subsample whose resultant is 1 has `κ̂₋ₙ = +∞`, which sends
/// the correction to `-∞` and the estimate to 0; this is what happens for
/// every pair of distinct points.
pub fn estimate_bf2(sample: &PreparedSample<'_>) -> Estimate {
    let n = sample.n();
    if n < 2 {
        return Err(Failure::Undefined);
    }
    let full = estimate_jml(sample)?;
    let s = sample.summary();
    let mut loo_sum = 0.0;
    for &x in sample.angles() {
        let sub = CircularSummary::from_sums(n - 1, s.sum_cos - x.cos(), s.sum_sin - x.sin());
        match jml_from_rbar(sub.rbar) {
            Ok(k) => loo_sum += k,
            Err(_) => return Ok(0.0),
        }
    }
    let nf = n as f64;
    let jack = nf * full - (nf - 1.0) / nf * loo_sum;
    capped(jack.max(0.0))
}

/// `median_n 2[1 - cos(x_n - μ̂)]` about the circular median `μ̂`.
fn median1_denominator(angles: &[f64], center: f64) -> f64 {
    let mut v: Vec<f64> = angles
        .iter()
        .map(|&x| {
            let h = (0.5 * (x - center)).sin();
            4.0 * h * h
        })
        .collect();
    median_of(&mut v)
}

/// Median analogue of the dispersion estimator: `0.6724 / median{2[1 - cos]}`.
pub fn estimate_median1(sample: &PreparedSample<'_>) -> Estimate {
    let center = median_direction(sample.angles());
    let den = median1_denominator(sample.angles(), center);
    if den == 0.0 {
        return Err(Failure::Unbounded);
    }
    capped(MEDIAN1_CONSTANT / den)
}

/// `median_n cos(x_n - μ̂)` about the circular median.
pub fn median_cosine(sample: &PreparedSample<'_>) -> f64 {
    let center = median_direction(sample.angles());
    let mut v: Vec<f64> = sample.angles().iter().map(|&x| (x - center).cos()).collect();
    median_of(&mut v)
}

/// `G_κ(c) = P(cos(X - μ) ≤ c)` under `vM(μ, κ)`.
///
/// Computed as `(1 / (π I₀(κ))) ∫_{arccos c}^{π} e^{κ cos θ} dθ`, the
/// arcsine-density integral after `t = cos θ`. Breakpoints every doubling
/// of `1/√κ` keep the adaptive rule from missing the peak near `θ = 0`.
pub fn median2_cdf(kappa: f64, c: f64) -> f64 {
    let theta_c = c.clamp(-1.0, 1.0).acos();
    if kappa == 0.0 {
        return (PI - theta_c) / PI;
    }
    let norm = PI * scaled(kappa).i0e;
    let f = |t: f64| {
        let h = (0.5 * t).sin();
        (-2.0 * kappa * h * h).exp()
    };
    let scale = if kappa > 1.0 { 1.0 / kappa.sqrt() } else { PI };
    let tol = 1e-12 * norm;
    let mut total = 0.0;
    let mut lo = theta_c;
    let mut edge = 0.25 * scale;
    while lo < PI {
        while edge <= lo {
            edge *= 2.0;
        }
        let hi = edge.min(PI);
        total += integrate(&f, lo, hi, tol);
        lo = hi;
    }
    total / norm
}

/// Solves `G_κ(c) = 1/2` for `κ ≥ 0`.
pub fn solve_median2(c: f64) -> Estimate {
    if c.is_nan() || c < 0.0 {
        return Err(Failure::NoSolution);
    }
    if c == 0.0 {
        return Ok(0.0);
    }
    if c >= 1.0 {
        return Err(Failure::Unbounded);
    }
    let root = find_root(|k| 0.5 - median2_cdf(k, c))?;
    capped(root)
}

/// Median-based estimator from the distribution of `cos(X - μ)`: the `κ`
/// whose median of that cosine equals the sample's, centred on the circular
/// median.
pub fn estimate_median2(sample: &PreparedSample<'_>) -> Estimate {
    solve_median2(median_cosine(sample))
}

/// Inverse of the unbiased variance of the deviations about the mean
/// direction, `[(1/(N-3)) Σ (d_n - d̄)²]⁻¹`.
///
/// Deviations are taken in `(-π, π]` around the sample mean direction, so
/// the cut sits opposite the bulk of the data.
pub fn estimate_linear(sample: &PreparedSample<'_>) -> Estimate {
    let n = sample.n();
    if n <= 3 {
        return Err(Failure::Undefined);
    }
    let center = sample.summary().mean_dir;
    let dev: Vec<f64> = sample.angles().iter().map(|&x| wrap_signed(x - center)).collect();
    let mean = dev.iter().sum::<f64>() / n as f64;
    let ss: f64 = dev.iter().map(|d| (d - mean) * (d - mean)).sum();
    let var = ss / (n - 3) as f64;
    if var == 0.0 {
        return Err(Failure::Unbounded);
    }
    capped(1.0 / var)
}
