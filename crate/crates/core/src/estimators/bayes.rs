//! Maximum a posteriori and minimum message length estimators.
//!
//! All objectives are written with the location profiled out at the sample
//! mean direction, so they depend on the data only through `N` and `R̄`.
//! `ln I₀(κ)` is carried as `κ + ln(e^{-κ} I₀(κ))`, and terms constant in
//! `κ` (such as `N ln 2π`) are dropped.

#[allow(unused_imports)]
use num_traits::Float;
use core::f64::consts::PI;


use super::{capped, Estimate, PreparedSample};
use crate::optimize::maximize;
use crate::special::{a_over_kappa, a_prime_unchecked, ln_i0, scaled};

/// Priors on `κ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Prior {
    /// `h₂(κ) = 2 / (π (1 + κ²))`.
    H2,
    /// `h₃(κ) = κ / (1 + κ²)^{3/2}`.
    H3,
}

impl Prior {
    pub fn density(self, kappa: f64) -> f64 {
        match self {
            Prior::H2 => 2.0 / (PI * (1.0 + kappa * kappa)),
            Prior::H3 => kappa / (1.0 + kappa * kappa).powf(1.5),
        }
    }

    pub fn ln_density(self, kappa: f64) -> f64 {
        match self {
            Prior::H2 => (2.0 / PI).ln() - (kappa * kappa).ln_1p(),
            Prior::H3 => kappa.ln() - 1.5 * (kappa * kappa).ln_1p(),
        }
    }
}

/// Which form of the Cartesian-parameter MAP objective to maximise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MapXyVariant {
    /// Full-sample likelihood, `-N ln[2π I₀(κ)]`.
    #[default]
    FullLikelihood,
    /// The single `-ln[2π I₀(κ)]` term as the formula is usually printed.
    Literal,
}

/// `ln L(m, κ) + N ln 2π = -N ln I₀(κ) + N R̄ κ`.
///
/// Near zero both terms are small and are used as they stand. Beyond
/// `κ = 1` the form `-N ln(e^{-κ} I₀) - N (1 - R̄) κ` avoids subtracting two
/// large numbers.
fn log_likelihood(n: f64, rbar: f64, kappa: f64) -> f64 {
    if kappa < 1.0 {
        -n * ln_i0(kappa) + n * rbar * kappa
    } else {
        -n * scaled(kappa).i0e.ln() - n * (1.0 - rbar) * kappa
    }
}

/// `ln h(κ) - N ln I₀(κ) + N R̄ κ`.
pub fn map_objective(prior: Prior, n: usize, rbar: f64, kappa: f64) -> f64 {
    prior.ln_density(kappa) + log_likelihood(n as f64, rbar, kappa)
}

/// `ln[h₃(κ)/κ] - N ln I₀(κ) + N R̄ κ`, or with a single `ln I₀` term for
/// [`MapXyVariant::Literal`].
pub fn map_xy_objective(variant: MapXyVariant, n: usize, rbar: f64, kappa: f64) -> f64 {
    let n = n as f64;
    let prior = -1.5 * (kappa * kappa).ln_1p();
    match variant {
        MapXyVariant::FullLikelihood => prior + log_likelihood(n, rbar, kappa),
        MapXyVariant::Literal => prior - scaled(kappa).i0e.ln() + (n * rbar - 1.0) * kappa,
    }
}

/// Posterior over the square root of the Fisher-information determinant.
///
/// `h₂`: `ln h₂ + ln L - ½ ln{[κ A + 3/(N π²)] A'}`.
/// `h₃`: `ln h₃ + ln L - ln N - ½ ln{κ A A'}`; the `ln κ` of the prior
/// cancels against the penalty, leaving `-3/2 ln(1+κ²) - ½ ln(A/κ) - ½ ln A'`,
/// which is finite at zero.
pub fn mml_objective(prior: Prior, n: usize, rbar: f64, kappa: f64) -> f64 {
    let nf = n as f64;
    let ll = log_likelihood(nf, rbar, kappa);
    let a_k = a_over_kappa(kappa);
    let ap = a_prime_unchecked(kappa);
    match prior {
        Prior::H2 => {
            let info = (kappa * kappa * a_k + 3.0 / (nf * PI * PI)) * ap;
            prior.ln_density(kappa) + ll - 0.5 * info.ln()
        }
        Prior::H3 => {
            -1.5 * (kappa * kappa).ln_1p() - 0.5 * a_k.ln() - 0.5 * ap.ln() + ll - nf.ln()
        }
    }
}

/// MAP estimate of `κ` under prior `h₂` or `h₃` (`BayesEst-2/3-jMAP-km`).
pub fn estimate_map(sample: &PreparedSample<'_>, prior: Prior) -> Estimate {
    let (n, r) = (sample.n(), sample.rbar());
    capped(maximize(|k| map_objective(prior, n, r, k))?)
}

/// MAP estimate in Cartesian parameters under `h₃` (`BayesEst-3-jMAP-xy`).
pub fn estimate_map_xy(sample: &PreparedSample<'_>) -> Estimate {
    estimate_map_xy_with(sample, MapXyVariant::FullLikelihood)
}

pub fn estimate_map_xy_with(sample: &PreparedSample<'_>, variant: MapXyVariant) -> Estimate {
    let (n, r) = (sample.n(), sample.rbar());
    capped(maximize(|k| map_xy_objective(variant, n, r, k))?)
}

/// MML estimate under prior `h₂` (`MML-2`) or `h₃` (`MML-3`).
pub fn estimate_mml(sample: &PreparedSample<'_>, prior: Prior) -> Estimate {
    let (n, r) = (sample.n(), sample.rbar());
    capped(maximize(|k| mml_objective(prior, n, r, k))?)
}
