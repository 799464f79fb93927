//! Estimation of the von Mises concentration parameter.
//!
//! This crate holds the numerical core: scaled Bessel functions and the
//! ratio `A(κ) = I₁(κ)/I₀(κ)`, a seedable von Mises sampler, circular
//! descriptive statistics, twelve estimators of `κ`, and the log-log trend
//! fits used to summarise benchmark error curves.
//!
//! It is `no_std` and only needs `alloc`. File formats, timing and the
//! command-line interface live in the `vmkappa` crate.

#![no_std]
// Float methods come from `num_traits::Float`. When a dependency links std,
// the inherent methods take over and those imports read as unused.

extern crate alloc;

pub mod descriptives;
pub mod estimators;
pub mod optimize;
pub mod quad;
pub mod sampler;
pub mod special;
pub mod trendfit;

pub use descriptives::{circular_median, rotated_deviations, summarize, CircularSummary};
pub use estimators::{
    estimate, Estimate, EstimateOutcome, EstimatorId, Failure, MapXyVariant, PreparedSample, Prior,
};
pub use sampler::{prefix, sample_von_mises, AngleSample, TrueParams, VonMises};
pub use special::{a_inverse, a_prime, a_ratio, bessel_scaled, ScaledBessel};
pub use trendfit::{
    fit_decay, fit_linear, predict, CurvePoint, DecayFit, ErrorKind, FitError, LinearFit,
};

/// Largest concentration any solver is allowed to report. Anything beyond is
/// an "unbounded" outcome.
pub const KAPPA_CAP: f64 = 1e10;

/// Errors raised by the numerical primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("argument outside the domain of {0}")]
    Domain(&'static str),
    /// The requested solution would exceed [`KAPPA_CAP`] (or is infinite).
    #[error("solution is unbounded")]
    Unbounded,
}
