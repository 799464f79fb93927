//! The twelve concentration estimators.
//!
//! Every estimator maps a sample to either a value in `[0, KAPPA_CAP]` or a
//! typed [`Failure`]. They read the data through a [`PreparedSample`], which
//! carries the circular summary so callers can compute it once per dataset.

mod bayes;
mod frequentist;

use core::fmt;
use core::str::FromStr;

pub use bayes::{
    estimate_map, estimate_map_xy, estimate_map_xy_with, estimate_mml, map_objective,
    map_xy_objective, mml_objective, MapXyVariant, Prior,
};
pub use frequentist::{
    estimate_bf1, estimate_bf2, estimate_jml, estimate_linear, estimate_median1,
    estimate_median2, estimate_mml_marginal, median2_cdf, median_cosine, solve_median2,
    MEDIAN1_CONSTANT,
};

use crate::descriptives::{summarize, CircularSummary};
use crate::sampler::AngleSample;
use crate::KAPPA_CAP;

/// Why an estimator produced no value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Failure {
    /// The estimator is not defined for this sample size.
    Undefined,
    /// The defining equation has no solution in `κ ≥ 0`.
    NoSolution,
    /// The estimate is infinite or beyond [`KAPPA_CAP`].
    Unbounded,
}

impl Failure {
    pub const ALL: [Failure; 3] = [Failure::Undefined, Failure::NoSolution, Failure::Unbounded];

    pub fn as_str(self) -> &'static str {
        match self {
            Failure::Undefined => "Undefined",
            Failure::NoSolution => "NoSolution",
            Failure::Unbounded => "Unbounded",
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Failure {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Failure::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or(UnknownName)
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        match e {
            crate::Error::Unbounded => Failure::Unbounded,
            crate::Error::Domain(_) => Failure::Undefined,
        }
    }
}

/// Result of a single estimation.
pub type Estimate = Result<f64, Failure>;

/// Returned when parsing an unknown estimator or failure name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownName;

impl fmt::Display for UnknownName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown name")
    }
}

impl core::error::Error for UnknownName {}

/// The estimators, in the order they are listed and reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorId {
    JointMl,
    MarginalMl,
    Bf1,
    Bf2,
    Median1,
    Median2,
    Linear,
    Map2,
    Map3,
    Map3Xy,
    Mml2,
    Mml3,
}

impl EstimatorId {
    pub const ALL: [EstimatorId; 12] = [
        EstimatorId::JointMl,
        EstimatorId::MarginalMl,
        EstimatorId::Bf1,
        EstimatorId::Bf2,
        EstimatorId::Median1,
        EstimatorId::Median2,
        EstimatorId::Linear,
        EstimatorId::Map2,
        EstimatorId::Map3,
        EstimatorId::Map3Xy,
        EstimatorId::Mml2,
        EstimatorId::Mml3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EstimatorId::JointMl => "jML",
            EstimatorId::MarginalMl => "mML",
            EstimatorId::Bf1 => "BF1",
            EstimatorId::Bf2 => "BF2",
            EstimatorId::Median1 => "median-1",
            EstimatorId::Median2 => "median-2",
            EstimatorId::Linear => "linear",
            EstimatorId::Map2 => "BayesEst-2-jMAP-km",
            EstimatorId::Map3 => "BayesEst-3-jMAP-km",
            EstimatorId::Map3Xy => "BayesEst-3-jMAP-xy",
            EstimatorId::Mml2 => "MML-2",
            EstimatorId::Mml3 => "MML-3",
        }
    }

    /// Position in [`EstimatorId::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for EstimatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EstimatorId {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EstimatorId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or(UnknownName)
    }
}

/// A sample together with its circular summary.
#[derive(Debug, Clone, Copy)]
pub struct PreparedSample<'a> {
    angles: &'a [f64],
    summary: CircularSummary,
}

impl<'a> PreparedSample<'a> {
    pub fn new(sample: &'a AngleSample) -> Self {
        Self {
            angles: sample.angles(),
            summary: summarize(sample),
        }
    }

    pub fn angles(&self) -> &'a [f64] {
        self.angles
    }

    pub fn summary(&self) -> &CircularSummary {
        &self.summary
    }

    pub fn n(&self) -> usize {
        self.angles.len()
    }

    pub fn rbar(&self) -> f64 {
        self.summary.rbar
    }
}

/// One estimator's outcome on one dataset, with its wall-clock cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateOutcome {
    pub estimator: EstimatorId,
    pub result: Estimate,
    pub seconds: f64,
}

impl EstimateOutcome {
    pub fn value(&self) -> Option<f64> {
        self.result.ok()
    }

    pub fn failure(&self) -> Option<Failure> {
        self.result.err()
    }
}

/// Runs estimator `id` on `sample`.
pub fn estimate(id: EstimatorId, sample: &PreparedSample<'_>) -> Estimate {
    match id {
        EstimatorId::JointMl => estimate_jml(sample),
        EstimatorId::MarginalMl => estimate_mml_marginal(sample),
        EstimatorId::Bf1 => estimate_bf1(sample),
        EstimatorId::Bf2 => estimate_bf2(sample),
        EstimatorId::Median1 => estimate_median1(sample),
        EstimatorId::Median2 => estimate_median2(sample),
        EstimatorId::Linear => estimate_linear(sample),
        EstimatorId::Map2 => estimate_map(sample, Prior::H2),
        EstimatorId::Map3 => estimate_map(sample, Prior::H3),
        EstimatorId::Map3Xy => estimate_map_xy(sample),
        EstimatorId::Mml2 => estimate_mml(sample, Prior::H2),
        EstimatorId::Mml3 => estimate_mml(sample, Prior::H3),
    }
}

/// Rejects values that are not finite or lie beyond the cap.
pub(crate) fn capped(value: f64) -> Estimate {
    if value.is_finite() && value <= KAPPA_CAP {
        Ok(value.max(0.0))
    } else {
        Err(Failure::Unbounded)
    }
}
