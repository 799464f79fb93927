//! Seedable von Mises sampling.
//!
//! Draws use the Best–Fisher rejection scheme with a wrapped Cauchy
//! envelope, which has bounded expected cost for every `κ`. The uniform
//! case `κ = 0` gets its own branch since the envelope degenerates there.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Error;

/// Wraps an angle in radians into `[0, 2π)`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut w = x % TAU;
    if w < 0.0 {
        w += TAU;
    }
    // A tiny negative remainder rounds up to exactly 2π.
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// Location and concentration of a von Mises distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrueParams {
    mu: f64,
    kappa: f64,
}

impl TrueParams {
    pub fn new(mu: f64, kappa: f64) -> Result<Self, Error> {
        if !(mu.is_finite() && (0.0..TAU).contains(&mu)) {
            return Err(Error::Domain("TrueParams::mu"));
        }
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::Domain("TrueParams::kappa"));
        }
        Ok(Self { mu, kappa })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// A non-empty, ordered sample of angles in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSample {
    angles: Vec<f64>,
}

impl AngleSample {
    /// Takes angles that are already in `[0, 2π)`.
    pub fn new(angles: Vec<f64>) -> Result<Self, Error> {
        if angles.is_empty() {
            return Err(Error::Domain("AngleSample: empty"));
        }
        if angles.iter().any(|a| !(a.is_finite() && (0.0..TAU).contains(a))) {
            return Err(Error::Domain("AngleSample: angle outside [0, 2π)"));
        }
        Ok(Self { angles })
    }

    /// Wraps arbitrary finite radians into `[0, 2π)`.
    pub fn from_radians<I: IntoIterator<Item = f64>>(values: I) -> Result<Self, Error> {
        let mut angles = Vec::new();
        for v in values {
            if !v.is_finite() {
                return Err(Error::Domain("AngleSample: non-finite angle"));
            }
            angles.push(wrap_angle(v));
        }
        Self::new(angles)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The same sample rotated by `delta` radians.
    pub fn rotated(&self, delta: f64) -> Self {
        Self {
            angles: self.angles.iter().map(|&a| wrap_angle(a + delta)).collect(),
        }
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.angles
    }
}

/// The first `length` angles of `sample`.
pub fn prefix(sample: &AngleSample, length: usize) -> Result<AngleSample, Error> {
    if length == 0 || length > sample.len() {
        return Err(Error::Domain("prefix: length"));
    }
    Ok(AngleSample {
        angles: sample.angles[..length].to_vec(),
    })
}

/// The von Mises distribution `vM(μ, κ)` as a [`Distribution`] over `[0, 2π)`.
#[derive(Debug, Clone, Copy)]
pub struct VonMises {
    mu: f64,
    kappa: f64,
    r: f64,
}

impl VonMises {
    pub fn new(params: TrueParams) -> Self {
        let kappa = params.kappa();
        let r = if kappa > 0.0 {
            let tau = 1.0 + (1.0 + 4.0 * kappa * kappa).sqrt();
            let rho = (tau - (2.0 * tau).sqrt()) / (2.0 * kappa);
            (1.0 + rho * rho) / (2.0 * rho)
        } else {
            f64::INFINITY
        };
        Self {
            mu: params.mu(),
            kappa,
            r,
        }
    }
}

impl Distribution<f64> for VonMises {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        if self.kappa == 0.0 {
            return wrap_angle(TAU * rng.random::<f64>());
        }
        let r = self.r;
        loop {
            let u1: f64 = rng.random();
            let u2: f64 = rng.random();
            let u3: f64 = rng.random();
            let z = (PI * u1).cos();
            let f = ((1.0 + r * z) / (r + z)).clamp(-1.0, 1.0);
            let c = self.kappa * (r - f);
            let accept = c * (2.0 - c) - u2 > 0.0 || (c / u2).ln() + 1.0 - c >= 0.0;
            if accept {
                let theta = f.acos();
                let signed = if u3 > 0.5 { theta } else { -theta };
                return wrap_angle(self.mu + signed);
            }
        }
    }
}

/// The generator behind every seeded draw: ChaCha8, counter based.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` i.i.d. draws from `vM(μ, κ)` using a generator seeded with `seed`.
pub fn sample_von_mises(params: TrueParams, n: usize, seed: u64) -> Result<AngleSample, Error> {
    let mut rng = seeded_rng(seed);
    sample_von_mises_with(params, n, &mut rng)
}

/// Like [`sample_von_mises`] but drawing from a caller-owned generator.
pub fn sample_von_mises_with<R: Rng + ?Sized>(
    params: TrueParams,
    n: usize,
    rng: &mut R,
) -> Result<AngleSample, Error> {
    if n == 0 {
        return Err(Error::Domain("sample_von_mises: n"));
    }
    let dist = VonMises::new(params);
    let angles = (0..n).map(|_| dist.sample(rng)).collect();
    Ok(AngleSample { angles })
}
