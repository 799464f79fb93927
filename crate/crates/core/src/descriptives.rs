//! Circular summary statistics: mean resultant length, mean direction, the
//! circular median and deviations about a centre.

#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};


use crate::sampler::{wrap_angle, AngleSample};

/// Resultants of a sample, `R̄ e^{im} = (1/N) Σ e^{i x_n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularSummary {
    pub n: usize,
    pub rbar: f64,
    pub mean_dir: f64,
    pub sum_cos: f64,
    pub sum_sin: f64,
    /// Set when the resultant vanishes; `mean_dir` is then 0 by convention.
    pub degenerate: bool,
}

impl CircularSummary {
    /// Builds the summary from accumulated cosine and sine sums.
    ///
    /// A resultant no larger than the rounding noise of the sums
    /// (`4 n ε`) is treated as exactly zero.
    pub fn from_sums(n: usize, sum_cos: f64, sum_sin: f64) -> Self {
        let length = sum_cos.hypot(sum_sin);
        if length <= 4.0 * n as f64 * f64::EPSILON {
            return Self {
                n,
                rbar: 0.0,
                mean_dir: 0.0,
                sum_cos,
                sum_sin,
                degenerate: true,
            };
        }
        Self {
            n,
            rbar: (length / n as f64).min(1.0),
            mean_dir: wrap_angle(sum_sin.atan2(sum_cos)),
            sum_cos,
            sum_sin,
            degenerate: false,
        }
    }
}

pub fn summarize(sample: &AngleSample) -> CircularSummary {
    let (c, s) = sample
        .angles()
        .iter()
        .fold((0.0, 0.0), |(c, s), &x| (c + x.cos(), s + x.sin()));
    CircularSummary::from_sums(sample.len(), c, s)
}

/// Arc-length distance between two angles, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % TAU;
    PI - (PI - d).abs()
}

/// Sum of arc-length distances from `phi` to every angle.
pub fn circular_deviation(angles: &[f64], phi: f64) -> f64 {
    angles.iter().map(|&x| circular_distance(x, phi)).sum()
}

/// The angle minimising the summed arc-length deviation.
///
/// The deviation is piecewise linear with its local minima at data points,
/// so only those are candidates. They are scored in `O(N log N)` with a
/// sweep over the sorted sample. When the deviation is flat on the arc
/// between the winner and a neighbour (half the sample on either side, as
/// happens for every even sample size), both ends tie and the midpoint of
/// that arc is returned, so the median rotates with the data. Other near-ties
/// are rescored directly and the smallest angle wins.
pub fn circular_median(sample: &AngleSample) -> f64 {
    median_direction(sample.angles())
}

pub(crate) fn median_direction(angles: &[f64]) -> f64 {
    let n = angles.len();
    if n == 1 {
        return angles[0];
    }
    let mut sorted = angles.to_vec();
    sorted.sort_by(f64::total_cmp);

    // Unrolled circle: b[k] = sorted[k] for k < n, sorted[k - n] + 2π beyond.
    let ext: Vec<f64> = sorted
        .iter()
        .copied()
        .chain(sorted.iter().map(|&a| a + TAU))
        .collect();
    let mut cum = Vec::with_capacity(2 * n + 1);
    cum.push(0.0);
    for &b in &ext {
        let last = *cum.last().unwrap();
        cum.push(last + b);
    }

    let mut scores = Vec::with_capacity(n);
    let mut split = 0;
    for (i, &phi) in sorted.iter().enumerate() {
        split = split.max(i);
        while split < i + n && ext[split] - phi <= PI {
            split += 1;
        }
        let near = (cum[split] - cum[i]) - (split - i) as f64 * phi;
        let far = (i + n - split) as f64 * (TAU + phi) - (cum[i + n] - cum[split]);
        scores.push(near + far);
    }

    let best = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let slack = 1e-9 * (best + TAU) * n as f64;
    let mut winner = f64::NAN;
    let mut winner_score = f64::INFINITY;
    for (i, &score) in scores.iter().enumerate() {
        if score > best + slack {
            continue;
        }
        let exact = circular_deviation(angles, sorted[i]);
        if exact < winner_score * (1.0 - 1e-14) - 1e-300 {
            winner_score = exact;
            winner = sorted[i];
        }
    }
    flat_arc_midpoint(&sorted, winner).unwrap_or(winner)
}

/// Midpoint of a data-free arc next to `at` on which the deviation is flat.
fn flat_arc_midpoint(sorted: &[f64], at: f64) -> Option<f64> {
    let n = sorted.len();
    if n % 2 == 1 {
        return None;
    }
    let next = sorted.iter().copied().find(|&x| x > at).unwrap_or(sorted[0]);
    let prev = sorted.iter().rev().copied().find(|&x| x < at).unwrap_or(sorted[n - 1]);
    [(at, next), (prev, at)]
        .into_iter()
        .filter(|&(lo, hi)| lo != hi)
        .find_map(|(lo, hi)| {
            let gap = wrap_angle(hi - lo);
            let mid = wrap_angle(lo + 0.5 * gap);
            // Flat means no antipode of a data point inside the arc and an
            // even split of the sample about it.
            let mut ahead = 0;
            for &x in sorted {
                let d = wrap_signed(x - mid);
                if d.abs() > PI - 0.5 * gap {
                    return None;
                }
                if d > 0.0 {
                    ahead += 1;
                }
            }
            (2 * ahead == n).then_some(mid)
        })
}

/// Each angle minus `center`, wrapped into `(-π, π]`.
pub fn rotated_deviations(sample: &AngleSample, center: f64) -> Vec<f64> {
    sample.angles().iter().map(|&x| wrap_signed(x - center)).collect()
}

pub(crate) fn wrap_signed(x: f64) -> f64 {
    let d = wrap_angle(x);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Median of a slice, averaging the two central values for even lengths.
pub(crate) fn median_of(values: &mut [f64]) -> f64 {
    let n = values.len();
    values.sort_by(f64::total_cmp);
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
