//! Exhaustive log-grid search over the MAP and MML objectives.
//!
//! Objectives are rewritten here from their textbook form with test-local
//! priors; the grid then just takes the best point. Bessel quantities come
//! from the library, which has its own quadrature checks.

use std::f64::consts::{PI, TAU};

use vmkappa_core::special::{a_prime, a_ratio, ln_i0};
use vmkappa_core::{estimate, sample_von_mises, EstimatorId, PreparedSample, TrueParams};

const GRID_POINTS: usize = 1_000_000;
const GRID_LO: f64 = 1e-8;
const GRID_HI: f64 = 1e6;

struct Point {
    kappa: f64,
    ln_i0: f64,
    a: f64,
    a_prime: f64,
}

impl Point {
    fn at(kappa: f64) -> Self {
        Point {
            kappa,
            ln_i0: ln_i0(kappa),
            a: a_ratio(kappa).unwrap(),
            a_prime: a_prime(kappa).unwrap(),
        }
    }
}

fn h2(k: f64) -> f64 {
    2.0 / (PI * (1.0 + k * k))
}

fn h3(k: f64) -> f64 {
    k / (1.0 + k * k).powf(1.5)
}

/// Objective of `id` at a positive grid point.
fn objective(id: EstimatorId, n: f64, r: f64, p: &Point) -> f64 {
    let k = p.kappa;
    let ll = -n * p.ln_i0 + n * r * k;
    match id {
        EstimatorId::Map2 => h2(k).ln() + ll,
        EstimatorId::Map3 => h3(k).ln() + ll,
        EstimatorId::Map3Xy => (h3(k) / k).ln() + ll,
        EstimatorId::Mml2 => {
            h2(k).ln() + ll - 0.5 * ((k * p.a + 3.0 / (n * PI * PI)) * p.a_prime).ln()
        }
        EstimatorId::Mml3 => h3(k).ln() + ll - n.ln() - 0.5 * (k * p.a * p.a_prime).ln(),
        _ => unreachable!(),
    }
}

/// Limit of the objective as `κ → 0`, with `A/κ → ½` and `A' → ½`.
fn objective_at_zero(id: EstimatorId, n: f64) -> f64 {
    match id {
        EstimatorId::Map2 => h2(0.0).ln(),
        EstimatorId::Map3 => f64::NEG_INFINITY,
        EstimatorId::Map3Xy => 0.0,
        EstimatorId::Mml2 => h2(0.0).ln() - 0.5 * (0.5 * 3.0 / (n * PI * PI)).ln(),
        EstimatorId::Mml3 => 2f64.ln() - n.ln(),
        _ => unreachable!(),
    }
}

fn grid_argmax(id: EstimatorId, n: usize, r: f64, grid: &[Point], ratio: f64) -> f64 {
    let nf = n as f64;
    let mut best = (0.0, objective_at_zero(id, nf));
    for p in grid {
        let v = objective(id, nf, r, p);
        if v > best.1 {
            best = (p.kappa, v);
        }
    }
    // Keep climbing past the table, with the same spacing, if the top won.
    let mut k = grid.last().unwrap().kappa;
    while best.0 == k && k < 1e10 {
        k *= ratio;
        let v = objective(id, nf, r, &Point::at(k));
        if v > best.1 {
            best = (k, v);
        }
    }
    best.0
}

pub const ESTIMATORS: [EstimatorId; 5] = [
    EstimatorId::Map2,
    EstimatorId::Map3,
    EstimatorId::Map3Xy,
    EstimatorId::Mml2,
    EstimatorId::Mml3,
];

/// Compares every estimator in [`ESTIMATORS`] with the grid argmax on 12
/// samples for each `N ∈ {2, 5, 25}` and `κ ∈ {0, 1, 10}`. Returns the
/// number of comparisons and a line per mismatch beyond `1e-3` relative
/// (or `1e-6` absolute for estimates at zero).
pub fn compare_with_grid() -> (usize, Vec<String>) {
    let ratio = (GRID_HI / GRID_LO).powf(1.0 / (GRID_POINTS as f64 - 1.0));
    let grid: Vec<Point> = (0..GRID_POINTS)
        .map(|i| Point::at(GRID_LO * ratio.powi(i as i32)))
        .collect();

    let mut checked = 0;
    let mut bad = Vec::new();
    for &n in &[2usize, 5, 25] {
        for &kappa in &[0.0, 1.0, 10.0] {
            for rep in 0..12u64 {
                let seed = 0x5eed_0000 + 1000 * n as u64 + 100 * kappa as u64 + rep;
                let params = TrueParams::new((0.7 * rep as f64) % TAU, kappa).unwrap();
                let s = sample_von_mises(params, n, seed).unwrap();
                let prepared = PreparedSample::new(&s);
                for id in ESTIMATORS {
                    let truth = grid_argmax(id, n, prepared.rbar(), &grid, ratio);
                    let got = match estimate(id, &prepared) {
                        Ok(v) => v,
                        Err(f) => {
                            bad.push(format!("{id} n={n} kappa={kappa} rep={rep}: {f}"));
                            continue;
                        }
                    };
                    let err = (got - truth).abs();
                    if err > 1e-3 * truth && err > 1e-6 {
                        bad.push(format!("{id} n={n} kappa={kappa} rep={rep}: {got} vs {truth}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    (checked, bad)
}
