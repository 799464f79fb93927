mod common;

use std::f64::consts::PI;

use proptest::prelude::*;
use vmkappa_core::estimators::{
    estimate_bf2, estimate_jml, estimate_linear, estimate_map, estimate_map_xy, estimate_median2,
    estimate_mml, estimate_mml_marginal, median2_cdf, median_cosine, solve_median2,
};
use vmkappa_core::{
    a_inverse, a_ratio, estimate, prefix, sample_von_mises, summarize, AngleSample, EstimatorId,
    Failure, PreparedSample, Prior, TrueParams,
};

fn draw(kappa: f64, n: usize, seed: u64) -> AngleSample {
    sample_von_mises(TrueParams::new(0.3 + seed as f64 % 6.0, kappa).unwrap(), n, seed).unwrap()
}

fn run(id: EstimatorId, s: &AngleSample) -> Result<f64, Failure> {
    estimate(id, &PreparedSample::new(s))
}

#[test]
fn every_estimator_is_rotation_invariant() {
    let mut checked = 0;
    for seed in 0..120u64 {
        let n = [2, 3, 4, 5, 8, 16, 25, 64][(seed % 8) as usize];
        let kappa = [0.0, 0.1, 1.0, 10.0, 100.0][(seed % 5) as usize];
        let s = draw(kappa, n, seed);
        for delta in [0.4, 2.9, 5.5] {
            let r = s.rotated(delta);
            for id in EstimatorId::ALL {
                let (a, b) = (run(id, &s), run(id, &r));
                match (a, b) {
                    (Ok(x), Ok(y)) => {
                        let tol = 1e-8 * x.abs().max(y.abs()).max(1e-8);
                        assert!((x - y).abs() <= tol, "{id} seed {seed}: {x} vs {y}");
                        checked += 1;
                    }
                    _ => assert_eq!(a, b, "{id} seed {seed}"),
                }
            }
        }
    }
    assert!(checked > 3000);
}

#[test]
fn jml_on_exact_resultant() {
    let x = common::symmetric_sample(10, common::a(1.0), 2.0);
    let s = AngleSample::new(x).unwrap();
    let k = estimate_jml(&PreparedSample::new(&s)).unwrap();
    assert!((k - 1.0).abs() < 1e-8, "{k}");
}

#[test]
fn jml_failures() {
    let s = AngleSample::new(vec![1.3, 1.3]).unwrap();
    assert_eq!(run(EstimatorId::JointMl, &s), Err(Failure::Unbounded));
    let s = AngleSample::new(vec![0.0, PI]).unwrap();
    assert_eq!(run(EstimatorId::JointMl, &s), Ok(0.0));
}

#[test]
fn mml_marginal_root_matches_bisection() {
    // A sample with N = 10, R̄ = 0.7.
    let s = AngleSample::new(common::symmetric_sample(10, 0.7, 1.0)).unwrap();
    let p = PreparedSample::new(&s);
    let r = p.rbar();
    let k = estimate_mml_marginal(&p).unwrap();
    let g = |k: f64| common::a(k) - r * common::a(10.0 * r * k);
    assert!(g(k).abs() <= 1e-10, "residual {}", g(k));
    let oracle = common::bisect(|k| -g(k), 1e-8, 1e3);
    assert!(common::rel(k, oracle) < 1e-9, "{k} vs {oracle}");
    // Frozen from a 40-digit evaluation.
    assert!(common::rel(k, 1.855092130760945172) < 1e-9);
}

#[test]
fn mml_marginal_threshold_gives_zero() {
    for seed in 0..300u64 {
        let n = 2 + (seed % 30) as usize;
        let s = draw(0.2, n, seed);
        let p = PreparedSample::new(&s);
        if p.rbar() <= 1.0 / (n as f64).sqrt() {
            assert_eq!(estimate_mml_marginal(&p), Ok(0.0));
        } else {
            assert!(estimate_mml_marginal(&p).unwrap() > 0.0);
        }
    }
}

/// The jackknife with every leave-one-out estimate recomputed from the angles.
fn naive_bf2(angles: &[f64]) -> Result<f64, Failure> {
    let n = angles.len();
    let full = a_inverse(summarize(&AngleSample::new(angles.to_vec()).unwrap()).rbar)
        .map_err(|_| Failure::Unbounded)?;
    let mut sum = 0.0;
    for i in 0..n {
        let rest: Vec<f64> = angles
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &x)| x)
            .collect();
        let r = summarize(&AngleSample::new(rest).unwrap()).rbar;
        match a_inverse(r) {
            Ok(k) => sum += k,
            Err(_) => return Ok(0.0),
        }
    }
    let nf = n as f64;
    Ok((nf * full - (nf - 1.0) / nf * sum).max(0.0))
}

#[test]
fn bf2_matches_naive_jackknife() {
    for seed in 0..100u64 {
        let n = [10, 10, 17, 40][(seed % 4) as usize];
        let kappa = [1.0, 0.3, 5.0, 1.0][(seed % 4) as usize];
        let s = draw(kappa, n, seed);
        let fast = estimate_bf2(&PreparedSample::new(&s)).unwrap();
        let slow = naive_bf2(s.angles()).unwrap();
        assert!(
            (fast - slow).abs() <= 1e-10 * slow.max(1.0),
            "seed {seed}: {fast} vs {slow}"
        );
    }
}

#[test]
fn bf2_constant_jackknife() {
    // Evenly spread points: every subsample with one point removed has the
    // same resultant, and the full sample has R̄ = 0.
    let x: Vec<f64> = (0..6).map(|i| i as f64 * PI / 3.0).collect();
    let s = AngleSample::new(x).unwrap();
    assert_eq!(estimate_bf2(&PreparedSample::new(&s)), Ok(0.0));
}

#[test]
fn median2_root_matches_oracle() {
    let k = solve_median2(0.5).unwrap();
    assert!((median2_cdf(k, 0.5) - 0.5).abs() <= 1e-9);
    assert!((common::cosine_cdf(k, 0.5) - 0.5).abs() <= 1e-9);
    let oracle = common::bisect(|k| 0.5 - common::cosine_cdf(k, 0.5), 1e-8, 1e4);
    assert!(common::rel(k, oracle) < 1e-8, "{k} vs {oracle}");
    assert!(common::rel(k, 0.587915835192889311) < 1e-9);
}

#[test]
fn median2_cdf_matches_oracle() {
    for kappa in [0.0, 0.3, 2.0, 10.0, 80.0] {
        for c in [-0.9, -0.3, 0.0, 0.4, 0.95, 0.999] {
            let a = median2_cdf(kappa, c);
            let b = common::cosine_cdf(kappa, c);
            assert!((a - b).abs() < 1e-10, "κ={kappa} c={c}: {a} vs {b}");
        }
    }
}

#[test]
fn median2_failures_are_nonpositive_median_cosines() {
    for seed in 0..400u64 {
        let s = draw(0.05, 2 + (seed % 6) as usize * 2, seed);
        let p = PreparedSample::new(&s);
        let c = median_cosine(&p);
        match estimate_median2(&p) {
            Err(Failure::NoSolution) => assert!(c < 0.0),
            Err(Failure::Unbounded) => assert!(c >= 1.0),
            Err(f) => panic!("unexpected {f}"),
            Ok(_) => assert!(c >= 0.0),
        }
    }
}

#[test]
fn linear_on_concentrated_sample() {
    for seed in 0..5 {
        let s = draw(50.0, 1000, seed);
        let k = estimate_linear(&PreparedSample::new(&s)).unwrap();
        assert!((k - 50.0).abs() < 0.15 * 50.0, "{k}");
    }
}

#[test]
fn priors_wash_out_at_moderate_n() {
    let s = AngleSample::new(common::symmetric_sample(100, a_ratio(10.0).unwrap(), 4.0)).unwrap();
    let p = PreparedSample::new(&s);
    for k in [
        estimate_map(&p, Prior::H3).unwrap(),
        estimate_mml(&p, Prior::H3).unwrap(),
        estimate_map(&p, Prior::H2).unwrap(),
        estimate_mml(&p, Prior::H2).unwrap(),
    ] {
        assert!((k - 10.0).abs() < 0.5, "{k}");
    }
}

#[test]
fn map_xy_agrees_with_jml_for_large_n() {
    let s = AngleSample::new(common::symmetric_sample(1000, a_ratio(1.0).unwrap(), 0.5)).unwrap();
    let p = PreparedSample::new(&s);
    let xy = estimate_map_xy(&p).unwrap();
    let ml = estimate_jml(&p).unwrap();
    assert!((xy - ml).abs() < 0.02 * ml, "{xy} vs {ml}");
}

#[test]
fn zero_resultant_gives_zero_for_bayes() {
    let s = AngleSample::new(vec![0.0, PI / 2.0, PI, 1.5 * PI]).unwrap();
    let p = PreparedSample::new(&s);
    assert_eq!(estimate_map(&p, Prior::H2), Ok(0.0));
    assert_eq!(estimate_map_xy(&p), Ok(0.0));
}

#[test]
fn mml2_near_identical_pair_stays_moderate() {
    // For N = 2 the h₂ objective falls like -½ ln κ even at R̄ = 1, so the
    // maximum stays near the origin. Location checked with 50-digit arithmetic.
    let s = AngleSample::new(vec![1.0, 1.0 + 1e-7]).unwrap();
    let k = estimate_mml(&PreparedSample::new(&s), Prior::H2).unwrap();
    assert!(k > 0.3 && k < 0.8, "{k}");
}

#[test]
fn dispatch_examples() {
    let s = AngleSample::new(vec![0.0, PI]).unwrap();
    assert_eq!(run(EstimatorId::JointMl, &s), Ok(0.0));
    assert_eq!(run(EstimatorId::Linear, &s), Err(Failure::Undefined));
    let s = AngleSample::new(vec![0.0, 2.0, 4.0]).unwrap();
    assert!(median_cosine(&PreparedSample::new(&s)) < 0.0);
    assert_eq!(run(EstimatorId::Median2, &s), Err(Failure::NoSolution));
}

#[test]
fn jml_relative_error_shrinks_with_n() {
    let m = 200;
    let datasets: Vec<AngleSample> = (0..m).map(|i| draw(10.0, 1024, 7000 + i)).collect();
    let mut last = f64::INFINITY;
    for l in 4..=10 {
        let n = 1usize << l;
        let mrae = datasets
            .iter()
            .map(|d| {
                let k = run(EstimatorId::JointMl, &prefix(d, n).unwrap()).unwrap();
                (k - 10.0).abs() / 10.0
            })
            .sum::<f64>()
            / m as f64;
        assert!(mrae < last, "N={n}: {mrae} !< {last}");
        last = mrae;
    }
}

proptest! {
    #[test]
    fn estimates_respect_cap_and_sign(seed in any::<u64>(), n in 1usize..40, kappa in 0.0f64..50.0) {
        let s = sample_von_mises(TrueParams::new(0.0, kappa).unwrap(), n, seed).unwrap();
        for id in EstimatorId::ALL {
            if let Ok(k) = run(id, &s) {
                prop_assert!(k >= 0.0 && k <= vmkappa_core::KAPPA_CAP, "{} {}", id, k);
            }
        }
    }

    #[test]
    fn linear_defined_exactly_above_three(seed in any::<u64>(), n in 1usize..8) {
        let s = sample_von_mises(TrueParams::new(0.0, 1.0).unwrap(), n, seed).unwrap();
        let r = run(EstimatorId::Linear, &s);
        prop_assert_eq!(r == Err(Failure::Undefined), n <= 3);
    }
}
