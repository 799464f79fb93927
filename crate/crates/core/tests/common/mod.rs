//! Reference computations that share no numerical code with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Simpson with Richardson correction, to absolute tolerance `tol`.
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn step<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Rough size of `∫₀^π e^{κ(cos θ - 1)} dθ`, for setting tolerances.
fn peak_mass(kappa: f64) -> f64 {
    (2.0 * PI / kappa.max(1e-300)).sqrt().min(PI)
}

/// `e^{-κ} I_ν(κ) = (1/π) ∫₀^π e^{κ(cos θ - 1)} cos(νθ) dθ`.
pub fn bessel_scaled(nu: u32, kappa: f64) -> f64 {
    let f = |t: f64| (kappa * (t.cos() - 1.0)).exp() * (nu as f64 * t).cos();
    // Split at the width of the peak so the first panel resolves it.
    let w = (4.0 / kappa.max(1e-3).sqrt()).min(PI);
    let tol = 1e-14 * peak_mass(kappa);
    (simpson(&f, 0.0, w, tol) + simpson(&f, w, PI, tol)) / PI
}

pub fn a(kappa: f64) -> f64 {
    bessel_scaled(1, kappa) / bessel_scaled(0, kappa)
}

pub fn i2_over_i0(kappa: f64) -> f64 {
    bessel_scaled(2, kappa) / bessel_scaled(0, kappa)
}

/// `P(cos(X - μ) ≤ c)` as the `t`-integral, with `t = u² - 1` removing the
/// singularity at `t = -1`.
pub fn cosine_cdf(kappa: f64, c: f64) -> f64 {
    let f = |u: f64| {
        let t = u * u - 1.0;
        2.0 * (kappa * (t - 1.0)).exp() / (2.0 - u * u).sqrt()
    };
    let tol = 1e-13 * peak_mass(kappa);
    simpson(&f, 0.0, (1.0 + c).sqrt(), tol) / (PI * bessel_scaled(0, kappa))
}

/// Plain bisection on a sign change over `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sample of size `n` with resultant length exactly `rbar`: half the points
/// at `center + δ`, half at `center - δ`, `cos δ = rbar`.
pub fn symmetric_sample(n: usize, rbar: f64, center: f64) -> Vec<f64> {
    assert!(n % 2 == 0);
    let d = rbar.acos();
    (0..n)
        .map(|i| {
            let x = if i % 2 == 0 { center + d } else { center - d };
            x.rem_euclid(2.0 * PI)
        })
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
