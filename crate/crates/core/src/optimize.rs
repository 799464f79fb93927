//! One-dimensional root finding and maximisation on `κ ∈ [0, KAPPA_CAP]`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, KAPPA_CAP};

const BRACKET_START: f64 = 1e-8;
const SCAN_LO: f64 = 1e-8;
const SCAN_HI: f64 = 1e6;
const SCAN_POINTS: usize = 64;
const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn midpoint(lo: f64, hi: f64) -> f64 {
    if lo > 0.0 && hi / lo > 4.0 {
        (lo * hi).sqrt()
    } else {
        0.5 * (lo + hi)
    }
}

/// Root of `f` on `(0, KAPPA_CAP]`, where `f` is negative left of the root
/// and non-negative right of it.
///
/// The bracket `[1e-8, 1]` is expanded geometrically until it contains a
/// sign change, then bisected (geometrically while it spans decades) until
/// its relative width reaches `1e-13`. A root beyond the cap yields
/// [`Error::Unbounded`].
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F) -> Result<f64, Error> {
    let (mut lo, mut hi);
    if f(BRACKET_START) >= 0.0 {
        lo = 0.0;
        hi = BRACKET_START;
    } else {
        lo = BRACKET_START;
        hi = 1.0;
        while f(hi) < 0.0 {
            if hi >= KAPPA_CAP {
                return Err(Error::Unbounded);
            }
            lo = hi;
            hi = (hi * 10.0).min(KAPPA_CAP);
        }
    }
    for _ in 0..400 {
        let mid = midpoint(lo, hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Maximiser of `f` over `[0, KAPPA_CAP]`.
///
/// A 64-point log grid on `[1e-8, 1e6]` (plus `κ = 0`) locates the best
/// cell. If the best point is the top of the grid the scan continues with
/// the same spacing up to the cap; a maximum still climbing at the cap is
/// [`Error::Unbounded`]. The winning cell is refined by golden-section
/// search to relative width `1e-10` and the result compared against the
/// boundary value at zero. `f` may return `-inf`.
pub fn maximize<F: Fn(f64) -> f64>(f: F) -> Result<f64, Error> {
    let ratio = (SCAN_HI / SCAN_LO).powf(1.0 / (SCAN_POINTS as f64 - 1.0));
    let at_zero = f(0.0);

    let mut best_x = 0.0;
    let mut best_f = at_zero;
    let mut prev_x = 0.0;
    let mut left = 0.0;
    let mut right = SCAN_LO;
    let mut x = SCAN_LO;
    let mut i = 0;
    let mut climbing_at_cap = false;
    loop {
        let fx = f(x);
        if fx > best_f {
            best_f = fx;
            best_x = x;
            left = prev_x;
            right = (x * ratio).min(KAPPA_CAP);
        }
        i += 1;
        if i >= SCAN_POINTS && best_x != x {
            break;
        }
        if x >= KAPPA_CAP {
            climbing_at_cap = best_x == x;
            break;
        }
        prev_x = x;
        x = (x * ratio).min(KAPPA_CAP);
    }
    if climbing_at_cap {
        return Err(Error::Unbounded);
    }

    let refined = if left > 0.0 {
        let g = |t: f64| f(t.exp());
        let t = golden(g, left.ln(), right.ln(), 1e-10);
        polish(g, t).unwrap_or(t).exp()
    } else {
        golden(&f, left, right, 1e-10 * right)
    };
    let refined_f = f(refined);
    let mut arg = best_x;
    let mut val = best_f;
    if refined_f > val {
        arg = refined;
        val = refined_f;
    }
    // A flat objective near zero can beat f(0) by rounding noise alone.
    if at_zero >= val - 64.0 * f64::EPSILON * val.abs().max(1.0) {
        arg = 0.0;
    }
    Ok(arg)
}

/// Sharpens a golden-section maximiser `t` of `g` by locating the zero of a
/// central-difference slope.
///
/// Comparing function values pins a smooth maximum down only to about
/// `√ε`; the slope changes sign cleanly, so its root is good to roughly
/// `noise / (h f'')`. Gives up, returning `None`, if the slope has no sign change
/// close to `t`.
fn polish<G: Fn(f64) -> f64>(g: G, t: f64) -> Option<f64> {
    // Fourth-order stencil: truncation ~h⁴, so a wide step is affordable.
    const H: f64 = 1e-3;
    let slope = |t: f64| 8.0 * (g(t + H) - g(t - H)) - (g(t + 2.0 * H) - g(t - 2.0 * H));
    let w = 1e-6 * t.abs().max(1.0);
    let (mut lo, mut hi) = (t - w, t + w);
    let (s_lo, s_hi) = (slope(lo), slope(hi));
    if !(s_lo > 0.0 && s_hi < 0.0) {
        return None;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Golden-section search for a maximum of `f` in `[a, b]`, stopping when the
/// bracket is narrower than `width`.
pub fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, width: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..300 {
        if (b - a).abs() <= width {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        c
    } else {
        d
    }
}
