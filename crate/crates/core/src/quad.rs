//! Adaptive Gauss–Kronrod (7/15) quadrature.

use alloc::vec::Vec;


const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Integral of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// Intervals are bisected until each piece's Kronrod–Gauss difference is
/// below its share of `tol`, or the piece shrinks to a few ulps.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let width = b - a;
    let mut total = 0.0;
    let mut stack: Vec<(f64, f64)> = Vec::with_capacity(64);
    stack.push((a, b));
    while let Some((lo, hi)) = stack.pop() {
        let (value, err) = kronrod(f, lo, hi);
        let share = tol * ((hi - lo) / width).abs();
        let mid = 0.5 * (lo + hi);
        if err <= share || !(mid > lo && mid < hi) || (hi - lo).abs() < 1e-15 * width.abs() {
            total += value;
        } else {
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    total
}
