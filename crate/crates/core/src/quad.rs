//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Callers pass every known singular or kink location as a split point so
//! that singularities only ever sit at interval endpoints, where the
//! Kronrod nodes never evaluate and bisection converges geometrically for
//! integrable logarithmic blow-ups.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the odd-indexed Kronrod nodes (XGK[1], XGK[3], XGK[5], XGK[7]).
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_64, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Absolute error target.
    pub tol: f64,
    /// Relative error target; the looser of the two wins.
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn absolute(tol: f64) -> Self {
        Self { tol, rel_tol: 0.0, max_intervals: 200_000 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
pub fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut res_abs = kronrod.abs();
    let mut samples = [(0.0, 0.0); 7];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx), f(center + dx));
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
        *sample = (f1, f2);
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in samples.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, error)
}

/// Integrates `f` over `[points[0], points[last]]`, starting from the panels the
/// sorted `points` define.
pub fn integrate<F: Fn(f64) -> f64>(f: F, points: &[f64], opts: QuadOptions) -> Result<Quadrature> {
    if !(opts.tol > 0.0) && !(opts.rel_tol > 0.0) {
        return Err(Error::Tolerance(opts.tol));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let (value, error) = kronrod15(&f, a, b);
        evaluations += 15;
        heap.push(Panel { a, b, value, error });
    }
    let mut finished: Vec<Panel> = Vec::new();
    let mut total_error: f64 = heap.iter().map(|p| p.error).sum();
    let mut total_value: f64 = heap.iter().map(|p| p.value).sum();
    loop {
        if !total_value.is_finite() || !total_error.is_finite() {
            return Err(Error::Quadrature { value: total_value, error: total_error });
        }
        let target = opts.tol.max(opts.rel_tol * total_value.abs());
        if total_error <= target {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) || heap.len() + finished.len() >= opts.max_intervals {
            finished.push(worst);
            if heap.len() + finished.len() >= opts.max_intervals {
                return Err(Error::Quadrature { value: total_value, error: total_error });
            }
            continue;
        }
        let (v1, e1) = kronrod15(&f, worst.a, mid);
        let (v2, e2) = kronrod15(&f, mid, worst.b);
        evaluations += 30;
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
    // the running totals drift; re-add the panels in a fixed order
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.extend(finished);
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).collect::<CompensatedSum>().value();
    let error = panels.iter().map(|p| p.error).sum();
    Ok(Quadrature { value, error, evaluations })
}

/// Root of `f` in a bracket `[a, b]` with `f(a)·f(b) < 0` (Illinois variant of regula falsi).
fn refine_root<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut fa: f64, mut b: f64, mut fb: f64) -> (f64, usize) {
    let mut side = 0;
    let mut previous = f64::NAN;
    for iteration in 1..=100 {
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        let fc = f(c);
        if fc == 0.0 || (c - previous).abs() <= 1e-14 * c.abs().max(1.0) || !fc.is_finite() {
            return (c, iteration);
        }
        previous = c;
        if (fc > 0.0) == (fb > 0.0) {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    (0.5 * (a + b), 100)
}

/// Integrates `|f|` after splitting at the sign changes of `f` detected between
/// consecutive `samples`.
///
/// `points` are the caller's known kinks (endpoints included); `samples` only
/// locate zero crossings and should be dense enough to see each one. A pair of
/// crossings inside one sampling cell is left to adaptive bisection.
pub fn integrate_abs<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    samples: &[f64],
    opts: QuadOptions,
) -> Result<Quadrature> {
    let (Some(&lo), Some(&hi)) = (points.first(), points.last()) else {
        return Ok(Quadrature { value: 0.0, error: 0.0, evaluations: 0 });
    };
    let mut grid: Vec<f64> = samples.iter().copied().filter(|&s| s > lo && s < hi).collect();
    grid.extend_from_slice(points);
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    let values: Vec<f64> = grid.iter().map(|&s| f(s)).collect();
    let mut evaluations = grid.len();
    let mut splits = points.to_vec();
    for (w, v) in grid.windows(2).zip(values.windows(2)) {
        if v[0] * v[1] < 0.0 {
            let (root, used) = refine_root(&f, w[0], v[0], w[1], v[1]);
            evaluations += used;
            splits.push(root);
        }
    }
    splits.sort_by(f64::total_cmp);
    splits.dedup();
    let mut q = integrate(|x| f(x).abs(), &splits, opts)?;
    q.evaluations += evaluations;
    Ok(q)
}

/// Sorted, deduplicated split points restricted to `[lo, hi]`, endpoints included.
pub fn split_points(lo: f64, hi: f64, interior: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut pts: Vec<f64> = interior.into_iter().filter(|&p| p > lo && p < hi).collect();
    pts.push(lo);
    pts.push(hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Geometric points `lo·r^k` strictly inside `(lo, hi)`, `per_octave` per factor of two.
pub fn geometric_points(lo: f64, hi: f64, per_octave: usize) -> Vec<f64> {
    let ratio = 2f64.powf(1.0 / per_octave as f64);
    let mut out = Vec::new();
    let mut p = lo * ratio;
    while p < hi {
        out.push(p);
        p *= ratio;
    }
    out
}
