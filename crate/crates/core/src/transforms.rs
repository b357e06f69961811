//! Exact transforms of piecewise-linear models.
//!
//! Fourier integrals use the closed form of `∫ (α+βt) e^{ixt}` on each
//! piece, written around the piece midpoint so it stays accurate as `x → 0`.
//! Principal values use the log antiderivative of `(α+βs)/(t−s)`; the log
//! terms at `s = t` cancel whenever the model is continuous there and are
//! reported as [`Error::Singular`] otherwise.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{FunctionModel, Piecewise};
use crate::quad::{self, QuadOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformKind {
    Cosine,
    Sine,
}

impl TransformKind {
    pub fn from_gamma(gamma: u8) -> Result<Self> {
        match gamma {
            0 => Ok(Self::Cosine),
            1 => Ok(Self::Sine),
            other => Err(Error::OutOfRange { what: "gamma", value: other as f64 }),
        }
    }

    pub fn gamma(self) -> u8 {
        match self {
            Self::Cosine => 0,
            Self::Sine => 1,
        }
    }
}

fn check_point(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositivePoint(x))
    }
}

#[inline]
fn sinc(w: f64) -> f64 {
    if w.abs() < 1e-4 {
        1.0 - w * w / 6.0
    } else {
        w.sin() / w
    }
}

/// `(sin w − w cos w) / w²`, with a series near zero where the difference cancels.
#[inline]
fn sinc_moment(w: f64) -> f64 {
    if w.abs() < 0.2 {
        let w2 = w * w;
        w * (1.0 / 3.0 - w2 * (1.0 / 30.0 - w2 * (1.0 / 840.0 - w2 * (1.0 / 45_360.0 - w2 / 3_991_680.0))))
    } else {
        (w.sin() - w * w.cos()) / (w * w)
    }
}

/// `∫_lower^∞ g(t) e^{ixt} dt` in closed form.
///
/// Long pieces (`x·half-width ≥ 1/2`) use the endpoint form
/// `[g e^{ixt}/(ix) + g′ e^{ixt}/x²]_a^b`, sharing `e^{ixt}` between
/// neighbouring pieces; short ones use the midpoint form.
pub fn fourier_complex<G: Piecewise + ?Sized>(g: &G, x: f64, lower: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut cached: Option<(f64, Complex64)> = None;
    for seg in g.segments() {
        let a = seg.start.max(lower);
        let b = seg.end;
        if a >= b {
            continue;
        }
        let p = seg.value_at(a);
        let q = seg.right;
        let half = 0.5 * (b - a);
        let w = x * half;
        if w.abs() >= 0.5 {
            let ea = match cached {
                Some((t, e)) if t == a => e,
                _ => Complex64::cis(x * a),
            };
            let eb = Complex64::cis(x * b);
            let inv = 1.0 / x;
            acc += (eb * q - ea * p) * Complex64::new(0.0, -inv) + (eb - ea) * (seg.slope() * inv * inv);
            cached = Some((b, eb));
        } else {
            let core = Complex64::new((p + q) * sinc(w), (q - p) * sinc_moment(w));
            acc += Complex64::from_polar(half, x * 0.5 * (a + b)) * core;
        }
    }
    acc
}

/// `∫_0^∞ f(t) cos(xt − πγ/2) dt`.
pub fn fourier_transform<G: Piecewise + ?Sized>(f: &G, kind: TransformKind, x: f64) -> Result<f64> {
    check_point(x)?;
    if x < 1e-300 {
        return Ok(match kind {
            TransformKind::Cosine => f.segments().map(|s| s.integral(s.start, s.end)).sum(),
            TransformKind::Sine => 0.0,
        });
    }
    let z = fourier_complex(f, x, 0.0);
    Ok(match kind {
        TransformKind::Cosine => z.re,
        TransformKind::Sine => z.im,
    })
}

/// PV `∫_lo^hi g(s)/(t−s) ds`.
fn cauchy_pv(g: &FunctionModel, t: f64, lo: f64, hi: f64) -> Result<f64> {
    let mut regular = 0.0;
    let mut singular = 0.0;
    for seg in g.segments() {
        let a = seg.start.max(lo);
        let b = seg.end.min(hi);
        if a >= b {
            continue;
        }
        regular -= seg.slope() * (b - a);
        let at_t = seg.value_at(t);
        if at_t == 0.0 {
            continue;
        }
        // ln|t−a| − ln|t−b|
        let log_ratio = if t == a {
            singular += at_t;
            -(b - t).ln()
        } else if t == b {
            singular -= at_t;
            (t - a).ln()
        } else if t > a && t < b {
            (t - a).ln() - (b - t).ln()
        } else if t > b {
            ((b - a) / (t - b)).ln_1p()
        } else {
            (-(b - a) / (b - t)).ln_1p()
        };
        regular += at_t * log_ratio;
    }
    if singular.abs() > 1e-9 * g.sup_abs() {
        return Err(Error::Singular(t));
    }
    Ok(regular)
}

/// `Tg(t) = PV ∫_{t/2}^{3t/2} g(s)/(t−s) ds`.
pub fn t_transform(g: &FunctionModel, t: f64) -> Result<f64> {
    check_point(t)?;
    let (t0, tk) = g.support();
    if 0.5 * t >= tk || 1.5 * t <= t0 {
        return Ok(0.0);
    }
    cauchy_pv(g, t, 0.5 * t, 1.5 * t)
}

/// Half-line Hilbert transform `PV ∫_0^∞ g(s)/(t−s) ds`.
pub fn hilbert_transform(g: &FunctionModel, t: f64) -> Result<f64> {
    check_point(t)?;
    let (t0, tk) = g.support();
    cauchy_pv(g, t, t0, tk)
}

/// `∫_0^∞ g(s)/(t+s) ds`, the reflected half of the odd extension's kernel.
fn reflected_kernel(g: &FunctionModel, t: f64) -> f64 {
    g.segments()
        .map(|seg| {
            let (a, b) = (seg.start, seg.end);
            seg.slope() * (b - a) + seg.value_at(-t) * ((b - a) / (t + a)).ln_1p()
        })
        .sum()
}

/// Hilbert transform of the odd extension of `g` to the line, evaluated at `t > 0`.
pub fn hilbert_transform_odd(g: &FunctionModel, t: f64) -> Result<f64> {
    let (_, tk) = g.support();
    if t < 4.0 * tk {
        return Ok(hilbert_transform(g, t)? - reflected_kernel(g, t));
    }
    // far field: the log form cancels to O(1/t²); the kernel 2s/(t²−s²) is smooth here
    let kernel = |s: f64| 2.0 * s * g.evaluate(s) / ((t - s) * (t + s));
    Ok(g.segments()
        .map(|seg| {
            let mid = 0.5 * (seg.start + seg.end);
            quad::kronrod15(&kernel, seg.start, mid).0 + quad::kronrod15(&kernel, mid, seg.end).0
        })
        .sum())
}

/// Where `Tg` can fail to be smooth: knots, and where the window edges cross knots.
fn t_transform_kinks(g: &FunctionModel) -> impl Iterator<Item = f64> + '_ {
    g.breakpoints().iter().flat_map(|&k| [k, 2.0 * k, 2.0 * k / 3.0])
}

/// `∫_0^{x_max} |Tg(t)| dt` to absolute accuracy `tol`.
pub fn t_transform_l1_norm(g: &FunctionModel, x_max: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    check_point(x_max)?;
    let points = quad::split_points(0.0, x_max, t_transform_kinks(g));
    let samples: Vec<f64> = (1..256).map(|i| x_max * i as f64 / 256.0).collect();
    let q = quad::integrate_abs(
        |t| t_transform(g, t).unwrap_or(f64::NAN),
        &points,
        &samples,
        QuadOptions::absolute(tol),
    )?;
    Ok(q.value)
}

/// `∫_0^X |Hg(t)| dt`; finite for every `X`, growing like `|∫g|·ln X`.
pub fn hilbert_l1_truncated(g: &FunctionModel, x_max: f64) -> Result<f64> {
    check_point(x_max)?;
    if g.is_zero() {
        return Ok(0.0);
    }
    let (_, tk) = g.support();
    let interior = g.breakpoints().iter().copied().chain(quad::geometric_points(tk, x_max, 1));
    let points = quad::split_points(0.0, x_max, interior);
    let opts = QuadOptions { tol: 1e-12, rel_tol: 1e-11, max_intervals: 200_000 };
    let samples = quad::geometric_points(x_max * 1e-12, x_max, 16);
    let q = quad::integrate_abs(|t| hilbert_transform(g, t).unwrap_or(f64::NAN), &points, &samples, opts)?;
    Ok(q.value)
}

/// `∫_0^∞ |H_odd g − Tg|` against `∫|g|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HtComparison {
    /// Integral of the difference over `[0, horizon]`.
    pub l1_difference: f64,
    /// Certified bound for the integral beyond `horizon`.
    pub tail_bound: f64,
    pub horizon: f64,
    pub g_l1: f64,
    /// `(l1_difference + tail_bound) / g_l1`.
    pub ratio: f64,
}

/// Compares the Hilbert transform of the odd extension with the T-transform.
///
/// Past `2·t_K` the T-transform vanishes and
/// `|H_odd g(t)| ≤ 2 ∫ s|g(s)| ds / (t² − t_K²)`, which gives the tail bound.
pub fn ht_comparison_defect(g: &FunctionModel, tol: f64) -> Result<HtComparison> {
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    if g.has_edge_jumps() {
        return Err(Error::JumpModel);
    }
    let g_l1 = g.l1_norm();
    if g_l1 == 0.0 {
        return Ok(HtComparison { l1_difference: 0.0, tail_bound: 0.0, horizon: 0.0, g_l1, ratio: 0.0 });
    }
    let (_, tk) = g.support();
    let first_moment = tk * g_l1;
    let tail = |x: f64| first_moment / tk * ((x + tk) / (x - tk)).ln();
    let mut horizon = 4.0 * tk;
    while tail(horizon) > 0.5 * tol {
        horizon *= 2.0;
    }
    let interior = t_transform_kinks(g).chain(quad::geometric_points(2.0 * tk, horizon, 1));
    let points = quad::split_points(0.0, horizon, interior);
    let samples = quad::geometric_points(horizon * 1e-12, horizon, 16);
    let q = quad::integrate_abs(
        |t| match (hilbert_transform_odd(g, t), t_transform(g, t)) {
            (Ok(h), Ok(tt)) => h - tt,
            _ => f64::NAN,
        },
        &points,
        &samples,
        QuadOptions::absolute(0.5 * tol),
    )?;
    let tail_bound = tail(horizon);
    Ok(HtComparison {
        l1_difference: q.value,
        tail_bound,
        horizon,
        g_l1,
        ratio: (q.value + tail_bound) / g_l1,
    })
}

const MAX_HALF_PERIODS: usize = 10_000;

/// `∫_0^∞ sin(wx)/x dx` by summing the alternating half-period integrals and
/// accelerating with repeated averaging of partial sums (Euler transform).
fn sine_integral_to_infinity(w: f64, tol: f64) -> Result<f64> {
    if w == 0.0 {
        return Ok(0.0);
    }
    let period = PI / w.abs();
    let f = |x: f64| (w * x).sin() / x;
    let half_period = |k: usize| {
        let a = k as f64 * period;
        let mid = a + 0.5 * period;
        quad::kronrod15(&f, a, mid).0 + quad::kronrod15(&f, mid, a + period).0
    };
    let mut partial = Vec::new();
    let mut running = 0.0;
    let mut previous: Option<f64> = None;
    let mut n = 8;
    while n <= MAX_HALF_PERIODS {
        while partial.len() < n {
            running += half_period(partial.len());
            partial.push(running);
        }
        let estimate = euler_average(&partial);
        if let Some(prev) = previous {
            if (estimate - prev).abs() < 0.1 * tol {
                return Ok(estimate);
            }
        }
        previous = Some(estimate);
        n *= 2;
    }
    Err(Error::NoConvergence(MAX_HALF_PERIODS))
}

/// Repeated pairwise averaging of partial sums down to a single value.
fn euler_average(partial: &[f64]) -> f64 {
    let mut row = partial.to_vec();
    while row.len() > 1 {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    row[0]
}

/// `∫_0^∞ sin(ax) cos(yx) / x dx`: `π/2` for `y < a`, `π/4` at `y = a`, `0` for `y > a`.
///
/// Computed as half the sum of the two sine integrals with frequencies `a ± y`;
/// the value at `y = a` is returned by convention without quadrature.
pub fn dirichlet_integral(a: f64, y: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::OutOfRange { what: "a", value: a });
    }
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::OutOfRange { what: "y", value: y });
    }
    if y == a {
        return Ok(PI / 4.0);
    }
    let sum = sine_integral_to_infinity(a + y, tol)? + sine_integral_to_infinity(a - y, tol)?;
    Ok(0.5 * sum)
}
