//! Main term and remainder of the half-line Fourier transform.
//!
//! For a locally absolutely continuous `f` vanishing at infinity,
//! `f̂_γ(x) = (1/x)·f(π/(2x))·sin(πγ/2) + Γ(x)` with `‖Γ‖₁` controlled by the
//! amalgam norm of `f′`. The remainder is defined by subtraction, so the
//! unspecified bounded factor in front of `Γ` is absorbed into it.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2};

use serde::{Deserialize, Serialize};

use crate::amalgam::{function_amalgam_norm, scale_contribution};
use crate::error::{Error, Result};
use crate::model::{FunctionModel, Piecewise, PiecewiseConstant};
use crate::quad::{self, QuadOptions};
use crate::transforms::{fourier_complex, fourier_transform, TransformKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionSample {
    pub x: f64,
    pub gamma: u8,
    pub transform_value: f64,
    pub main_term: f64,
    pub remainder: f64,
}

/// Windowed `∫|Γ|` against a reference norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RemainderEstimate {
    pub window: (f64, f64),
    pub l1_value: f64,
    pub quad_error: f64,
    /// Certified bound for the part of `∫_0^∞ |Γ|` outside the window
    /// (`+∞` when the window does not reach the asymptotic regime).
    pub outside_bound: f64,
    pub f_prime_norm: f64,
    pub ratio: f64,
}

pub(crate) fn norm_ratio(l1: f64, norm: f64) -> f64 {
    if norm > 0.0 {
        l1 / norm
    } else if l1 == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// `(1/x)·f(π/(2x))·sin(πγ/2)`.
pub fn main_term(f: &FunctionModel, kind: TransformKind, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::NonPositivePoint(x));
    }
    Ok(match kind {
        TransformKind::Cosine => 0.0,
        TransformKind::Sine => f.evaluate(FRAC_PI_2 / x) / x,
    })
}

pub fn decompose(f: &FunctionModel, kind: TransformKind, x: f64) -> Result<DecompositionSample> {
    if !f.is_absolutely_continuous() {
        return Err(Error::JumpModel);
    }
    let main = main_term(f, kind, x)?;
    let value = fourier_transform(f, kind, x)?;
    Ok(DecompositionSample {
        x,
        gamma: kind.gamma(),
        transform_value: value,
        main_term: main,
        remainder: value - main,
    })
}

fn remainder(f: &FunctionModel, kind: TransformKind, x: f64) -> f64 {
    match (fourier_transform(f, kind, x), main_term(f, kind, x)) {
        (Ok(v), Ok(m)) => v - m,
        _ => f64::NAN,
    }
}

/// Bound on `∫|Γ|` over `(0, x_lo) ∪ (x_hi, ∞)`.
///
/// Integrating by parts twice gives `|Γ(x)| ≤ C/x²` once `π/(2x)` lies in the
/// first piece (or left of the support), with `C` the total jump of `f′`
/// plus `|f′(0+)|·π/2` for the sine kind. Below `π/(2 t_K)` the main term
/// vanishes and `|Γ| ≤ ‖f‖₁`.
fn outside_window_bound(f: &FunctionModel, kind: TransformKind, x_lo: f64, x_hi: f64) -> f64 {
    let knots = f.breakpoints();
    let (t0, tk) = f.support();
    let slopes = f.derivative();
    let slopes = slopes.slopes();
    let mut jumps = slopes[0].abs() + slopes[slopes.len() - 1].abs();
    jumps += slopes.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>();
    let (constant, reach) = match kind {
        TransformKind::Cosine => (jumps, 0.0),
        TransformKind::Sine if t0 == 0.0 => (jumps + slopes[0].abs() * FRAC_PI_2, knots[1]),
        TransformKind::Sine => (jumps, t0),
    };
    let upper = if FRAC_PI_2 / x_hi <= reach || kind == TransformKind::Cosine {
        constant / x_hi
    } else {
        f64::INFINITY
    };
    let lower = if x_lo <= FRAC_PI_2 / tk { x_lo * f.l1_norm() } else { f64::INFINITY };
    upper + lower
}

/// `∫_{x_lo}^{x_hi} |Γ(x)| dx` and its ratio to `‖f′‖_A`.
pub fn remainder_l1(
    f: &FunctionModel,
    kind: TransformKind,
    x_lo: f64,
    x_hi: f64,
    tol: f64,
) -> Result<RemainderEstimate> {
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    if !(x_lo > 0.0 && x_hi > x_lo && x_hi.is_finite()) {
        return Err(Error::InvalidInterval { a: x_lo, b: x_hi });
    }
    if !f.is_absolutely_continuous() {
        return Err(Error::JumpModel);
    }
    let mut kinks = quad::geometric_points(x_lo, x_hi, 2);
    if kind == TransformKind::Sine {
        kinks.extend(f.breakpoints().iter().filter(|&&t| t > 0.0).map(|t| FRAC_PI_2 / t));
    }
    let points = quad::split_points(x_lo, x_hi, kinks);
    // Γ oscillates with frequencies up to t_K; sample each half-period four times
    let (_, tk) = f.support();
    let step = std::f64::consts::PI / (4.0 * tk);
    let mut samples = quad::geometric_points(x_lo, x_hi, 16);
    samples.extend(((x_lo / step).ceil() as u64..=(x_hi / step).floor() as u64).map(|k| k as f64 * step));
    let opts = QuadOptions { tol, rel_tol: 0.0, max_intervals: 1_000_000 };
    let q = quad::integrate_abs(|x| remainder(f, kind, x), &points, &samples, opts)?;
    let f_prime_norm = derivative_norm(&f.derivative())?;
    Ok(RemainderEstimate {
        window: (x_lo, x_hi),
        l1_value: q.value,
        quad_error: q.error,
        outside_bound: outside_window_bound(f, kind, x_lo, x_hi),
        f_prime_norm,
        ratio: norm_ratio(q.value, f_prime_norm),
    })
}

/// `‖f′‖_A` to a relative accuracy of about 1e-10.
pub fn derivative_norm(slopes: &PiecewiseConstant) -> Result<f64> {
    let l1 = slopes.l1_norm();
    if l1 == 0.0 {
        return Ok(0.0);
    }
    Ok(function_amalgam_norm(slopes, 1e-10 * l1)?.value)
}

/// Both sides of `∫_0^∞ ∫_0^{π/(2x)} s|f′(s)| ds dx = (π/2) ∫|f′|`.
///
/// With `u = π/(2x)` the outer integral becomes `∫ (π/2)/u² ∫_0^u s|f′|`, and a
/// piece of constant `|f′| = σ` on `[a, b]` contributes
/// `(π/4)·σ·[(b−a)²/b + (b²−a²)/b]` in closed form.
pub fn fubini_sides(f: &FunctionModel) -> (f64, f64) {
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for seg in f.derivative().segments() {
        let (a, b, sigma) = (seg.start, seg.end, seg.left.abs());
        lhs += 0.5 * FRAC_PI_2 * sigma * ((b - a) * (b - a) / b + (b * b - a * a) / b);
        rhs += FRAC_PI_2 * sigma * (b - a);
    }
    (lhs, rhs)
}

pub fn fubini_identity_defect(f: &FunctionModel) -> f64 {
    let (lhs, rhs) = fubini_sides(f);
    (lhs - rhs).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BaleCheck {
    pub m: i32,
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs: f64,
}

impl BaleCheck {
    pub fn ratio(&self) -> f64 {
        norm_ratio(self.lhs, self.rhs)
    }
}

/// The two sides of the per-scale estimate
/// `∫_{2^m}^{2^{m+1}} (1/x)|∫_{2^{-m}}^∞ g(t)e^{-ixt} dt| dx ≲ (Σ_j [∫_{j2^{-m}}^{(j+1)2^{-m}} |g|]²)^{1/2}`.
pub fn bale_check(g: &FunctionModel, m: i32, tol: f64) -> Result<BaleCheck> {
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    let lo = 2f64.powi(m);
    let start = 2f64.powi(-m);
    let (_, tk) = g.support();
    let rhs = scale_contribution(g, -m).0;
    if tk <= start || rhs == 0.0 {
        return Ok(BaleCheck { m, lhs: 0.0, lhs_error: 0.0, rhs });
    }
    // |G| oscillates on the scale 2π/(t_K − 2^{-m}); keep a few panels per period
    let panels = ((lo * (tk - start) / std::f64::consts::PI).ceil() as usize * 2).clamp(1, 4096);
    let interior = (1..panels).map(|i| lo + lo * i as f64 / panels as f64);
    let points = quad::split_points(lo, 2.0 * lo, interior);
    let q =
        quad::integrate(|x| fourier_complex(g, x, start).norm() / x, &points, QuadOptions::absolute(tol))?;
    Ok(BaleCheck { m, lhs: q.value, lhs_error: q.error, rhs })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailReduction {
    /// `Σ_m ∫_{2^m}^{2^{m+1}} (1/x)|∫_{2^{-m}}^{π/(2x)} f′(t) sin(xt − πγ/2) dt| dx`.
    pub reduced: f64,
    pub f_prime_l1: f64,
    /// `reduced − f_prime_l1`; non-positive up to quadrature error.
    pub defect: f64,
    pub m_lo: i32,
    pub m_hi: i32,
}

/// `∫_lo^hi f′(t) sin(xt − πγ/2) dt` for a step function `f′`.
fn oscillatory_step_integral(
    slopes: &PiecewiseConstant,
    kind: TransformKind,
    x: f64,
    lo: f64,
    hi: f64,
) -> f64 {
    // antiderivative of sin(xt) is −cos(xt)/x, of −cos(xt) is −sin(xt)/x
    let anti = |t: f64| match kind {
        TransformKind::Cosine => -(x * t).cos() / x,
        TransformKind::Sine => -(x * t).sin() / x,
    };
    slopes
        .segments()
        .filter_map(|s| {
            let (u, v) = (s.start.max(lo), s.end.min(hi));
            (u < v).then(|| s.left * (anti(v) - anti(u)))
        })
        .sum()
}

pub fn tail_reduction_defect(f: &FunctionModel, kind: TransformKind) -> Result<TailReduction> {
    let slopes = f.derivative();
    let f_prime_l1 = slopes.l1_norm();
    let sup = slopes.sup_abs();
    let (t0, tk) = slopes.support();
    if f_prime_l1 == 0.0 {
        return Ok(TailReduction { reduced: 0.0, f_prime_l1, defect: 0.0, m_lo: 0, m_hi: 0 });
    }
    // the inner interval lies in [π/4·2^{-m}, π/2·2^{-m}]
    let m_lo = (FRAC_PI_4 / tk).log2().floor() as i32;
    let m_hi = if t0 > 0.0 {
        (FRAC_PI_2 / t0).log2().ceil() as i32
    } else {
        // scale m contributes at most ln2·sup|f′|·2^{-m}
        let mut m = m_lo;
        while LN_2 * sup * 2f64.powi(-m) > 1e-15 * f_prime_l1 && m < 60 {
            m += 1;
        }
        m
    };
    let mut reduced = 0.0;
    for m in m_lo..=m_hi {
        let x_lo = 2f64.powi(m);
        let start = 2f64.powi(-m);
        let kinks = slopes.knots().iter().filter(|&&t| t > 0.0).map(|t| FRAC_PI_2 / t);
        let points = quad::split_points(x_lo, 2.0 * x_lo, kinks);
        let samples: Vec<f64> = (1..64).map(|i| x_lo + x_lo * i as f64 / 64.0).collect();
        let q = quad::integrate_abs(
            |x| {
                let end = FRAC_PI_2 / x;
                oscillatory_step_integral(&slopes, kind, x, start.min(end), start.max(end)) / x
            },
            &points,
            &samples,
            QuadOptions { tol: 1e-14, rel_tol: 1e-12, max_intervals: 10_000 },
        )?;
        reduced += q.value;
    }
    Ok(TailReduction { reduced, f_prime_l1, defect: reduced - f_prime_l1, m_lo, m_hi })
}
