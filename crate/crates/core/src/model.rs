//! Compactly supported piecewise-linear functions on the half-line.
//!
//! [`FunctionModel`] is linear between consecutive breakpoints and vanishes
//! outside `[t_0, t_K]`. Nonzero end values are allowed and act as jumps
//! from/to zero, which is how indicator functions are represented.
//! [`PiecewiseConstant`] holds derivatives and sequences embedded as step
//! functions. Both expose their pieces through [`Piecewise`], so every
//! block integral and norm below works on either.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One linear piece: the function runs from `left` at `start` to `right` at `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub left: f64,
    pub right: f64,
}

impl Segment {
    #[inline]
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    #[inline]
    pub fn slope(&self) -> f64 {
        (self.right - self.left) / (self.end - self.start)
    }

    /// Value of the linear extension of this piece at `t`.
    #[inline]
    pub fn value_at(&self, t: f64) -> f64 {
        if t == self.end {
            return self.right;
        }
        self.left + (self.right - self.left) * ((t - self.start) / (self.end - self.start))
    }

    /// Zero of the piece strictly inside `(start, end)`, if the sign changes there.
    pub fn interior_zero(&self) -> Option<f64> {
        if self.left * self.right < 0.0 {
            let z = self.start + self.len() * (self.left / (self.left - self.right));
            (z > self.start && z < self.end).then_some(z)
        } else {
            None
        }
    }

    /// Exact `∫_a^b |value|` for `start <= a <= b <= end`.
    #[inline]
    pub fn abs_integral(&self, a: f64, b: f64) -> f64 {
        let p = self.value_at(a);
        let q = self.value_at(b);
        let width = b - a;
        if p * q >= 0.0 {
            0.5 * (p.abs() + q.abs()) * width
        } else {
            // two triangles on either side of the zero crossing
            0.5 * (p * p + q * q) / (p.abs() + q.abs()) * width
        }
    }

    /// Exact signed `∫_a^b value`.
    #[inline]
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        0.5 * (self.value_at(a) + self.value_at(b)) * (b - a)
    }
}

/// Anything made of linear pieces over a strictly increasing knot list.
pub trait Piecewise {
    fn knots(&self) -> &[f64];

    fn segment(&self, k: usize) -> Segment;

    fn segment_count(&self) -> usize {
        self.knots().len() - 1
    }

    fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.segment_count()).map(move |k| self.segment(k))
    }

    fn support(&self) -> (f64, f64) {
        let knots = self.knots();
        (knots[0], knots[knots.len() - 1])
    }

    fn sup_abs(&self) -> f64 {
        self.segments().map(|s| s.left.abs().max(s.right.abs())).fold(0.0, f64::max)
    }

    fn l1_norm(&self) -> f64 {
        self.segments().map(|s| s.abs_integral(s.start, s.end)).sum()
    }

    fn is_zero(&self) -> bool {
        self.segments().all(|s| s.left == 0.0 && s.right == 0.0)
    }

    /// Exact `∫_a^b |g(t)| dt`.
    fn abs_integral(&self, a: f64, b: f64) -> Result<f64> {
        if !(a <= b) {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(abs_integral_unchecked(self, a, b))
    }
}

/// `∫_a^b |g|` without validating `a <= b`; callers guarantee it.
pub(crate) fn abs_integral_unchecked<G: Piecewise + ?Sized>(g: &G, a: f64, b: f64) -> f64 {
    let knots = g.knots();
    let (lo, hi) = (a.max(knots[0]), b.min(knots[knots.len() - 1]));
    if lo >= hi {
        return 0.0;
    }
    let mut k = knots.partition_point(|&x| x <= lo).saturating_sub(1);
    let mut total = 0.0;
    while k < g.segment_count() && knots[k] < hi {
        let seg = g.segment(k);
        let (s, e) = (lo.max(seg.start), hi.min(seg.end));
        if s < e {
            total += seg.abs_integral(s, e);
        }
        k += 1;
    }
    total
}

fn validate_knots(knots: &[f64]) -> Result<()> {
    if knots.len() < 2 {
        return Err(Error::TooFewBreakpoints(knots.len()));
    }
    for (index, &value) in knots.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite);
        }
        if value < 0.0 {
            return Err(Error::NegativeBreakpoint { index, value });
        }
        if index > 0 && value <= knots[index - 1] {
            return Err(Error::NonMonotone { index });
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct RawModel {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

/// Piecewise-linear function with compact support in `[0, ∞)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct FunctionModel {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl TryFrom<RawModel> for FunctionModel {
    type Error = Error;

    fn try_from(raw: RawModel) -> Result<Self> {
        FunctionModel::new(raw.breakpoints, raw.values)
    }
}

impl FunctionModel {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.len() != values.len() {
            return Err(Error::LengthMismatch { breakpoints: breakpoints.len(), values: values.len() });
        }
        validate_knots(&breakpoints)?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { breakpoints, values })
    }

    /// The zero function, carried on `[0, 1]`.
    pub fn zero() -> Self {
        Self { breakpoints: vec![0.0, 1.0], values: vec![0.0, 0.0] }
    }

    /// Characteristic function of `[a, b]`.
    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![a, b], vec![1.0, 1.0])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        let (t0, tk) = self.support();
        if !(t >= t0 && t <= tk) {
            return 0.0;
        }
        let k = self.breakpoints.partition_point(|&x| x <= t).saturating_sub(1).min(self.segment_count() - 1);
        self.segment(k).value_at(t)
    }

    /// Slopes of the absolutely continuous part; jumps at the support edges are dropped.
    pub fn derivative(&self) -> PiecewiseConstant {
        let slopes = self.segments().map(|s| s.slope()).collect();
        PiecewiseConstant { knots: self.breakpoints.clone(), slopes }
    }

    /// Variation over the whole half-line, counting the jumps from and to zero at the edges.
    pub fn total_variation(&self) -> f64 {
        let inner: f64 = self.segments().map(|s| (s.right - s.left).abs()).sum();
        inner + self.values[0].abs() + self.values[self.values.len() - 1].abs()
    }

    pub fn integral(&self) -> f64 {
        self.segments().map(|s| s.integral(s.start, s.end)).sum()
    }

    /// True when the model has a nonzero value at either end of its support.
    pub fn has_edge_jumps(&self) -> bool {
        self.values[0] != 0.0 || self.values[self.values.len() - 1] != 0.0
    }

    /// Locally absolutely continuous on `[0, ∞)`: no jump at the right edge, and
    /// none at the left edge unless that edge is the origin itself.
    pub fn is_absolutely_continuous(&self) -> bool {
        (self.breakpoints[0] == 0.0 || self.values[0] == 0.0) && self.values[self.values.len() - 1] == 0.0
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// The L¹-preserving dilate `t ↦ s·g(s·t)`.
    pub fn dilated(&self, s: f64) -> Result<Self> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::OutOfRange { what: "dilation factor", value: s });
        }
        Self::new(
            self.breakpoints.iter().map(|t| t / s).collect(),
            self.values.iter().map(|v| v * s).collect(),
        )
    }

    /// Pointwise sum of two models without interior jumps.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if !self.is_absolutely_continuous() || !other.is_absolutely_continuous() {
            return Err(Error::JumpModel);
        }
        let mut knots: Vec<f64> = self.breakpoints.iter().chain(other.breakpoints.iter()).copied().collect();
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        let values = knots.iter().map(|&t| self.evaluate(t) + other.evaluate(t)).collect();
        Self::new(knots, values)
    }
}

impl Piecewise for FunctionModel {
    fn knots(&self) -> &[f64] {
        &self.breakpoints
    }

    #[inline]
    fn segment(&self, k: usize) -> Segment {
        Segment {
            start: self.breakpoints[k],
            end: self.breakpoints[k + 1],
            left: self.values[k],
            right: self.values[k + 1],
        }
    }
}

#[derive(Deserialize)]
struct RawSteps {
    breakpoints: Vec<f64>,
    slopes: Vec<f64>,
}

/// Step function: constant `slopes[k]` on `[knots[k], knots[k+1])`, zero elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSteps")]
pub struct PiecewiseConstant {
    #[serde(rename = "breakpoints")]
    knots: Vec<f64>,
    slopes: Vec<f64>,
}

impl TryFrom<RawSteps> for PiecewiseConstant {
    type Error = Error;

    fn try_from(raw: RawSteps) -> Result<Self> {
        PiecewiseConstant::new(raw.breakpoints, raw.slopes)
    }
}

impl PiecewiseConstant {
    pub fn new(knots: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if knots.len() != slopes.len() + 1 {
            return Err(Error::LengthMismatch { breakpoints: knots.len(), values: slopes.len() });
        }
        validate_knots(&knots)?;
        if slopes.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { knots, slopes })
    }

    /// Embeds `d_1, …, d_N` as the step function equal to `d_n` on `[n, n+1)`.
    pub fn from_sequence(entries: &[f64]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        let knots = (1..=entries.len() + 1).map(|n| n as f64).collect();
        Self::new(knots, entries.to_vec())
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        let (t0, tk) = self.support();
        if !(t >= t0 && t < tk) {
            return 0.0;
        }
        self.slopes[self.knots.partition_point(|&x| x <= t) - 1]
    }
}

impl Piecewise for PiecewiseConstant {
    fn knots(&self) -> &[f64] {
        &self.knots
    }

    #[inline]
    fn segment(&self, k: usize) -> Segment {
        Segment { start: self.knots[k], end: self.knots[k + 1], left: self.slopes[k], right: self.slopes[k] }
    }
}
