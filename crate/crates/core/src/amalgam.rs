//! Dyadic amalgam norms.
//!
//! Sequence norm: `Σ_{m≥0} ( Σ_{j≥1} [ Σ_{n=j2^m}^{(j+1)2^m-1} |d_n| ]² )^{1/2}`.
//! Function norm: `Σ_{m∈ℤ} S_m` with `S_m = ( Σ_{j≥1} [ ∫_{j2^m}^{(j+1)2^m} |g| ]² )^{1/2}`,
//! i.e. the sum over scales of the `W(L¹,ℓ²)` norms of the dilates `2^m g(2^m ·)`.
//!
//! For piecewise-linear `g` the number of blocks grows like `2^{-m}` as
//! `m → -∞`, so the blocks lying inside a single sign-definite linear piece
//! are summed in closed form and only the `O(#pieces)` blocks that straddle
//! a knot or a zero crossing are integrated one by one.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{abs_integral_unchecked, FunctionModel, Piecewise};
use crate::series::Generator;

/// Real sequence `d_1, …, d_N`; entries past `N` are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSequence {
    entries: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<Generator>,
}

impl CoefficientSequence {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { entries, generator: None })
    }

    pub(crate) fn with_generator(mut self, generator: Generator) -> Self {
        self.generator = Some(generator);
        self
    }

    /// Unit spike `e_n` of length `len`.
    pub fn spike(n: usize, len: usize) -> Result<Self> {
        if n == 0 || n > len {
            return Err(Error::OutOfRange { what: "spike index", value: n as f64 });
        }
        let mut entries = vec![0.0; len];
        entries[n - 1] = 1.0;
        Self::new(entries)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `d_n` with 1-based `n`; zero for `n = 0` and `n > N`.
    pub fn get(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.entries.get(n - 1).copied().unwrap_or(0.0)
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { entries: self.entries.iter().map(|v| v * factor).collect(), generator: None }
    }
}

/// A computed norm with its dyadic window and a certified bound on what was left out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub value: f64,
    pub tail_bound: f64,
    pub m_lo: i32,
    pub m_hi: i32,
    pub per_scale: Vec<(i32, f64)>,
    /// Largest block index `j` touched at any scale.
    pub block_cap: f64,
}

impl NormReport {
    pub fn upper_bound(&self) -> f64 {
        self.value + self.tail_bound
    }
}

/// Exact sequence norm.
pub fn sequence_amalgam_norm(d: &CoefficientSequence) -> f64 {
    sequence_norm_report(d).value
}

pub fn sequence_norm_report(d: &CoefficientSequence) -> NormReport {
    let n_max = d.len();
    let top = n_max.ilog2() as i32;
    let mut per_scale = Vec::with_capacity(top as usize + 1);
    for m in 0..=top {
        let width = 1usize << m;
        let mut squares = 0.0;
        let mut j = 1;
        while j * width <= n_max {
            let first = j * width;
            let last = ((j + 1) * width - 1).min(n_max);
            let block: f64 = d.entries[first - 1..last].iter().map(|v| v.abs()).sum();
            squares += block * block;
            j += 1;
        }
        per_scale.push((m, squares.sqrt()));
    }
    NormReport {
        value: per_scale.iter().map(|(_, s)| s).sum(),
        tail_bound: 0.0,
        m_lo: 0,
        m_hi: top,
        per_scale,
        block_cap: (n_max as f64 / 2f64.powi(top)).ceil() - 1.0,
    }
}

#[inline]
fn dyadic(m: i32) -> f64 {
    2f64.powi(m)
}

/// `∫_{j2^m}^{(j+1)2^m} |g|`, exact.
pub fn block_integral<G: Piecewise + ?Sized>(g: &G, m: i32, j: i64) -> Result<f64> {
    if j < 1 {
        return Err(Error::BlockIndex(j));
    }
    let h = dyadic(m);
    Ok(abs_integral_unchecked(g, j as f64 * h, (j + 1) as f64 * h))
}

/// Scale contribution `S_m` and the largest block index with nonzero mass.
pub fn scale_contribution<G: Piecewise + ?Sized>(g: &G, m: i32) -> (f64, f64) {
    let h = dyadic(m);
    let (_, tk) = g.support();
    if tk <= h {
        return (0.0, 0.0);
    }
    let mut cuts: Vec<f64> = g.knots().to_vec();
    cuts.extend(g.segments().filter_map(|s| s.interior_zero()));

    // blocks straddling a cut point are integrated directly
    let mut straddling: Vec<f64> =
        cuts.iter().map(|c| c / h).filter(|r| r.fract() != 0.0 && r.floor() >= 1.0).map(f64::floor).collect();
    straddling.sort_by(f64::total_cmp);
    straddling.dedup();
    let mut squares = 0.0;
    for &j in &straddling {
        let mass = abs_integral_unchecked(g, j * h, (j + 1.0) * h);
        squares += mass * mass;
    }

    // runs of whole blocks inside one sign-definite piece: block masses are an
    // arithmetic progression, so Σ mass² = n·u² + (βh²)²·n(n²-1)/12 with u the
    // mass of the run's central block
    for seg in g.segments() {
        let mut bounds = vec![seg.start];
        bounds.extend(seg.interior_zero());
        bounds.push(seg.end);
        for w in bounds.windows(2) {
            let lo = (w[0] / h).ceil().max(1.0);
            let hi = (w[1] / h).floor() - 1.0;
            if hi < lo {
                continue;
            }
            let n = hi - lo + 1.0;
            let u = h * seg.value_at(0.5 * (lo + hi + 1.0) * h);
            let c = seg.slope() * h * h;
            squares += n * u * u + c * c * n * (n * n - 1.0) / 12.0;
        }
    }
    (squares.sqrt(), (tk / h).ceil() - 1.0)
}

/// Largest `m` with `2^m < t`.
fn top_scale(t: f64) -> i32 {
    let mut m = t.log2().floor() as i32;
    while dyadic(m) >= t {
        m -= 1;
    }
    while dyadic(m + 1) < t {
        m += 1;
    }
    m
}

const MIN_SCALE: i32 = -1000;

/// Function norm with certified truncation of the fine-scale tail.
///
/// Scales with `2^m ≥ sup supp g` vanish exactly. Below the window,
/// `S_m ≤ (2^m · sup|g| · ‖g‖₁)^{1/2}`, so the omitted part is bounded by a
/// geometric series that is driven below `tol`.
pub fn function_amalgam_norm<G: Piecewise + ?Sized>(g: &G, tol: f64) -> Result<NormReport> {
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    let (_, tk) = g.support();
    let m_hi = top_scale(tk);
    let mass_scale = (g.sup_abs() * g.l1_norm()).sqrt();
    let tail_factor = 1.0 / (std::f64::consts::SQRT_2 - 1.0);
    let mut per_scale = Vec::new();
    let mut block_cap: f64 = 0.0;
    let mut m = m_hi;
    let tail_bound = loop {
        let (s, cap) = scale_contribution(g, m);
        per_scale.push((m, s));
        block_cap = block_cap.max(cap);
        let tail = mass_scale * dyadic(m).sqrt() * tail_factor;
        if tail < tol || m <= MIN_SCALE {
            break tail;
        }
        m -= 1;
    };
    per_scale.reverse();
    Ok(NormReport {
        value: per_scale.iter().map(|(_, s)| s).sum(),
        tail_bound,
        m_lo: m,
        m_hi,
        per_scale,
        block_cap,
    })
}

/// `Σ_{m ∈ window} S_m`.
pub fn amalgam_norm_over<G: Piecewise + ?Sized>(g: &G, window: RangeInclusive<i32>) -> f64 {
    window.map(|m| scale_contribution(g, m).0).sum()
}

/// `W(L¹,ℓ²)` norm: ℓ² norm of the unit-block masses `∫_j^{j+1}|g|`, `j ≥ 1`.
pub fn wiener_amalgam_norm<G: Piecewise + ?Sized>(g: &G) -> f64 {
    let (_, tk) = g.support();
    let last = tk.ceil() as u64;
    let mut squares = 0.0;
    for j in 1..last.max(1) {
        let mass = abs_integral_unchecked(g, j as f64, (j + 1) as f64);
        squares += mass * mass;
    }
    squares.sqrt()
}

/// Gap between the dilate form `Σ_m ‖2^m g(2^m ·)‖_{W(L¹,ℓ²)}` and the block form
/// over the same window of scales.
pub fn rescaled_norm_identity_defect(g: &FunctionModel, window: RangeInclusive<i32>) -> Result<f64> {
    if window.is_empty() {
        return Err(Error::EmptyWindow);
    }
    let mut dilate_form = 0.0;
    for m in window.clone() {
        dilate_form += wiener_amalgam_norm(&g.dilated(dyadic(m))?);
    }
    Ok((dilate_form - amalgam_norm_over(g, window)).abs())
}

/// Upper constant for `‖g‖₁ / ‖g‖_{A}` obtained by chaining the embedding estimate:
/// `3 · ln 2 · (π²/6)^{1/2} / ln(3/2)`.
pub fn embedding_constant() -> f64 {
    3.0 * std::f64::consts::LN_2 * (std::f64::consts::PI.powi(2) / 6.0).sqrt() / 1.5f64.ln()
}

/// `‖g‖₁ / ‖g‖_{A}`.
pub fn embedding_ratio<G: Piecewise + ?Sized>(g: &G) -> Result<f64> {
    if g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let l1 = g.l1_norm();
    let report = function_amalgam_norm(g, 1e-10 * l1)?;
    Ok(l1 / report.value)
}
