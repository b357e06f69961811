//! Trigonometric series with finitely supported coefficients.
//!
//! Coefficients are turned into functions by linear interpolation
//! (`A(x) = a_n + (n − x)Δa_n` on `[n, n+1]`, `a_0 = 0`), which lets the
//! half-line machinery act on cosine and sine series.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amalgam::{sequence_amalgam_norm, CoefficientSequence};
use crate::asymptotics::{norm_ratio, RemainderEstimate};
use crate::error::{Error, Result};
use crate::model::{FunctionModel, Piecewise};
use crate::quad::{self, QuadOptions};
use crate::sum::CompensatedSum;
use crate::transforms::fourier_complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Cosine,
    Sine,
}

/// Named coefficient families, materialized to a finite length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gen", rename_all = "kebab-case")]
pub enum Generator {
    /// `n^{-p}`
    Power {
        p: f64,
        #[serde(rename = "N")]
        len: usize,
    },
    /// `n^{-1}·log(n+2)^{-q}`
    LogPower {
        q: f64,
        #[serde(rename = "N")]
        len: usize,
    },
    /// `e_n`
    SingleSpike {
        n: usize,
        #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
        len: Option<usize>,
    },
}

impl Generator {
    pub fn materialize(&self) -> Result<CoefficientSequence> {
        let seq = match *self {
            Self::Power { p, len } => {
                CoefficientSequence::new((1..=len).map(|n| (n as f64).powf(-p)).collect())?
            }
            Self::LogPower { q, len } => CoefficientSequence::new(
                (1..=len).map(|n| 1.0 / (n as f64 * ((n + 2) as f64).ln().powf(q))).collect(),
            )?,
            Self::SingleSpike { n, len } => CoefficientSequence::spike(n, len.unwrap_or(n))?,
        };
        Ok(seq.with_generator(self.clone()))
    }
}

/// Sequence input: explicit `{"entries": [...]}` or a generator such as
/// `{"gen": "power", "p": 2, "N": 1000}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceSpec {
    Entries { entries: Vec<f64> },
    Generated(Generator),
}

impl SequenceSpec {
    pub fn materialize(&self) -> Result<CoefficientSequence> {
        match self {
            Self::Entries { entries } => CoefficientSequence::new(entries.clone()),
            Self::Generated(g) => g.materialize(),
        }
    }
}

/// Piecewise-linear interpolant through `(0, 0), (1, c_1), …, (N, c_N), (N+1, 0)`.
pub fn interpolate(c: &CoefficientSequence) -> FunctionModel {
    let n = c.len();
    let knots = (0..=n + 1).map(|k| k as f64).collect();
    let mut values = Vec::with_capacity(n + 2);
    values.push(0.0);
    values.extend_from_slice(c.entries());
    values.push(0.0);
    FunctionModel::new(knots, values).expect("integer knots are valid")
}

/// `Δc_n = c_n − c_{n+1}` for `n = 1..N`, with `c_{N+1} = 0`.
pub fn difference_sequence(c: &CoefficientSequence) -> CoefficientSequence {
    let diffs = (1..=c.len()).map(|n| c.get(n) - c.get(n + 1)).collect();
    CoefficientSequence::new(diffs).expect("same length as a valid sequence")
}

/// `Σ_{n=1}^N c_n·trig(nx)` with compensated summation (`a_0/2 = 0`).
pub fn partial_sum(c: &CoefficientSequence, kind: SeriesKind, x: f64, n: usize) -> Result<f64> {
    if n == 0 || n > c.len() {
        return Err(Error::OutOfRange { what: "partial sum length", value: n as f64 });
    }
    let acc: CompensatedSum = c.entries()[..n]
        .iter()
        .enumerate()
        .map(|(k, &coef)| {
            let arg = (k + 1) as f64 * x;
            coef * match kind {
                SeriesKind::Cosine => arg.cos(),
                SeriesKind::Sine => arg.sin(),
            }
        })
        .collect();
    Ok(acc.value())
}

/// `Σ |b_n| / n`.
pub fn condsin_sum(b: &CoefficientSequence) -> f64 {
    b.entries().iter().enumerate().map(|(k, v)| v.abs() / (k + 1) as f64).collect::<CompensatedSum>().value()
}

/// `∫_{π/(2N)}^π |Γ(x)|` for `Γ(x) = Σ b_n sin nx − (1/x)·B(π/(2x))`, against `‖Δb‖_a`.
///
/// `grid` geometric panels seed the adaptive quadrature. Below `π/(2N)` the
/// main term would sample `B` past its last coefficient, so that window is
/// excluded and reported through `window`.
pub fn sine_asymptotic_check(b: &CoefficientSequence, grid: usize, tol: f64) -> Result<RemainderEstimate> {
    if grid < 16 {
        return Err(Error::OutOfRange { what: "grid", value: grid as f64 });
    }
    if !(tol > 0.0) {
        return Err(Error::Tolerance(tol));
    }
    let n = b.len();
    let interp = interpolate(b);
    let x_lo = FRAC_PI_2 / n as f64;
    let ratio = (PI / x_lo).powf(1.0 / grid as f64);
    // the main term has kinks where π/(2x) crosses an integer
    let interior = (1..grid).map(|i| x_lo * ratio.powi(i as i32)).chain((1..n).map(|k| FRAC_PI_2 / k as f64));
    let points = quad::split_points(x_lo, PI, interior);
    // the series oscillates with frequencies up to N
    let samples: Vec<f64> = (1..8 * n).map(|i| PI * i as f64 / (8 * n) as f64).collect();
    let gamma = |x: f64| {
        partial_sum(b, SeriesKind::Sine, x, n).map_or(f64::NAN, |s| s - interp.evaluate(FRAC_PI_2 / x) / x)
    };
    let q = quad::integrate_abs(
        gamma,
        &points,
        &samples,
        QuadOptions { tol, rel_tol: 0.0, max_intervals: 200_000 },
    )?;
    let norm = sequence_amalgam_norm(&difference_sequence(b));
    Ok(RemainderEstimate {
        window: (x_lo, PI),
        l1_value: q.value,
        quad_error: q.error,
        outside_bound: f64::INFINITY,
        f_prime_norm: norm,
        ratio: norm_ratio(q.value, norm),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceRatio {
    /// `∫_{π/(2N)}^{π/2} (1/x)|B(π/(2x))| dx = ∫_1^N |B(t)|/t dt`.
    pub integral: f64,
    /// `Σ_{n=1}^N |b_n|/n`.
    pub sum: f64,
    pub ratio: f64,
}

/// Exact `∫_u^v |α + βt| / t dt` over a sign-definite linear piece.
fn abs_over_t(alpha: f64, beta: f64, u: f64, v: f64) -> f64 {
    (alpha * (v / u).ln() + beta * (v - u)).abs()
}

/// Compares the main-term mass `∫ (1/x)|B(π/(2x))|` with `Σ_{n≤N} |b_n|/n`.
pub fn condsin_equivalence_ratio(b: &CoefficientSequence, n: usize) -> Result<EquivalenceRatio> {
    if n == 0 || n > b.len() {
        return Err(Error::OutOfRange { what: "N", value: n as f64 });
    }
    let interp = interpolate(b);
    let mut integral = CompensatedSum::new();
    for seg in interp.segments().skip(1).take(n - 1) {
        // pieces [k, k+1] for k = 1..N−1
        let beta = seg.slope();
        let alpha = seg.left - beta * seg.start;
        match seg.interior_zero() {
            Some(z) => {
                integral.add(abs_over_t(alpha, beta, seg.start, z));
                integral.add(abs_over_t(alpha, beta, z, seg.end));
            }
            None => integral.add(abs_over_t(alpha, beta, seg.start, seg.end)),
        }
    }
    let integral = integral.value();
    let sum: f64 = b.entries()[..n]
        .iter()
        .enumerate()
        .map(|(k, v)| v.abs() / (k + 1) as f64)
        .collect::<CompensatedSum>()
        .value();
    if sum == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(EquivalenceRatio { integral, sum, ratio: integral / sum })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigubDiscrepancy {
    pub sup_defect: f64,
    pub argmax: f64,
    pub bv_norm: f64,
}

/// `sup_{0<x≤π} |∫ φ(t) e^{−ixt} dt − Σ_k φ(k) e^{−ikx}|` on a grid, with `‖φ‖_BV`.
///
/// The grid is `πi/grid` for `i = 1..grid` plus `π/2^k`, `k = 1..14`, since the
/// gap is largest near the origin.
pub fn trigub_discrepancy(phi: &FunctionModel, grid: usize) -> Result<TrigubDiscrepancy> {
    if grid < 64 {
        return Err(Error::OutOfRange { what: "grid", value: grid as f64 });
    }
    let (t0, tk) = phi.support();
    let samples: Vec<(f64, f64)> = (t0.ceil() as u64..=tk.floor() as u64)
        .map(|k| (k as f64, phi.evaluate(k as f64)))
        .filter(|(_, v)| *v != 0.0)
        .collect();
    let points = (1..=grid).map(|i| PI * i as f64 / grid as f64).chain((1..=14).map(|k| PI / 2f64.powi(k)));
    let mut sup_defect = 0.0;
    let mut argmax = PI;
    for x in points {
        let integral = fourier_complex(phi, x, 0.0).conj();
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for &(k, v) in &samples {
            re.add(v * (k * x).cos());
            im.add(-v * (k * x).sin());
        }
        let gap = (integral - Complex64::new(re.value(), im.value())).norm();
        if gap > sup_defect {
            sup_defect = gap;
            argmax = x;
        }
    }
    Ok(TrigubDiscrepancy { sup_defect, argmax, bv_norm: phi.total_variation() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{amalgam_norm_over, sequence_amalgam_norm};
    use approx::assert_abs_diff_eq;

    fn seq(v: &[f64]) -> CoefficientSequence {
        CoefficientSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn interpolate_examples() {
        let a = interpolate(&seq(&[1.0]));
        assert_eq!((a.evaluate(0.5), a.evaluate(1.0), a.evaluate(1.5)), (0.5, 1.0, 0.5));
        assert!(interpolate(&seq(&[0.0, 0.0])).is_zero());
        assert_eq!(interpolate(&seq(&[1.0, 1.0])).evaluate(1.5), 1.0);
    }

    #[test]
    fn difference_examples() {
        assert_eq!(difference_sequence(&seq(&[1.0, 0.0, 0.0])).entries(), &[1.0, 0.0, 0.0]);
        assert_eq!(difference_sequence(&seq(&[1.0, 1.0])).entries(), &[0.0, 1.0]);
        assert_eq!(difference_sequence(&seq(&[1.0; 5])).entries(), &[0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn partial_sum_examples() {
        let e1 = seq(&[1.0, 0.0]);
        assert_abs_diff_eq!(partial_sum(&e1, SeriesKind::Sine, FRAC_PI_2, 2).unwrap(), 1.0);
        assert_eq!(partial_sum(&e1, SeriesKind::Cosine, 0.0, 1).unwrap(), 1.0);
        let any = seq(&[0.3, -2.0, 5.0]);
        assert_eq!(partial_sum(&any, SeriesKind::Sine, 0.0, 3).unwrap(), 0.0);
        assert!(partial_sum(&any, SeriesKind::Sine, 1.0, 4).is_err());
        assert!(partial_sum(&any, SeriesKind::Sine, 1.0, 0).is_err());
    }

    #[test]
    fn condsin_examples() {
        assert_eq!(condsin_sum(&seq(&[1.0])), 1.0);
        assert_eq!(condsin_sum(&seq(&[0.0, 0.0])), 0.0);
        let b = Generator::Power { p: 2.0, len: 200 }.materialize().unwrap();
        // partial ζ(3) to 200 terms, computed independently
        assert_abs_diff_eq!(condsin_sum(&b), 1.202_044_465_503_345_6, epsilon = 1e-13);
        let zeta3 = 1.202_056_903_159_594_3;
        assert!(zeta3 - condsin_sum(&b) < 1.0 / (2.0 * 200.0 * 200.0));
    }

    #[test]
    fn generators_parse() {
        let s: SequenceSpec = serde_json::from_str(r#"{"gen":"single-spike","n":4}"#).unwrap();
        assert_eq!(s.materialize().unwrap().entries(), &[0.0, 0.0, 0.0, 1.0]);
        let s: SequenceSpec = serde_json::from_str(r#"{"gen":"power","p":2,"N":3}"#).unwrap();
        assert_eq!(s.materialize().unwrap().entries(), &[1.0, 0.25, 1.0 / 9.0]);
        let s: SequenceSpec = serde_json::from_str(r#"{"gen":"log-power","q":1,"N":2}"#).unwrap();
        assert_abs_diff_eq!(s.materialize().unwrap().get(1), 1.0 / 3f64.ln());
        let s: SequenceSpec = serde_json::from_str(r#"{"entries":[1,2]}"#).unwrap();
        assert_eq!(s.materialize().unwrap().len(), 2);
        assert!(serde_json::from_str::<SequenceSpec>(r#"{"gen":"nope"}"#).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let r = condsin_equivalence_ratio(&seq(&[1.0, 0.0]), 2).unwrap();
        assert_abs_diff_eq!(r.integral, 2.0 * 2f64.ln() - 1.0, epsilon = 1e-15);
        assert!((0.25..=4.0).contains(&r.ratio));
        let b = Generator::Power { p: 1.0, len: 2000 }.materialize().unwrap();
        let r1 = condsin_equivalence_ratio(&b, 1000).unwrap();
        let r2 = condsin_equivalence_ratio(&b, 2000).unwrap();
        assert!((r1.ratio - r2.ratio).abs() / r1.ratio < 0.1);
        let r3 = condsin_equivalence_ratio(&b.scaled(-7.0), 1000).unwrap();
        assert_abs_diff_eq!(r3.ratio, r1.ratio, epsilon = 1e-12);
        assert_eq!(condsin_equivalence_ratio(&seq(&[0.0]), 1), Err(Error::ZeroFunction));
    }

    #[test]
    fn sine_asymptotic_examples() {
        let e1 = seq(&[1.0]);
        let r = sine_asymptotic_check(&e1, 32, 1e-8).unwrap();
        assert!(r.l1_value.is_finite() && r.ratio.is_finite());
        let b = Generator::Power { p: 1.0, len: 64 }.materialize().unwrap();
        let r1 = sine_asymptotic_check(&b, 32, 1e-9).unwrap();
        let r2 = sine_asymptotic_check(&b.scaled(2.0), 32, 2e-9).unwrap();
        assert_abs_diff_eq!(r1.ratio, r2.ratio, epsilon = 1e-6);
        let z = sine_asymptotic_check(&seq(&[0.0; 4]), 16, 1e-8).unwrap();
        assert_eq!(z.l1_value, 0.0);
        assert!(sine_asymptotic_check(&e1, 15, 1e-8).is_err());
    }

    #[test]
    fn trigub_examples() {
        let z = trigub_discrepancy(&FunctionModel::zero(), 64).unwrap();
        assert_eq!((z.sup_defect, z.bv_norm), (0.0, 0.0));
        let tent = FunctionModel::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).unwrap();
        let t = trigub_discrepancy(&tent, 64).unwrap();
        // integral e^{-ix}·sinc²(x/2) against sum e^{-ix}: largest gap 1 − 4/π² at x = π
        assert_abs_diff_eq!(t.sup_defect, 1.0 - 4.0 / (PI * PI), epsilon = 1e-12);
        assert_eq!(t.bv_norm, 2.0);
        let t3 = trigub_discrepancy(&tent.scaled(3.0), 64).unwrap();
        assert_abs_diff_eq!(t3.sup_defect / t3.bv_norm, t.sup_defect / t.bv_norm, epsilon = 1e-12);
    }

    #[test]
    fn interpolation_invariants() {
        let c = seq(&[0.5, -1.0, 2.0, 0.25, 0.0, -3.0, 1.0]);
        let a = interpolate(&c);
        for n in 1..=c.len() {
            assert_eq!(a.evaluate(n as f64), c.get(n));
        }
        let bv: f64 = difference_sequence(&c).entries().iter().map(|d| d.abs()).sum::<f64>() + c.get(1).abs();
        assert_abs_diff_eq!(a.total_variation(), bv, epsilon = 1e-13);
        let m_top = (c.len() as f64).log2().ceil() as i32 + 1;
        let fun = amalgam_norm_over(&a.derivative(), 0..=m_top);
        assert_abs_diff_eq!(fun, sequence_amalgam_norm(&difference_sequence(&c)), epsilon = 1e-12);
    }
}
