mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use amalgam_core::quad::{integrate, split_points, QuadOptions};
use amalgam_core::transforms::{
    dirichlet_integral, fourier_transform, hilbert_transform, t_transform, t_transform_l1_norm,
};
use amalgam_core::{FunctionModel, Piecewise, TransformKind};
use common::{any_model, clear_of_knots, continuous_model, hat, tent};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

const MIDPOINT_PANELS: usize = 1_000_000;

/// Composite midpoint rule for `∫ g(t) e^{ixt}` on the support, with an a-priori
/// error bound from `|(g e^{ixt})''| ≤ x²·sup|g| + 2x·sup|g′|` on each piece plus
/// the slope jump at every knot a panel straddles.
fn midpoint_oracle(g: &FunctionModel, xs: &[f64]) -> Vec<((f64, f64), f64)> {
    let (t0, tk) = g.support();
    let h = (tk - t0) / MIDPOINT_PANELS as f64;
    let mids: Vec<(f64, f64)> = (0..MIDPOINT_PANELS)
        .map(|i| {
            let t = t0 + (i as f64 + 0.5) * h;
            (t, g.evaluate(t))
        })
        .collect();
    let sup = g.sup_abs();
    let slopes: Vec<f64> = g.segments().map(|s| s.slope()).collect();
    let sup_slope = slopes.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let kink_jumps: f64 = slopes.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    xs.iter()
        .map(|&x| {
            let (mut re, mut im) = (0.0, 0.0);
            for &(t, v) in &mids {
                let (s, c) = (x * t).sin_cos();
                re += v * c;
                im += v * s;
            }
            let smooth = (tk - t0) / 24.0 * (x * x * sup + 2.0 * x * sup_slope);
            let bound = h * h * (smooth + kink_jumps) + 1e-15 * MIDPOINT_PANELS as f64 * sup * h;
            ((re * h, im * h), 2.0 * bound)
        })
        .collect()
}

/// `∫_0^∞ (g(t−s) − g(t+s))/s ds`, whose integrand is bounded when `t` is not a knot.
fn difference_kernel_hilbert(g: &FunctionModel, t: f64) -> f64 {
    let (_, tk) = g.support();
    let reach = t.max(tk - t) + 1.0;
    let kinks = g.breakpoints().iter().map(|k| (k - t).abs());
    let points = split_points(0.0, reach, kinks);
    let f = |s: f64| {
        let left = if t - s >= 0.0 { g.evaluate(t - s) } else { 0.0 };
        (left - g.evaluate(t + s)) / s
    };
    integrate(f, &points, QuadOptions::absolute(1e-12)).unwrap().value
}

/// PV `∫_lo^hi g(s)/(t−s) ds` by symmetric excision of `(t−ε, t+ε)` and one
/// Richardson step in `ε`.
fn excision_pv(g: &FunctionModel, t: f64, lo: f64, hi: f64, eps: f64) -> f64 {
    let side = |e: f64| {
        let f = |s: f64| g.evaluate(s) / (t - s);
        let opts = QuadOptions::absolute(1e-13);
        let knots = g.breakpoints().iter().copied();
        let left = integrate(f, &split_points(lo, t - e, knots.clone()), opts).unwrap().value;
        let right = integrate(f, &split_points(t + e, hi, knots), opts).unwrap().value;
        left + right
    };
    2.0 * side(0.5 * eps) - side(eps)
}

#[test]
fn fourier_matches_midpoint_oracle() {
    let xs = [0.1, 1.0, PI, 10.0];
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..20 {
        let g = any_model().new_tree(&mut runner).unwrap().current();
        for (&x, ((re, im), bound)) in xs.iter().zip(midpoint_oracle(&g, &xs)) {
            let cos = fourier_transform(&g, TransformKind::Cosine, x).unwrap();
            let sin = fourier_transform(&g, TransformKind::Sine, x).unwrap();
            assert!((cos - re).abs() <= bound, "cos x={x}: {cos} vs {re} (bound {bound})");
            assert!((sin - im).abs() <= bound, "sin x={x}: {sin} vs {im} (bound {bound})");
        }
    }
}

#[test]
fn hat_cosine_transform_at_pi() {
    // ∫_0^1 (1−t) cos(πt) dt = (1 − cos π)/π²
    let v = fourier_transform(&hat(), TransformKind::Cosine, PI).unwrap();
    assert!((v - 2.0 / (PI * PI)).abs() < 1e-15);
}

#[test]
fn hilbert_matches_difference_kernel() {
    let g = tent();
    for t in [0.3, 0.9, 1.7, 2.5, 7.0] {
        let closed = hilbert_transform(&g, t).unwrap();
        let oracle = difference_kernel_hilbert(&g, t);
        assert!((closed - oracle).abs() < 1e-10, "t={t}: {closed} vs {oracle}");
    }
}

#[test]
fn principal_values_match_excision_oracle() {
    let g = FunctionModel::new(vec![0.2, 0.7, 1.5, 2.4], vec![0.5, -1.0, 1.3, 0.0]).unwrap();
    for t in [0.45, 1.1, 1.9] {
        let pv = excision_pv(&g, t, 0.0, 2.4, 1e-3);
        assert!((hilbert_transform(&g, t).unwrap() - pv).abs() < 1e-9, "H at {t}");
        let tv = excision_pv(&g, t, 0.5 * t, 1.5 * t, 1e-3);
        assert!((t_transform(&g, t).unwrap() - tv).abs() < 1e-9, "T at {t}");
    }
}

#[test]
fn t_transform_of_indicator_scales_like_ln3() {
    for delta in [0.5, 1.0, 2.0] {
        let chi = FunctionModel::indicator(0.0, delta).unwrap();
        let l1 = t_transform_l1_norm(&chi, 2.0 * delta, 1e-10).unwrap();
        assert!((l1 / delta - 3f64.ln()).abs() < 1e-6, "delta={delta}: {l1}");
    }
}

#[test]
fn dirichlet_integral_takes_three_values() {
    for (a, y) in [(1.0, 0.5), (1.0, 0.0), (2.0, 1.9), (1.0, 2.0), (0.5, 3.0), (1.0, 1.0), (3.0, 3.0)] {
        let v = dirichlet_integral(a, y, 1e-8).unwrap();
        let expected = if y < a {
            FRAC_PI_2
        } else if y == a {
            FRAC_PI_4
        } else {
            0.0
        };
        assert!((v - expected).abs() < 1e-6, "(a, y) = ({a}, {y}): {v}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transforms_are_linear(
        g in continuous_model(),
        h in continuous_model(),
        lambda in -3.0f64..3.0,
        mu in -3.0f64..3.0,
        x in 0.05f64..20.0,
        t in 0.05f64..15.0,
    ) {
        let combo = g.scaled(lambda).try_add(&h.scaled(mu)).unwrap();
        for kind in [TransformKind::Cosine, TransformKind::Sine] {
            let lhs = fourier_transform(&combo, kind, x).unwrap();
            let (a, b) = (fourier_transform(&g, kind, x).unwrap(), fourier_transform(&h, kind, x).unwrap());
            let scale = 1.0 + (lambda * a).abs() + (mu * b).abs();
            prop_assert!((lhs - lambda * a - mu * b).abs() <= 1e-12 * scale);
        }
        prop_assume!(clear_of_knots(&combo, t, 1e-6));
        for op in [t_transform as fn(&FunctionModel, f64) -> _, hilbert_transform] {
            let lhs = op(&combo, t).unwrap();
            let (a, b) = (op(&g, t).unwrap(), op(&h, t).unwrap());
            let scale = 1.0 + (lambda * a).abs() + (mu * b).abs() + combo.sup_abs();
            prop_assert!((lhs - lambda * a - mu * b).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn t_transform_vanishes_off_its_window(g in any_model(), u in 1.0f64..10.0) {
        let (t0, tk) = g.support();
        prop_assert_eq!(t_transform(&g, 2.0 * tk * u + 1e-9).unwrap(), 0.0);
        let below = t0 * 2.0 / 3.0 / u;
        if below > 0.0 {
            prop_assert_eq!(t_transform(&g, below).unwrap(), 0.0);
        }
    }

    #[test]
    fn hilbert_agrees_with_difference_kernel(g in continuous_model(), t in 0.05f64..12.0) {
        prop_assume!(clear_of_knots(&g, t, 1e-3));
        let closed = hilbert_transform(&g, t).unwrap();
        let oracle = difference_kernel_hilbert(&g, t);
        prop_assert!((closed - oracle).abs() <= 1e-9 * (1.0 + closed.abs()), "{} vs {}", closed, oracle);
    }
}

#[test]
fn tent_odd_hilbert_gap_matches_oracle() {
    // ∫_0^∞ |H_odd g − Tg| for the tent, from 30-digit quadrature of the three kernel pieces
    let r = amalgam_core::transforms::ht_comparison_defect(&tent(), 1e-7).unwrap();
    assert_eq!(r.g_l1, 1.0);
    assert!((r.ratio - 2.738_571_383_187_12).abs() < 2e-7, "{}", r.ratio);
    assert!(r.ratio / PI < 1.0);
}
