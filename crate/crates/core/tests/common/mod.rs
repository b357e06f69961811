#![allow(dead_code)]

use amalgam_core::FunctionModel;
use proptest::prelude::*;

fn build(pts: Vec<(f64, f64)>, start: f64, continuous: bool) -> FunctionModel {
    let mut t = start;
    let mut knots = vec![t];
    let mut values = vec![if continuous { 0.0 } else { pts[0].1 }];
    for (dt, v) in pts {
        t += dt;
        knots.push(t);
        values.push(v);
    }
    if continuous {
        *values.last_mut().unwrap() = 0.0;
    }
    FunctionModel::new(knots, values).unwrap()
}

/// Models with 3–12 knots, gaps ≥ 0.05, values in [−2, 2], vanishing at both edges.
pub fn continuous_model() -> impl Strategy<Value = FunctionModel> {
    (0.0f64..1.0, prop::collection::vec((0.05f64..1.2, -2.0f64..2.0), 2..12))
        .prop_map(|(start, pts)| build(pts, start, true))
}

/// Same shape, edge values free.
pub fn any_model() -> impl Strategy<Value = FunctionModel> {
    (0.0f64..1.0, prop::collection::vec((0.05f64..1.2, -2.0f64..2.0), 2..12))
        .prop_map(|(start, pts)| build(pts, start, false))
}

pub fn tent() -> FunctionModel {
    FunctionModel::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).unwrap()
}

pub fn hat() -> FunctionModel {
    FunctionModel::new(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap()
}

/// Keeps `t` at least `gap` away from every knot.
pub fn clear_of_knots(g: &FunctionModel, t: f64, gap: f64) -> bool {
    g.breakpoints().iter().all(|k| (k - t).abs() > gap)
}
