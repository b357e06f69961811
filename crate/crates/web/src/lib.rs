//! Browser bindings: each export takes a model as JSON and returns JSON for the page to plot.

use amalgam_core::asymptotics::decompose;
use amalgam_core::transforms::t_transform;
use amalgam_core::{function_amalgam_norm, FunctionModel, TransformKind};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_POINTS: usize = 20_000;

#[derive(Serialize)]
struct Decomposition {
    x: Vec<f64>,
    transform: Vec<f64>,
    main: Vec<f64>,
    remainder: Vec<f64>,
}

#[derive(Serialize)]
struct Curve {
    t: Vec<f64>,
    value: Vec<f64>,
}

#[derive(Serialize)]
struct Scales {
    value: f64,
    tail_bound: f64,
    scales: Vec<i32>,
    contributions: Vec<f64>,
}

fn model(spec: &str) -> Result<FunctionModel, String> {
    serde_json::from_str(spec).map_err(|e| format!("model: {e}"))
}

/// `n` points from `lo` to `hi`, geometric when `log` is set.
fn grid(lo: f64, hi: f64, n: usize, log: bool) -> Result<Vec<f64>, String> {
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(format!("need 0 < lo < hi, got {lo}..{hi}"));
    }
    if !(2..=MAX_POINTS).contains(&n) {
        return Err(format!("point count must be in 2..={MAX_POINTS}, got {n}"));
    }
    let step = |i: usize| i as f64 / (n - 1) as f64;
    Ok((0..n).map(|i| if log { lo * (hi / lo).powf(step(i)) } else { lo + (hi - lo) * step(i) }).collect())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain numeric data serializes")
}

pub fn decomposition_json(spec: &str, gamma: u8, lo: f64, hi: f64, n: usize) -> Result<String, String> {
    let f = model(spec)?;
    let kind = TransformKind::from_gamma(gamma).map_err(|e| e.to_string())?;
    let mut out =
        Decomposition { x: Vec::new(), transform: Vec::new(), main: Vec::new(), remainder: Vec::new() };
    for x in grid(lo, hi, n, true)? {
        let d = decompose(&f, kind, x).map_err(|e| e.to_string())?;
        out.x.push(x);
        out.transform.push(d.transform_value);
        out.main.push(d.main_term);
        out.remainder.push(d.remainder);
    }
    Ok(to_json(&out))
}

/// Knots of the model make `Tg` blow up logarithmically where it jumps; those
/// points come back as `null`.
pub fn t_transform_json(spec: &str, lo: f64, hi: f64, n: usize) -> Result<String, String> {
    let g = model(spec)?;
    let t = grid(lo, hi, n, false)?;
    let value = t.iter().map(|&t| t_transform(&g, t).unwrap_or(f64::NAN)).collect();
    Ok(to_json(&Curve { t, value }))
}

pub fn norm_scales_json(spec: &str, tol: f64) -> Result<String, String> {
    let g = model(spec)?;
    let report = function_amalgam_norm(&g, tol).map_err(|e| e.to_string())?;
    let (scales, contributions) = report.per_scale.iter().copied().unzip();
    Ok(to_json(&Scales { value: report.value, tail_bound: report.tail_bound, scales, contributions }))
}

#[wasm_bindgen]
pub fn decomposition(spec: &str, gamma: u8, lo: f64, hi: f64, n: usize) -> Result<String, JsValue> {
    decomposition_json(spec, gamma, lo, hi, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn t_transform_curve(spec: &str, lo: f64, hi: f64, n: usize) -> Result<String, JsValue> {
    t_transform_json(spec, lo, hi, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn norm_scales(spec: &str, tol: f64) -> Result<String, JsValue> {
    norm_scales_json(spec, tol).map_err(|e| JsValue::from_str(&e))
}
