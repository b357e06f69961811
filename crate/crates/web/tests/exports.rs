use amalgam_web::{decomposition_json, norm_scales_json, t_transform_json};
use serde_json::Value;

const TENT: &str = r#"{"breakpoints":[0,1,2],"values":[0,1,0]}"#;
const CHI01: &str = r#"{"breakpoints":[0,1],"values":[1,1]}"#;

fn parse(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap_or(f64::NAN)).collect()
}

#[test]
fn decomposition_columns_add_up() {
    let v = parse(&decomposition_json(TENT, 1, 0.1, 100.0, 50).unwrap());
    let (x, total, main, rem) =
        (floats(&v["x"]), floats(&v["transform"]), floats(&v["main"]), floats(&v["remainder"]));
    assert_eq!(x.len(), 50);
    assert!((x[0] - 0.1).abs() < 1e-15 && (x[49] - 100.0).abs() < 1e-12);
    for i in 0..50 {
        assert!((total[i] - main[i] - rem[i]).abs() <= 4.0 * f64::EPSILON * (total[i].abs() + main[i].abs()));
    }
}

#[test]
fn decomposition_rejects_jumps_and_bad_grids() {
    assert!(decomposition_json(CHI01, 1, 0.1, 10.0, 10).unwrap_err().contains("jump"));
    assert!(decomposition_json(TENT, 1, 0.0, 10.0, 10).is_err());
    assert!(decomposition_json(TENT, 1, 0.1, 10.0, 1).is_err());
    assert!(decomposition_json(TENT, 2, 0.1, 10.0, 10).is_err());
    assert!(decomposition_json("{", 1, 0.1, 10.0, 10).unwrap_err().starts_with("model"));
}

#[test]
fn t_transform_curve_of_indicator() {
    let v = parse(&t_transform_json(CHI01, 0.2, 1.8, 5).unwrap());
    let (t, value) = (floats(&v["t"]), floats(&v["value"]));
    assert_eq!(t, vec![0.2, 0.6000000000000001, 1.0, 1.4, 1.8]);
    // the window [t/2, 3t/2] sits inside the support for t < 2/3, so the PV cancels
    assert_eq!(&value[..2], &[0.0, 0.0]);
    // no principal value at the jump t = 1
    assert!(v["value"][2].is_null());
    assert!((value[3] - (0.7f64 / 0.4).ln()).abs() < 1e-14);
    assert!((value[4] - (0.9f64 / 0.8).ln()).abs() < 1e-14);
}

#[test]
fn norm_scales_sum_to_value() {
    let v = parse(&norm_scales_json(CHI01, 1e-10).unwrap());
    let total: f64 = floats(&v["contributions"]).iter().sum();
    let value = v["value"].as_f64().unwrap();
    assert!((total - value).abs() < 1e-12);
    assert!((value - 2.105_047_077_427_545_7).abs() < 1e-9);
    assert_eq!(v["scales"].as_array().unwrap().len(), v["contributions"].as_array().unwrap().len());
}
