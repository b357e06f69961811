//! Function, sequence and grid descriptors given on the command line.

use std::path::Path;

use amalgam_core::{CoefficientSequence, FunctionModel, PiecewiseConstant, SequenceSpec};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Reads a descriptor given inline (`{...}`) or as a path to a JSON file.
pub fn load_json(spec: &str) -> CliResult<Value> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_owned()
    } else {
        std::fs::read_to_string(Path::new(spec))
            .map_err(|source| CliError::Io { path: spec.into(), source })?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))
}

fn decode<T: DeserializeOwned>(value: Value) -> CliResult<T> {
    serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn parse_model(spec: &str) -> CliResult<FunctionModel> {
    decode(load_json(spec)?)
}

pub fn parse_sequence(spec: &str) -> CliResult<CoefficientSequence> {
    let seq: SequenceSpec = decode(load_json(spec)?)?;
    Ok(seq.materialize()?)
}

/// A function for the norm commands: piecewise linear (`values`) or a step function (`slopes`).
#[derive(Debug, Clone, PartialEq)]
pub enum NormInput {
    Linear(FunctionModel),
    Steps(PiecewiseConstant),
}

pub fn parse_norm_input(spec: &str) -> CliResult<NormInput> {
    let value = load_json(spec)?;
    if value.get("slopes").is_some() {
        Ok(NormInput::Steps(decode(value)?))
    } else {
        Ok(NormInput::Linear(decode(value)?))
    }
}

/// `lo:hi:n`, `n` equally spaced points including both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let step = (self.hi - self.lo) / (self.n - 1) as f64;
        (0..self.n).map(|i| if i + 1 == self.n { self.hi } else { self.lo + step * i as f64 }).collect()
    }

    pub fn require_positive(&self) -> CliResult<()> {
        if self.lo > 0.0 {
            Ok(())
        } else {
            Err(CliError::Usage(format!("grid points must be positive, got lo = {}", self.lo)))
        }
    }
}

fn number(text: &str, what: &str) -> Result<f64, String> {
    let v: f64 = text.trim().parse().map_err(|_| format!("{what} `{text}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{what} must be finite"))
    }
}

pub fn parse_grid(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("expected lo:hi:n, got `{text}`"));
    };
    let (lo, hi) = (number(lo, "lo")?, number(hi, "hi")?);
    let n: usize = n.trim().parse().map_err(|_| format!("point count `{n}` is not a positive integer"))?;
    if n == 0 {
        return Err("point count must be positive".into());
    }
    if !(hi > lo) && n > 1 {
        return Err(format!("expected lo < hi, got {lo}:{hi}"));
    }
    Ok(Grid { lo, hi, n })
}

pub fn parse_window(text: &str) -> Result<(f64, f64), String> {
    let Some((lo, hi)) = text.split_once(':') else {
        return Err(format!("expected lo:hi, got `{text}`"));
    };
    let (lo, hi) = (number(lo, "lo")?, number(hi, "hi")?);
    if lo > 0.0 && hi > lo {
        Ok((lo, hi))
    } else {
        Err(format!("expected 0 < lo < hi, got {lo}:{hi}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("0.1:100:4").unwrap();
        let points = g.points();
        assert_eq!((points[0], points[3]), (0.1, 100.0));
        for (p, expected) in points.iter().zip([0.1, 33.4, 66.7, 100.0]) {
            assert!((p - expected).abs() < 1e-12, "{points:?}");
        }
        assert_eq!(parse_grid("2:2:1").unwrap().points(), vec![2.0]);
        assert!(parse_grid("0:1:10").unwrap().require_positive().is_err());
        for bad in ["1:2", "a:2:3", "1:2:0", "3:1:5", "1:inf:2"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("0.01:1000").unwrap(), (0.01, 1000.0));
        assert!(parse_window("0:1").is_err());
        assert!(parse_window("2:1").is_err());
    }

    #[test]
    fn inline_and_file_specs() {
        let m = parse_model(r#"{"breakpoints":[0,1],"values":[1,0]}"#).unwrap();
        assert_eq!(m.values(), &[1.0, 0.0]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hat.json");
        std::fs::write(&path, r#"{"breakpoints":[0,1],"values":[1,0]}"#).unwrap();
        assert_eq!(parse_model(path.to_str().unwrap()).unwrap(), m);
        assert!(matches!(parse_model("{not json"), Err(CliError::Parse(_))));
        assert!(matches!(parse_model("/no/such/file.json"), Err(CliError::Io { .. })));
        assert!(matches!(parse_model(r#"{"breakpoints":[1,0],"values":[1,0]}"#), Err(CliError::Parse(_))));
        assert!(matches!(
            parse_norm_input(r#"{"breakpoints":[0,1,2],"slopes":[1,-1]}"#).unwrap(),
            NormInput::Steps(_)
        ));
        assert_eq!(parse_sequence(r#"{"gen":"single-spike","n":4}"#).unwrap().len(), 4);
    }
}
