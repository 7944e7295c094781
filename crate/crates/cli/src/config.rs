//! Optional key-value file overriding the quadrature defaults.
//!
//! ```text
//! split_delta = 0.2
//! tail_cutoff = 80
//! abs_tol = 1e-11
//! max_subdivisions = 4000
//! ```

use std::path::Path;

use kurepa_core::QuadratureConfig;
use toml::{Table, Value};

fn number(key: &str, v: &Value) -> Result<f64, String> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        other => Err(format!("invalid config: {key} must be a number, got {other}")),
    }
}

pub fn parse_config(text: &str) -> Result<QuadratureConfig, String> {
    let table: Table = text.parse().map_err(|e| format!("invalid config: {e}"))?;
    let mut cfg = QuadratureConfig::default();
    for (key, value) in &table {
        match key.as_str() {
            "split_delta" => cfg.split_delta = number(key, value)?,
            "tail_cutoff" => cfg.tail_cutoff = number(key, value)?,
            "abs_tol" => cfg.abs_tol = number(key, value)?,
            "max_subdivisions" => {
                cfg.max_subdivisions = match value {
                    Value::Integer(i) if *i > 0 => *i as usize,
                    _ => return Err(format!("invalid config: max_subdivisions must be a positive integer, got {value}")),
                }
            }
            other => return Err(format!("invalid config: unknown key '{other}'")),
        }
    }
    cfg.validate().map_err(|e| format!("invalid config: {e}"))?;
    Ok(cfg)
}

pub fn load_config(path: Option<&Path>) -> Result<QuadratureConfig, String> {
    match path {
        None => Ok(QuadratureConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            parse_config(&text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_override() {
        let cfg = parse_config("# tighter\nabs_tol = 1e-13\nmax_subdivisions = 10\n").unwrap();
        assert_eq!(cfg.abs_tol, 1e-13);
        assert_eq!(cfg.max_subdivisions, 10);
        assert_eq!(cfg.split_delta, 0.25);
        assert_eq!(parse_config("").unwrap(), QuadratureConfig::default());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(parse_config("bogus = 1").is_err());
        assert!(parse_config("split_delta = 0.9").is_err());
        assert!(parse_config("abs_tol = \"small\"").is_err());
        assert!(parse_config("max_subdivisions = 2.5").is_err());
        assert_eq!(parse_config("tail_cutoff = 80").unwrap().tail_cutoff, 80.0);
    }
}
