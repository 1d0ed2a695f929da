//! `--state` spec strings.
//!
//! ```text
//! maxent:d
//! isotropic:d:alpha
//! belldiag:d:@weights.json     weights: d×d nested array [s][t] or flat list of d²
//! example4:d:a1
//! file:@rho.json               density-matrix document
//! ```

use std::fs;

use gsic_core::states::{bell_diagonal, diagonal_mixture_state, isotropic, max_entangled};
use gsic_core::DensityMatrix;
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
#[serde(untagged)]
enum Weights {
    Nested(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

fn parse_num<T: std::str::FromStr>(field: &str, what: &str, spec: &str) -> Result<T, CliError> {
    field
        .parse()
        .map_err(|_| CliError::usage(format!("bad {what} '{field}' in state spec '{spec}'")))
}

fn file_arg<'a>(field: &'a str, spec: &str) -> Result<&'a str, CliError> {
    field
        .strip_prefix('@')
        .ok_or_else(|| CliError::usage(format!("expected @PATH in state spec '{spec}'")))
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))
}

pub fn parse_state(spec: &str) -> Result<DensityMatrix, CliError> {
    let fields: Vec<&str> = spec.split(':').collect();
    let state = match fields.as_slice() {
        ["maxent", d] => max_entangled(parse_num(d, "dimension", spec)?)?,
        ["isotropic", d, alpha] => isotropic(parse_num(d, "dimension", spec)?, parse_num(alpha, "alpha", spec)?)?,
        ["example4", d, a1] => diagonal_mixture_state(parse_num(d, "dimension", spec)?, parse_num(a1, "a1", spec)?)?,
        ["belldiag", d, weights] => {
            let d: usize = parse_num(d, "dimension", spec)?;
            let text = read(file_arg(weights, spec)?)?;
            let weights: Weights = serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("bad Bell weights file: {e}")))?;
            let flat = match weights {
                Weights::Flat(w) => w,
                Weights::Nested(rows) => {
                    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                        return Err(CliError::usage(format!("Bell weights must be a {d}x{d} array")));
                    }
                    rows.concat()
                }
            };
            bell_diagonal(d, &flat)?.state
        }
        ["file", path] => DensityMatrix::from_json(&read(file_arg(path, spec)?)?)?,
        _ => return Err(CliError::usage(format!("unrecognised state spec '{spec}'"))),
    };
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inline_families() {
        assert_eq!(parse_state("maxent:3").unwrap().local_dim(), 3);
        assert_eq!(parse_state("isotropic:2:0.4").unwrap().parties(), 2);
        assert!(parse_state("example4:4:0.5").is_ok());
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "maxent", "maxent:x", "isotropic:2", "isotropic:2:1.5", "belldiag:2:w.json", "file:rho.json", "ghz:3"] {
            assert!(parse_state(bad).is_err(), "{bad}");
        }
    }
}
