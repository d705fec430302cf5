//! System config files.
//!
//! ```json
//! {"type": "cyclic", "N": 12, "shifts": [5],
//!  "observables": [{"kind": "dense", "data": [1, [0.5, -0.5], 0]}]}
//! {"type": "torus", "m": 1, "alphas": [["sqrt(2)"]],
//!  "observables": [{"kind": "fourier", "data": [{"k": [1], "c": [1, 0]}]}]}
//! ```
//!
//! Dense values are a real number or a `[re, im]` pair. Rotation entries
//! are numbers or one of the strings `sqrt(n)` and `phi`.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Deserialize;

use super::{CyclicSystem, Observable, System, TorusSystem};
use crate::family::io::ParseError;

#[derive(Deserialize)]
#[serde(untagged)]
enum Value {
    Real(f64),
    Pair([f64; 2]),
}

impl Value {
    fn complex(&self) -> Complex64 {
        match *self {
            Value::Real(x) => Complex64::new(x, 0.0),
            Value::Pair([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Real {
    Number(f64),
    Named(String),
}

impl Real {
    fn value(&self) -> Result<f64, ParseError> {
        match self {
            Real::Number(x) => Ok(*x),
            Real::Named(s) => {
                parse_real(s).ok_or_else(|| ParseError::new(format!("cannot read `{s}` as a real number")))
            }
        }
    }
}

fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    if s == "phi" {
        return Some((1.0 + 5f64.sqrt()) / 2.0);
    }
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return inner.trim().parse::<f64>().ok().filter(|x| *x >= 0.0).map(f64::sqrt);
    }
    s.parse().ok()
}

#[derive(Deserialize)]
struct FourierTerm {
    k: Vec<i64>,
    c: Value,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ObservableConfig {
    Dense { data: Vec<Value> },
    Fourier { data: Vec<FourierTerm> },
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum SystemConfig {
    Cyclic {
        #[serde(rename = "N")]
        n: u64,
        shifts: Vec<i64>,
        #[serde(default)]
        observables: Vec<ObservableConfig>,
    },
    Torus {
        m: usize,
        alphas: Vec<Vec<Real>>,
        #[serde(default)]
        observables: Vec<ObservableConfig>,
    },
}

/// A parsed config: the system and its observables.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemSpec {
    pub system: System,
    pub observables: Vec<Observable>,
}

fn observable(cfg: ObservableConfig, index: usize, system: &System) -> Result<Observable, ParseError> {
    let at = |msg: String| ParseError::new(format!("observables[{}]: {}", index + 1, msg));
    match (cfg, system) {
        (ObservableConfig::Dense { data }, System::Cyclic(c)) => {
            if data.len() as u64 != c.modulus() {
                return Err(at(format!("has {} values, expected N = {}", data.len(), c.modulus())));
            }
            Ok(Observable::Dense(data.iter().map(Value::complex).collect()))
        }
        (ObservableConfig::Fourier { data }, System::Torus(t)) => {
            let mut map = BTreeMap::new();
            for term in data {
                if term.k.len() != t.dim() {
                    return Err(at(format!(
                        "frequency {:?} has length {}, expected m = {}",
                        term.k,
                        term.k.len(),
                        t.dim()
                    )));
                }
                *map.entry(term.k).or_insert_with(Complex64::default) += term.c.complex();
            }
            Ok(Observable::Fourier(map))
        }
        (ObservableConfig::Dense { .. }, _) => Err(at("dense data needs a cyclic system".into())),
        (ObservableConfig::Fourier { .. }, _) => Err(at("Fourier data needs a torus system".into())),
    }
}

pub fn from_str(s: &str) -> Result<SystemSpec, ParseError> {
    let cfg: SystemConfig = serde_json::from_str(s).map_err(|e| ParseError::from_json(&e))?;
    let (system, observables) = match cfg {
        SystemConfig::Cyclic { n, shifts, observables } => {
            let sys = CyclicSystem::new(n, &shifts).map_err(|e| ParseError::new(e.to_string()))?;
            (System::Cyclic(sys), observables)
        }
        SystemConfig::Torus { m, alphas, observables } => {
            let alphas = alphas
                .iter()
                .map(|a| a.iter().map(Real::value).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let sys = TorusSystem::new(m, alphas).map_err(|e| ParseError::new(e.to_string()))?;
            (System::Torus(sys), observables)
        }
    };
    let observables =
        observables.into_iter().enumerate().map(|(i, o)| observable(o, i, &system)).collect::<Result<Vec<_>, _>>()?;
    Ok(SystemSpec { system, observables })
}
