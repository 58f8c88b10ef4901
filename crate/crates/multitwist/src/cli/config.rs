//! JSON run configuration.
//!
//! ```json
//! {
//!   "functions": [
//!     {"label": "zeta", "Q": 0.5641895835477563,
//!      "factors": [{"lambda": 0.5, "mu": [0.0, 0.0]}],
//!      "omega": [1.0, 0.0], "coefficients": {"kind": "zeta"}}
//!   ],
//!   "kappa": ["1"],
//!   "alpha": 1.0,
//!   "seed": 0,
//!   "params": {"x": 10.0}
//! }
//! ```
//!
//! Dirichlet coefficients list `χ(1), .., χ(q)`; `"alpha"` is a number or a
//! witness vector of indices.

use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lfunc::{CoefficientSource, DirichletCharacter, GammaFactor, SelbergDatum};
use crate::spectrum::{AlphaSpec, TwistFamily};
use crate::twist::EvalParams;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub functions: Vec<FunctionBlock>,
    pub kappa: Vec<String>,
    #[serde(default)]
    pub alpha: Option<AlphaValue>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: EvalParams,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AlphaValue {
    Value(f64),
    Witness(Vec<u64>),
}

impl From<&AlphaValue> for AlphaSpec {
    fn from(a: &AlphaValue) -> Self {
        match a {
            AlphaValue::Value(v) => AlphaSpec::Value(*v),
            AlphaValue::Witness(w) => AlphaSpec::Witness(w.clone()),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionBlock {
    #[serde(default)]
    pub label: Option<String>,
    #[serde(rename = "Q")]
    pub q: f64,
    pub factors: Vec<FactorBlock>,
    pub omega: [f64; 2],
    pub coefficients: CoefficientBlock,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorBlock {
    pub lambda: f64,
    pub mu: [f64; 2],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CoefficientBlock {
    Zeta,
    Dirichlet { modulus: u64, values: Vec<[f64; 2]> },
    List { values: Vec<[f64; 2]> },
}

fn c(p: [f64; 2]) -> Complex64 {
    Complex64::new(p[0], p[1])
}

impl FromStr for RunConfig {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("config: {e}")))
    }
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
        text.parse()
    }

    pub fn family(&self) -> Result<TwistFamily> {
        let members = self
            .functions
            .iter()
            .enumerate()
            .map(|(i, f)| f.datum().map_err(|e| prefix(&format!("functions[{i}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        let kappa = self
            .kappa
            .iter()
            .enumerate()
            .map(|(i, k)| {
                BigRational::from_str(k.trim())
                    .map_err(|_| Error::InvalidInput(format!("kappa[{i}]: expected a rational \"p/q\", got {k:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        TwistFamily::new(members, kappa).map_err(|e| prefix("kappa", e))
    }
}

impl FunctionBlock {
    pub fn datum(&self) -> Result<SelbergDatum> {
        let factors = self
            .factors
            .iter()
            .enumerate()
            .map(|(j, f)| GammaFactor::new(f.lambda, c(f.mu)).map_err(|e| prefix(&format!("factors[{j}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        let source = match &self.coefficients {
            CoefficientBlock::Zeta => CoefficientSource::Zeta,
            CoefficientBlock::Dirichlet { modulus, values } => {
                if values.len() as u64 != *modulus {
                    return Err(Error::InvalidInput(format!(
                        "coefficients.values: expected chi(1)..chi({modulus}), got {} values",
                        values.len()
                    )));
                }
                let mut periodic = vec![Complex64::new(0.0, 0.0); *modulus as usize];
                for (n, v) in values.iter().enumerate() {
                    periodic[(n + 1) % *modulus as usize] = c(*v);
                }
                let chi = DirichletCharacter::new(*modulus, periodic).map_err(|e| prefix("coefficients", e))?;
                CoefficientSource::Dirichlet(chi)
            }
            CoefficientBlock::List { values } => CoefficientSource::List(values.iter().map(|v| c(*v)).collect()),
        };
        let label = self.label.clone().unwrap_or_else(|| "F".into());
        SelbergDatum::new(label, self.q, factors, c(self.omega), source)
    }
}

fn prefix(path: &str, e: Error) -> Error {
    match e {
        Error::InvalidInput(m) => Error::InvalidInput(format!("{path}: {m}")),
        other => other,
    }
}
