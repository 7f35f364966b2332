//! JSON document formats accepted and produced by the command line.
//!
//! A matrix is `{"n": 2, "data": [row-major entries], "name": "optional"}`.
//! A vector is a plain array of numbers. An interval is
//! `{"n": 2, "lower": E, "upper": E}` where `E` is `{"closed": matrix}`,
//! `{"open": matrix}`, `"-inf"` or `"+inf"`.

use std::io::Read;

use loewner_core::intervals::{Endpoint, IntervalSpec, MapChain, PrimitiveMap};
use loewner_core::{Matrix, SymMat, Tolerances};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

/// Asymmetry above which loading a symmetric matrix prints a warning.
pub const ASYMMETRY_WARNING: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub n: usize,
    pub data: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix) -> MatrixDoc {
        MatrixDoc {
            n: m.rows(),
            data: m.as_slice().to_vec(),
            name: None,
        }
    }

    pub fn to_matrix(&self) -> CliResult<Matrix> {
        if self.n == 0 {
            return Err(CliError::Parse("matrix dimension must be at least 1".into()));
        }
        if self.data.len() != self.n * self.n {
            return Err(CliError::Parse(format!(
                "matrix{} has n = {} but {} entries (expected {})",
                self.label(),
                self.n,
                self.data.len(),
                self.n * self.n
            )));
        }
        Ok(Matrix::from_row_major(self.n, self.n, self.data.clone())?)
    }

    /// Symmetrizes, warning on stderr when the input was noticeably
    /// asymmetric.
    pub fn to_sym(&self) -> CliResult<SymMat> {
        let m = self.to_matrix()?;
        let gap = SymMat::asymmetry(&m);
        if gap > ASYMMETRY_WARNING {
            eprintln!(
                "warning: matrix{} is not symmetric (max |a_ij - a_ji| = {gap:e}); using (A + At)/2",
                self.label()
            );
        }
        Ok(SymMat::from_matrix(&m)?)
    }

    fn label(&self) -> String {
        self.name.as_ref().map(|s| format!(" '{s}'")).unwrap_or_default()
    }
}

pub fn matrix_value(m: &Matrix) -> Value {
    serde_json::to_value(MatrixDoc::from_matrix(m)).expect("finite entries")
}

pub fn sym_value(m: &SymMat) -> Value {
    matrix_value(m.as_matrix())
}

/// Reads an argument: `-` is stdin, text starting with `{` or `[` is
/// inline JSON, anything else is a file path.
pub fn read_arg(arg: &str) -> CliResult<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::Parse(format!("{arg}: {e}")))
}

pub fn parse_arg<T: for<'de> Deserialize<'de>>(arg: &str) -> CliResult<T> {
    Ok(serde_json::from_str(&read_arg(arg)?)?)
}

pub fn load_sym(arg: &str) -> CliResult<SymMat> {
    parse_arg::<MatrixDoc>(arg)?.to_sym()
}

pub fn load_matrix(arg: &str) -> CliResult<Matrix> {
    parse_arg::<MatrixDoc>(arg)?.to_matrix()
}

pub fn load_vector(arg: &str) -> CliResult<Vec<f64>> {
    let v: Vec<f64> = parse_arg(arg)?;
    if v.is_empty() {
        return Err(CliError::Parse("vector must be non-empty".into()));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointDoc {
    Closed(MatrixDoc),
    Open(MatrixDoc),
    #[serde(rename = "-inf")]
    MinusInfinity,
    #[serde(rename = "+inf")]
    PlusInfinity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDoc {
    pub n: usize,
    pub lower: EndpointDoc,
    pub upper: EndpointDoc,
}

impl IntervalDoc {
    pub fn to_spec(&self, tol: &Tolerances) -> CliResult<IntervalSpec> {
        let endpoint = |e: &EndpointDoc| -> CliResult<Endpoint> {
            Ok(match e {
                EndpointDoc::Closed(m) => Endpoint::closed(self.checked(m)?),
                EndpointDoc::Open(m) => Endpoint::open(self.checked(m)?),
                EndpointDoc::MinusInfinity => Endpoint::MinusInfinity,
                EndpointDoc::PlusInfinity => Endpoint::PlusInfinity,
            })
        };
        Ok(IntervalSpec::new(
            endpoint(&self.lower)?,
            endpoint(&self.upper)?,
            self.n,
            tol,
        )?)
    }

    fn checked(&self, m: &MatrixDoc) -> CliResult<SymMat> {
        if m.n != self.n {
            return Err(CliError::Dimension(format!(
                "endpoint has n = {}, interval has n = {}",
                m.n, self.n
            )));
        }
        m.to_sym()
    }
}

pub fn chain_value(chain: &MapChain) -> Value {
    let steps: Vec<Value> = chain
        .steps()
        .iter()
        .map(|step| match step {
            PrimitiveMap::Translate(s) => json!({"op": step.name(), "s": sym_value(s)}),
            PrimitiveMap::Congruence(c) => json!({"op": step.name(), "t": matrix_value(c.generator())}),
            PrimitiveMap::Invert | PrimitiveMap::Negate => json!({"op": step.name()}),
        })
        .collect();
    json!({
        "parity": if chain.parity() { "odd" } else { "even" },
        "steps": steps,
    })
}
