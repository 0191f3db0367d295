use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::element::{TensorDgla, TensorElement};
use crate::error::{Error, Result};
use crate::linalg::scalar::{scalar_from_json, scalar_to_json};

/// `{"degree": i, "coeffs": [[c_{k,α} for α in m_A] for k in L^i]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementFile {
    #[serde(default = "one")]
    degree: i32,
    coeffs: Vec<Vec<Value>>,
}

fn one() -> i32 {
    1
}

pub fn element_from_json(t: &TensorDgla, text: &str) -> Result<TensorElement> {
    let f: ElementFile = serde_json::from_str(text)?;
    element_from_value(t, f)
}

pub fn element_from_value_json(t: &TensorDgla, v: &Value) -> Result<TensorElement> {
    let f: ElementFile = serde_json::from_value(v.clone())?;
    element_from_value(t, f)
}

fn element_from_value(t: &TensorDgla, f: ElementFile) -> Result<TensorElement> {
    let (dl, n) = (t.base().dim(f.degree), t.ring().dim_m());
    if f.coeffs.len() != dl {
        return Err(Error::Parse(format!(
            "coeffs: expected {dl} rows (basis of degree {}), found {}",
            f.degree,
            f.coeffs.len()
        )));
    }
    let mut coeffs = Vec::with_capacity(dl * n);
    for (k, row) in f.coeffs.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "coeffs[{k}]: expected {n} entries (basis of m), found {}",
                row.len()
            )));
        }
        for v in row {
            coeffs.push(scalar_from_json(v)?);
        }
    }
    t.element(f.degree, coeffs)
}

pub fn element_to_json(t: &TensorDgla, x: &TensorElement) -> Value {
    let n = t.ring().dim_m();
    let rows: Vec<Vec<Value>> = (0..t.base().dim(x.degree))
        .map(|k| {
            x.coeffs[k * n..(k + 1) * n]
                .iter()
                .map(scalar_to_json)
                .collect()
        })
        .collect();
    serde_json::json!({ "degree": x.degree, "coeffs": rows })
}
