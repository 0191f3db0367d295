use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use super::omega::OmegaElement;
use super::path::{PathSpace, PolyPath};
use crate::error::{Error, Result};
use crate::mc::{element_from_value_json, element_to_json};

/// `{"degree": i, "coeff_by_t_power": {"k": [[…]]}}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PathFile {
    degree: i32,
    #[serde(default)]
    coeff_by_t_power: BTreeMap<String, Vec<Vec<Value>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OmegaFile {
    a: Value,
    #[serde(default)]
    b: Option<Value>,
}

pub fn path_from_json(s: &PathSpace, v: &Value) -> Result<PolyPath> {
    let f: PathFile = serde_json::from_value(v.clone())?;
    let mut coeffs = Vec::new();
    for (k, rows) in &f.coeff_by_t_power {
        let k: usize = k
            .parse()
            .map_err(|_| Error::Parse(format!("coeff_by_t_power: key {k:?} is not a power")))?;
        if k > s.cap {
            return Err(Error::CapOverflow(format!(
                "power t^{k} exceeds the cap {}",
                s.cap
            )));
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, s.t.zero(f.degree));
        }
        let x = element_from_value_json(&s.t, &json!({ "degree": f.degree, "coeffs": rows }))
            .map_err(|e| e.context(format!("coeff_by_t_power[{k}]")))?;
        coeffs[k] = x;
    }
    s.path(f.degree, coeffs)
}

pub fn path_to_json(s: &PathSpace, p: &PolyPath) -> Value {
    let mut powers = serde_json::Map::new();
    for (k, c) in p.coeffs.iter().enumerate() {
        if !c.is_zero() {
            powers.insert(k.to_string(), element_to_json(&s.t, c)["coeffs"].clone());
        }
    }
    json!({ "degree": p.degree, "coeff_by_t_power": powers })
}

/// `{"a": path, "b": path}`; a missing `b` is the zero path.
pub fn omega_from_json(s: &PathSpace, text: &str) -> Result<OmegaElement> {
    let f: OmegaFile = serde_json::from_str(text)?;
    let a = path_from_json(s, &f.a).map_err(|e| e.context("a"))?;
    let b = match f.b {
        Some(v) => path_from_json(s, &v).map_err(|e| e.context("b"))?,
        None => s.zero(a.degree - 1),
    };
    s.omega(a, b)
}

pub fn omega_to_json(s: &PathSpace, w: &OmegaElement) -> Value {
    json!({ "a": path_to_json(s, &w.a), "b": path_to_json(s, &w.b) })
}
