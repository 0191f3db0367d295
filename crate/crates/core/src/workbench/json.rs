use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use super::config::DglaSource;
use crate::dgla::json::dgla_from_json;
use crate::dgla::{Dgla, DglaMorphism};
use crate::error::{Error, Result};
use crate::linalg::scalar::{scalar_from_json, scalar_to_json};
use crate::linalg::{Matrix, Scalar, Subspace};

/// `{"target": "builtin:NAME" | {dgla}, "blocks": {"i": [[row]…]}}`; the
/// target defaults to the source.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismFile {
    #[serde(default)]
    target: Option<Value>,
    #[serde(default)]
    blocks: BTreeMap<String, Vec<Vec<Value>>>,
}

pub fn morphism_from_json(source: &Dgla, text: &str) -> Result<DglaMorphism> {
    let f: MorphismFile = serde_json::from_str(text)?;
    let target = match f.target {
        None => source.clone(),
        Some(Value::String(s)) => s.parse::<DglaSource>()?.load()?,
        Some(v @ Value::Object(_)) => {
            dgla_from_json(&v.to_string()).map_err(|e| e.context("target"))?
        }
        Some(_) => {
            return Err(Error::Parse(
                "target: expected a source string or a DGLA object".into(),
            ))
        }
    };
    let mut blocks = BTreeMap::new();
    for (k, rows) in &f.blocks {
        let d: i32 = k
            .parse()
            .map_err(|_| Error::Parse(format!("blocks: key {k:?} is not a degree")))?;
        let (r, c) = (target.dim(d), source.dim(d));
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Parse(format!(
                "blocks[{d}]: expected a {r}×{c} matrix"
            )));
        }
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(scalar_from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.context(format!("blocks[{d}]")))?;
        blocks.insert(d, Matrix::from_rows(parsed, c)?);
    }
    DglaMorphism::new(source.clone(), target, blocks)
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vectors_json(vs: &[Vec<Scalar>]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": vectors_json(&s.rref_basis()) })
}
