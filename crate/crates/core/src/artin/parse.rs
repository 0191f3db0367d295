use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::algebra::{build_truncated_poly, ArtinAlgebra};
use super::morphism::residue_field;
use crate::error::{Error, Result};
use crate::linalg::scalar::{scalar_from_json, scalar_to_json};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RingFile {
    Monomial {
        vars: Vec<String>,
        relations: Vec<String>,
    },
    Table {
        m_basis: Vec<String>,
        table: Vec<Vec<Value>>,
    },
}

/// Reads a ring from a shorthand (`eps`, `t^3`, `x^2,xy,y^2`, `k`) or from
/// JSON (`{"vars","relations"}` or `{"m_basis","table"}`).
pub fn parse_ring(s: &str) -> Result<ArtinAlgebra> {
    let s = s.trim();
    if s.starts_with('{') {
        return ring_from_json(s);
    }
    match s {
        "k" | "K" | "𝕂" => return Ok(residue_field()),
        "eps" | "ε" => return build_truncated_poly(&["ε"], &["ε^2"]),
        _ => {}
    }
    let rels: Vec<&str> = s.split(',').map(str::trim).collect();
    let mut vars: Vec<String> = s
        .chars()
        .filter(|c| c.is_alphabetic())
        .map(|c| c.to_string())
        .collect();
    vars.sort();
    vars.dedup();
    if vars.is_empty() {
        return Err(Error::Parse(format!("ring {s:?} has no variables")));
    }
    let vr: Vec<&str> = vars.iter().map(String::as_str).collect();
    build_truncated_poly(&vr, &rels)
}

pub fn ring_from_json(text: &str) -> Result<ArtinAlgebra> {
    let f: RingFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("ring JSON: {e}")))?;
    match f {
        RingFile::Monomial { vars, relations } => {
            let v: Vec<&str> = vars.iter().map(String::as_str).collect();
            let r: Vec<&str> = relations.iter().map(String::as_str).collect();
            build_truncated_poly(&v, &r)
        }
        RingFile::Table { m_basis, table } => {
            let rows = table
                .iter()
                .map(|r| r.iter().map(scalar_from_json).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            ArtinAlgebra::from_table("custom", m_basis, rows)
        }
    }
}

/// Always emits the table form.
pub fn ring_to_json(a: &ArtinAlgebra) -> Value {
    let table: Vec<Vec<Value>> = a
        .dense_table()
        .iter()
        .map(|r| r.iter().map(scalar_to_json).collect())
        .collect();
    serde_json::json!({ "m_basis": a.labels(), "table": table })
}
