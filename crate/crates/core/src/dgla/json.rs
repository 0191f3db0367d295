//! JSON encoding of DGLAs (schema documented in `docs/dgla-schema.md`).

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::algebra::{Dgla, DglaBuilder};
use crate::error::{Error, Result};
use crate::linalg::scalar::{scalar_from_json, scalar_to_json};
use crate::linalg::Matrix;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DglaFile {
    schema_version: u32,
    #[serde(default)]
    name: Option<String>,
    window: [i32; 2],
    #[serde(default)]
    truncated_above: bool,
    #[serde(default)]
    dims: BTreeMap<String, usize>,
    #[serde(default)]
    labels: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    differential: BTreeMap<String, Vec<Vec<Value>>>,
    #[serde(default)]
    bracket: Vec<BracketBlock>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketBlock {
    i: i32,
    j: i32,
    entries: Vec<[Value; 5]>,
}

fn degree_key(s: &str) -> Result<i32> {
    s.parse()
        .map_err(|_| Error::Parse(format!("degree key {s:?} is not an integer")))
}

pub fn dgla_from_json(text: &str) -> Result<Dgla> {
    let f: DglaFile = serde_json::from_str(text)?;
    if f.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            f.schema_version
        )));
    }
    let [min, max] = f.window;
    let mut b = DglaBuilder::new(f.name.unwrap_or_else(|| "custom".into()), min, max)
        .truncated_above(f.truncated_above);
    let mut dims: BTreeMap<i32, usize> = BTreeMap::new();
    for (k, v) in &f.dims {
        dims.insert(degree_key(k)?, *v);
    }
    for (k, v) in &f.labels {
        let d = degree_key(k)?;
        if let Some(n) = dims.get(&d) {
            if *n != v.len() {
                return Err(Error::Parse(format!(
                    "labels.{k}: {} labels but dims.{k} = {n}",
                    v.len()
                )));
            }
        }
        dims.insert(d, v.len());
        b.set_degree(d, v.clone());
    }
    for (&d, &n) in &dims {
        if !f.labels.contains_key(&d.to_string()) {
            b.set_degree(d, (0..n).map(|i| format!("v{d}_{i}")).collect());
        }
    }
    for (k, rows) in &f.differential {
        let d = degree_key(k)?;
        let cols = dims.get(&d).copied().unwrap_or(0);
        let mut parsed = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Parse(format!(
                    "differential.{k}[{r}]: {} entries, expected {cols}",
                    row.len()
                )));
            }
            parsed.push(
                row.iter()
                    .map(scalar_from_json)
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let m = if parsed.is_empty() {
            Matrix::zeros(0, cols)
        } else {
            Matrix::from_rows(parsed, cols)?
        };
        b.set_differential(d, m);
    }
    for (n, blk) in f.bracket.iter().enumerate() {
        for (e, entry) in blk.entries.iter().enumerate() {
            let idx = |v: &Value, what: &str| {
                v.as_u64().map(|x| x as usize).ok_or_else(|| {
                    Error::Parse(format!(
                        "bracket[{n}].entries[{e}]: {what} must be an index"
                    ))
                })
            };
            let k = idx(&entry[0], "k")?;
            let l = idx(&entry[1], "l")?;
            let m = idx(&entry[2], "m")?;
            let num = scalar_from_json(&entry[3])?;
            let den = scalar_from_json(&entry[4])?;
            if den.is_zero() {
                return Err(Error::Parse(format!(
                    "bracket[{n}].entries[{e}]: zero denominator"
                )));
            }
            b.add_bracket(blk.i, k, blk.j, l, m, num / den);
        }
    }
    b.build()
}

pub fn dgla_to_json(l: &Dgla) -> Value {
    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut differential = BTreeMap::new();
    for d in l.space().degrees() {
        dims.insert(d.to_string(), l.dim(d));
        labels.insert(d.to_string(), l.space().labels(d).to_vec());
        if let Some(m) = l.diff_block(d) {
            let rows: Vec<Vec<Value>> = (0..m.rows())
                .map(|r| m.row(r).iter().map(scalar_to_json).collect())
                .collect();
            differential.insert(d.to_string(), rows);
        }
    }
    let mut bracket = Vec::new();
    for ((i, j), table) in l.bracket_table() {
        let dj = l.dim(*j);
        let mut entries = Vec::new();
        for (idx, v) in table.iter().enumerate() {
            for (m, c) in v {
                entries.push([
                    Value::from(idx / dj),
                    Value::from(idx % dj),
                    Value::from(*m),
                    scalar_to_json(&c.numer().clone().into()),
                    scalar_to_json(&c.denom().clone().into()),
                ]);
            }
        }
        if !entries.is_empty() {
            bracket.push(BracketBlock {
                i: *i,
                j: *j,
                entries,
            });
        }
    }
    let f = DglaFile {
        schema_version: SCHEMA_VERSION,
        name: Some(l.name().to_string()),
        window: [l.min(), l.max()],
        truncated_above: l.truncated_above(),
        dims,
        labels,
        differential,
        bracket,
    };
    serde_json::to_value(f).expect("serializable")
}
