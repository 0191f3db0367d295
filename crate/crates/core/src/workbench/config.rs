use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::artin::{parse_ring, ArtinAlgebra};
use crate::dgla::fixtures::{all_fixture_names, fixture};
use crate::dgla::json::dgla_from_json;
use crate::dgla::Dgla;
use crate::error::{Error, Result};
use crate::gauge::DEFAULT_SEARCH_BUDGET;
use crate::kuranishi::DEFAULT_ORDER;

pub const ENV_POLY_ORDER: &str = "DGLA_POLY_ORDER";
pub const ENV_SEARCH_BUDGET: &str = "DGLA_SEARCH_BUDGET";

/// `builtin:NAME` or a path to a DGLA JSON file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DglaSource {
    Builtin(String),
    File(PathBuf),
}

impl FromStr for DglaSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(name) = s.strip_prefix("builtin:") {
            if !all_fixture_names().iter().any(|n| n == name) {
                return Err(Error::UnknownFixture(format!(
                    "{name} (known: {})",
                    all_fixture_names().join(", ")
                )));
            }
            return Ok(DglaSource::Builtin(name.to_string()));
        }
        let path = s.strip_prefix('@').unwrap_or(s);
        if path.is_empty() {
            return Err(Error::Parse("empty DGLA source".into()));
        }
        Ok(DglaSource::File(PathBuf::from(path)))
    }
}

impl fmt::Display for DglaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DglaSource::Builtin(n) => write!(f, "builtin:{n}"),
            DglaSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl DglaSource {
    pub fn load(&self) -> Result<Dgla> {
        match self {
            DglaSource::Builtin(n) => fixture(n),
            DglaSource::File(p) => {
                let text = read(p)?;
                dgla_from_json(&text).map_err(|e| e.context(p.display()))
            }
        }
    }
}

fn read(p: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

/// Shorthand (`t^3`), inline JSON, or `@file`.
pub fn load_ring(spec: &str) -> Result<ArtinAlgebra> {
    match spec.strip_prefix('@') {
        Some(p) => {
            let p = PathBuf::from(p);
            parse_ring(&read(&p)?).map_err(|e| e.context(p.display()))
        }
        None => parse_ring(spec),
    }
}

/// `@file` or inline JSON; `0` means the zero element.
pub fn load_payload(spec: &str) -> Result<Option<String>> {
    let spec = spec.trim();
    if spec == "0" {
        return Ok(None);
    }
    match spec.strip_prefix('@') {
        Some(p) => read(&PathBuf::from(p)).map(Some),
        None => Ok(Some(spec.to_string())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub poly_order: usize,
    pub search_budget: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            poly_order: DEFAULT_ORDER,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

impl Budgets {
    /// Defaults overridden by `DGLA_POLY_ORDER` / `DGLA_SEARCH_BUDGET`.
    pub fn from_env() -> Result<Self> {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Result<Self> {
        let mut b = Budgets::default();
        if let Some(v) = get(ENV_POLY_ORDER) {
            b.poly_order = positive(ENV_POLY_ORDER, &v)?;
        }
        if let Some(v) = get(ENV_SEARCH_BUDGET) {
            b.search_budget = positive(ENV_SEARCH_BUDGET, &v)?;
        }
        Ok(b)
    }

    pub fn check(&self) -> Result<()> {
        if self.poly_order == 0 || self.search_budget == 0 {
            return Err(Error::Precondition("budgets must be positive".into()));
        }
        Ok(())
    }
}

fn positive(key: &str, v: &str) -> Result<usize> {
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(Error::Parse(format!(
            "{key}={v:?}: expected a positive integer"
        ))),
    }
}

#[derive(Clone, Debug)]
pub struct WorkbenchConfig {
    pub seed: u64,
    pub budgets: Budgets,
    pub format: OutputFormat,
    /// Wall-clock timing breaks byte-identical output, so it is opt-in.
    pub timing: bool,
}

impl Default for WorkbenchConfig {
    fn default() -> Self {
        WorkbenchConfig {
            seed: 1,
            budgets: Budgets::default(),
            format: OutputFormat::Json,
            timing: false,
        }
    }
}
