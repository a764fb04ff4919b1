//! Run configuration, from flags or a JSON file.

use std::path::Path;
use std::str::FromStr;

use etgrs_core::code::default_budget;
use etgrs_core::{EtgrsParams, FieldSpec, Mode};
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

/// An element as written by the user: an integer encoding or text such as
/// `g^3`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ElementText {
    Int(u64),
    Text(String),
}

impl ElementText {
    pub fn resolve(&self, f: &FieldSpec) -> etgrs_core::Result<u32> {
        match self {
            ElementText::Int(v) => {
                if *v >= f.q() as u64 {
                    return Err(etgrs_core::Error::ElementOutOfRange { value: *v, q: f.q() });
                }
                Ok(*v as u32)
            }
            ElementText::Text(s) => f.parse_element(s).map(|e| e.value()),
        }
    }
}

impl From<&str> for ElementText {
    fn from(s: &str) -> Self {
        ElementText::Text(s.trim().to_string())
    }
}

/// Splits `1,g^1,g^2` into element texts.
pub fn parse_list(text: &str) -> Vec<ElementText> {
    if text.trim().is_empty() {
        return Vec::new();
    }
    text.split(',').map(ElementText::from).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Table,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            _ => Err(CliError::usage(format!("unknown format '{s}' (expected table or json)"))),
        }
    }
}

/// Everything needed to build one parameter set. Flags override file
/// values field by field.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub alpha: Option<Vec<ElementText>>,
    pub v: Option<Vec<ElementText>>,
    pub eta: Option<ElementText>,
    pub delta: Option<ElementText>,
    pub mode: Option<String>,
    pub budget: Option<u64>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config {
            path: path.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: name.clone(),
            source,
        })?;
        Self::from_json(&text, &name)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn merge(self, other: RunConfig) -> RunConfig {
        RunConfig {
            field: other.field.or(self.field),
            n: other.n.or(self.n),
            k: other.k.or(self.k),
            alpha: other.alpha.or(self.alpha),
            v: other.v.or(self.v),
            eta: other.eta.or(self.eta),
            delta: other.delta.or(self.delta),
            mode: other.mode.or(self.mode),
            budget: other.budget.or(self.budget),
            format: other.format.or(self.format),
        }
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        let text = self.field.as_deref().ok_or_else(|| CliError::usage("missing --field"))?;
        FieldSpec::parse(text).map_err(|e| CliError::usage(format!("--field {text}: {e}")))
    }

    pub fn mode(&self) -> Result<Mode> {
        match &self.mode {
            None => Ok(Mode::Both),
            Some(m) => m.parse().map_err(|_| {
                CliError::usage(format!("unknown mode '{m}' (expected theorems, brute or both)"))
            }),
        }
    }

    pub fn budget(&self) -> u64 {
        self.budget.unwrap_or_else(default_budget)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    /// The parameter set with `η` and `δ` from the configuration.
    pub fn params(&self) -> Result<EtgrsParams> {
        let f = self.field_spec()?;
        let eta = self.eta.as_ref().ok_or_else(|| CliError::usage("missing --eta"))?;
        let delta = self.delta.as_ref().ok_or_else(|| CliError::usage("missing --delta"))?;
        let eta = eta.resolve(&f).map_err(|e| CliError::usage(format!("--eta: {e}")))?;
        let delta = delta.resolve(&f).map_err(|e| CliError::usage(format!("--delta: {e}")))?;
        self.params_with(eta, delta)
    }

    /// The parameter set with the given `η` and `δ`.
    pub fn params_with(&self, eta: u32, delta: u32) -> Result<EtgrsParams> {
        let f = self.field_spec()?;
        let k = self.k.ok_or_else(|| CliError::usage("missing --k"))?;
        let alpha = resolve_list(&f, "alpha", self.alpha.as_deref().ok_or_else(|| CliError::usage("missing --alpha"))?)?;
        if let Some(n) = self.n {
            if n != alpha.len() {
                return Err(CliError::usage(format!("--n is {n} but alpha has {} entries", alpha.len())));
            }
        }
        for (j, a) in alpha.iter().enumerate() {
            if let Some(i) = alpha[..j].iter().position(|b| b == a) {
                return Err(CliError::usage(format!(
                    "alpha entry {} repeats entry {} (value {a}); evaluation points must be distinct",
                    j + 1,
                    i + 1
                )));
            }
        }
        let v = match &self.v {
            Some(list) => resolve_list(&f, "v", list)?,
            None => vec![1; alpha.len()],
        };
        if v.len() != alpha.len() {
            return Err(CliError::usage(format!("v has {} entries, alpha has {}", v.len(), alpha.len())));
        }
        if let Some(i) = v.iter().position(|&x| x == 0) {
            return Err(CliError::usage(format!("v entry {} is zero; multipliers must be nonzero", i + 1)));
        }
        if eta == 0 {
            return Err(CliError::usage("eta must be nonzero"));
        }
        Ok(EtgrsParams::new(&f, k, alpha, v, eta, delta)?)
    }
}

fn resolve_list(f: &FieldSpec, name: &str, list: &[ElementText]) -> Result<Vec<u32>> {
    list.iter()
        .enumerate()
        .map(|(i, e)| e.resolve(f).map_err(|err| CliError::usage(format!("{name} entry {}: {err}", i + 1))))
        .collect()
}

/// An `η` or `δ` range for `search`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSet {
    /// Every field element (`η` skips zero).
    All,
    Nonzero,
    List(Vec<ElementText>),
}

impl FromStr for ElementSet {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "all" => ElementSet::All,
            "nonzero" => ElementSet::Nonzero,
            other => ElementSet::List(parse_list(other)),
        })
    }
}

impl ElementSet {
    pub fn resolve(&self, f: &FieldSpec, name: &str, allow_zero: bool) -> Result<Vec<u32>> {
        let values = match self {
            ElementSet::All if allow_zero => (0..f.q()).collect(),
            ElementSet::All | ElementSet::Nonzero => (1..f.q()).collect(),
            ElementSet::List(list) => resolve_list(f, name, list)?,
        };
        if values.is_empty() {
            return Err(CliError::usage(format!("the {name} set is empty")));
        }
        if !allow_zero && values.contains(&0) {
            return Err(CliError::usage(format!("the {name} set contains zero")));
        }
        Ok(values)
    }
}
