//! Minimal intersection numbers per distance, genus and decomposition class.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IminError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed table: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IminKind {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IminEntry {
    pub kind: IminKind,
    pub value: usize,
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum IminValue {
    Exact(usize),
    LowerBound(usize),
    Unknown,
}

impl IminValue {
    /// The value usable as `i_min` in the width test, when exact.
    pub fn exact(self) -> Option<usize> {
        match self {
            IminValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

/// Key: distance, genus and `(F_6, F_8, ...)` with trailing zeros removed.
type Key = (usize, usize, Vec<usize>);

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IminTable {
    entries: BTreeMap<Key, IminEntry>,
}

fn trim(large: &[usize]) -> Vec<usize> {
    let end = large.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
    large[..end].to_vec()
}

fn parse_key(s: &str) -> Result<Key, IminError> {
    let bad = || IminError::Parse(format!("key {s:?} is not of the form \"d,g,[F6,F8,...]\""));
    let open = s.find('[').ok_or_else(bad)?;
    let close = s.rfind(']').ok_or_else(bad)?;
    let head: Vec<&str> = s[..open]
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .collect();
    if head.len() != 2 || close < open || !s[close + 1..].trim().is_empty() {
        return Err(bad());
    }
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
    let vector = s[open + 1..close]
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(num)
        .collect::<Result<Vec<_>, _>>()?;
    Ok((num(head[0])?, num(head[1])?, trim(&vector)))
}

fn format_key((d, g, v): &Key) -> String {
    let body: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{d},{g},[{}]", body.join(","))
}

impl IminTable {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Genus-2, distance-4 entries.
    pub fn builtin() -> Self {
        let mut t = Self::empty();
        let entry = |kind, value| IminEntry {
            kind,
            value,
            source: "builtin".into(),
        };
        for v in [[4, 0, 0, 0], [2, 1, 0, 0], [0, 2, 0, 0]] {
            t.insert(4, 2, &v, entry(IminKind::Exact, 12));
        }
        for v in [[0, 0, 0, 1], [1, 0, 1, 0]] {
            t.insert(4, 2, &v, entry(IminKind::LowerBound, 13));
        }
        t
    }

    pub fn insert(&mut self, d: usize, g: usize, large: &[usize], e: IminEntry) {
        self.entries.insert((d, g, trim(large)), e);
    }

    pub fn from_json(text: &str) -> Result<Self, IminError> {
        let raw: BTreeMap<String, IminEntry> =
            serde_json::from_str(text).map_err(|e| IminError::Parse(e.to_string()))?;
        let mut t = Self::empty();
        for (k, e) in raw {
            t.entries.insert(parse_key(&k)?, e);
        }
        Ok(t)
    }

    pub fn load(path: &Path) -> Result<Self, IminError> {
        let text = std::fs::read_to_string(path).map_err(|source| IminError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Adds the other table's entries, replacing equal keys.
    pub fn merge(&mut self, other: IminTable) {
        self.entries.extend(other.entries);
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m: BTreeMap<String, &IminEntry> = self
            .entries
            .iter()
            .map(|(k, e)| (format_key(k), e))
            .collect();
        serde_json::json!(m)
    }

    pub fn lookup(&self, d: usize, g: usize, large: &[usize]) -> IminValue {
        match self.entries.get(&(d, g, trim(large))) {
            Some(IminEntry {
                kind: IminKind::Exact,
                value,
                ..
            }) => IminValue::Exact(*value),
            Some(IminEntry {
                kind: IminKind::LowerBound,
                value,
                ..
            }) => IminValue::LowerBound(*value),
            None => IminValue::Unknown,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
