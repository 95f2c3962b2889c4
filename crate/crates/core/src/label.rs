//! Vertex labels.
//!
//! A label is an opaque, totally ordered, hashable identifier. The derived
//! order (variant first, then lexicographic content) is the vertex order
//! used for every orientation sign in the crate.

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Int(i64),
    Str(String),
    /// Coordinates of a vector (residues mod q, or integers).
    Vector(Vec<i64>),
    /// Canonical basis rows of a subspace (RREF) or submodule (HNF).
    Subspace(Vec<Vec<i64>>),
    /// A finite set of labels, kept sorted and without duplicates.
    Set(Vec<Label>),
}

const RESERVED: [&str; 4] = ["vector:", "subspace:", "set:", "str:"];

impl Label {
    pub fn set<I: IntoIterator<Item = Label>>(items: I) -> Label {
        let mut v: Vec<Label> = items.into_iter().collect();
        v.sort();
        v.dedup();
        Label::Set(v)
    }

    pub fn as_set(&self) -> Option<&[Label]> {
        match self {
            Label::Set(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[i64]> {
        match self {
            Label::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Label::Int(i) => Some(*i),
            _ => None,
        }
    }

    /// JSON form used by the complex exchange format: integers stay numbers,
    /// everything else becomes a tagged string.
    pub fn to_json(&self) -> Value {
        match self {
            Label::Int(i) => Value::from(*i),
            Label::Str(s) => {
                if RESERVED.iter().any(|p| s.starts_with(p)) {
                    Value::from(format!("str:{s}"))
                } else {
                    Value::from(s.clone())
                }
            }
            Label::Vector(v) => Value::from(format!("vector:{}", join(v, ","))),
            Label::Subspace(rows) => Value::from(format!(
                "subspace:{}",
                rows.iter().map(|r| join(r, ",")).collect::<Vec<_>>().join("|")
            )),
            Label::Set(items) => {
                let inner: Vec<Value> = items.iter().map(Label::to_json).collect();
                Value::from(format!("set:{}", Value::Array(inner)))
            }
        }
    }

    pub fn from_json(value: &Value) -> Result<Label> {
        let bad = |m: String| Error::MalformedFile {
            location: "label".into(),
            message: m,
        };
        match value {
            Value::Number(n) => n
                .as_i64()
                .map(Label::Int)
                .ok_or_else(|| bad(format!("label {n} is not a 64-bit integer"))),
            Value::String(s) => {
                if let Some(rest) = s.strip_prefix("str:") {
                    Ok(Label::Str(rest.to_string()))
                } else if let Some(rest) = s.strip_prefix("vector:") {
                    parse_ints(rest).map(Label::Vector).map_err(bad)
                } else if let Some(rest) = s.strip_prefix("subspace:") {
                    if rest.is_empty() {
                        return Ok(Label::Subspace(Vec::new()));
                    }
                    rest.split('|')
                        .map(parse_ints)
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map(Label::Subspace)
                        .map_err(bad)
                } else if let Some(rest) = s.strip_prefix("set:") {
                    let inner: Value = serde_json::from_str(rest).map_err(|e| bad(format!("set label: {e}")))?;
                    let Value::Array(items) = inner else {
                        return Err(bad("set label must wrap an array".into()));
                    };
                    let labels = items.iter().map(Label::from_json).collect::<Result<Vec<_>>>()?;
                    Ok(Label::set(labels))
                } else {
                    Ok(Label::Str(s.clone()))
                }
            }
            other => Err(bad(format!("unsupported label {other}"))),
        }
    }
}

fn join(v: &[i64], sep: &str) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(sep)
}

fn parse_ints(s: &str) -> std::result::Result<Vec<i64>, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad coordinate {t:?}: {e}"))
        })
        .collect()
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Str(s) => write!(f, "{s}"),
            Label::Vector(v) => write!(f, "({})", join(v, ",")),
            Label::Subspace(rows) => {
                write!(f, "<")?;
                for (k, r) in rows.iter().enumerate() {
                    if k > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{}", join(r, ","))?;
                }
                write!(f, ">")
            }
            Label::Set(items) => {
                write!(f, "{{")?;
                for (k, l) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{l}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl From<i64> for Label {
    fn from(i: i64) -> Self {
        Label::Int(i)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Str(s.to_string())
    }
}
