//! JSON exchange for complexes.
//!
//! `{"vertices": [label, ...], "facets": [[vertex_index, ...], ...]}`

use std::path::Path;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::label::Label;
use crate::simplicial::SimplicialComplex;

pub fn complex_to_json(complex: &SimplicialComplex) -> Value {
    json!({
        "vertices": complex.vertices().iter().map(Label::to_json).collect::<Vec<_>>(),
        "facets": complex.facets(),
    })
}

fn malformed(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::MalformedFile {
        location: location.into(),
        message: message.into(),
    }
}

pub fn complex_from_json(value: &Value) -> Result<SimplicialComplex> {
    let obj = value.as_object().ok_or_else(|| malformed("$", "expected an object"))?;
    let verts = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("vertices", "missing or not an array"))?;
    let labels = verts
        .iter()
        .enumerate()
        .map(|(i, v)| {
            Label::from_json(v).map_err(|e| match e {
                Error::MalformedFile { message, .. } => malformed(format!("vertices[{i}]"), message),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for i in 1..labels.len() {
        if labels[..i].contains(&labels[i]) {
            return Err(malformed(
                format!("vertices[{i}]"),
                format!("duplicate vertex {}", labels[i]),
            ));
        }
    }
    let facets = obj
        .get("facets")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("facets", "missing or not an array"))?;
    let mut simplices = Vec::with_capacity(facets.len());
    for (i, f) in facets.iter().enumerate() {
        let f = f
            .as_array()
            .ok_or_else(|| malformed(format!("facets[{i}]"), "not an array"))?;
        if f.is_empty() {
            return Err(malformed(format!("facets[{i}]"), "empty facet"));
        }
        let mut s = Vec::with_capacity(f.len());
        for (j, x) in f.iter().enumerate() {
            let k = x
                .as_u64()
                .filter(|&k| (k as usize) < labels.len())
                .ok_or_else(|| malformed(format!("facets[{i}][{j}]"), format!("bad vertex index {x}")))?;
            s.push(labels[k as usize].clone());
        }
        simplices.push(s);
    }
    SimplicialComplex::new(labels, simplices)
}

pub fn write_complex(complex: &SimplicialComplex, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&complex_to_json(complex)).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_complex(path: &Path) -> Result<SimplicialComplex> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| malformed(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
    complex_from_json(&value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::tits_building;

    #[test]
    fn round_trip() {
        let t = tits_building(2, 3).unwrap().complex;
        let back = complex_from_json(&complex_to_json(&t)).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.facets(), t.facets());
    }

    #[test]
    fn malformed_index() {
        let v = json!({"vertices": [0, 1], "facets": [[0, 1], [1, 5]]});
        match complex_from_json(&v) {
            Err(Error::MalformedFile { location, .. }) => assert_eq!(location, "facets[1][1]"),
            other => panic!("{other:?}"),
        }
        let v = json!({"vertices": ["a", "a"], "facets": []});
        assert!(matches!(complex_from_json(&v), Err(Error::MalformedFile { .. })));
        assert!(complex_from_json(&json!({"facets": []})).is_err());
    }

    #[test]
    fn mixed_labels() {
        let v = json!({"vertices": ["b", 3, "a"], "facets": [[0, 1], [1, 2]]});
        let c = complex_from_json(&v).unwrap();
        assert_eq!(c.f_vector(), vec![3, 2]);
        assert_eq!(complex_from_json(&complex_to_json(&c)).unwrap(), c);
    }
}
