//! JSON matroid documents: parsing with field paths in errors, and emission.

use mxt_core::constructions::{
    catalog, direct_sum_all, parallel_extension, relax_circuit_hyperplane, series_extension, two_sum, CatalogName,
};
use mxt_core::matroid::Repr;
use mxt_core::{Caps, Error, Matroid, Subset};
use serde_json::{json, Map, Value};

use crate::error::CliError;

const TYPES: [&str; 11] = [
    "uniform",
    "graphic",
    "binary",
    "bases",
    "dual",
    "direct_sum",
    "two_sum",
    "catalog",
    "parallel_ext",
    "series_ext",
    "relax",
];

fn invalid(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{path}: {msg}"))
}

fn at(path: &str, e: Error) -> CliError {
    match e {
        Error::CapExceeded { .. } => CliError::Cap(format!("{path}: {e}")),
        _ => invalid(path, e),
    }
}

struct Node<'a> {
    path: String,
    obj: &'a Map<String, Value>,
}

impl<'a> Node<'a> {
    fn field(&self, key: &str) -> Result<&'a Value, CliError> {
        self.obj
            .get(key)
            .ok_or_else(|| invalid(&self.path, format!("missing field {key:?}")))
    }

    fn sub(&self, key: &str) -> String {
        format!("{}.{key}", self.path)
    }

    fn usize(&self, key: &str) -> Result<usize, CliError> {
        as_usize(self.field(key)?, &self.sub(key))
    }

    fn array(&self, key: &str) -> Result<&'a Vec<Value>, CliError> {
        self.field(key)?
            .as_array()
            .ok_or_else(|| invalid(&self.sub(key), "expected an array"))
    }

    fn matroid(&self, key: &str, caps: Caps) -> Result<Matroid, CliError> {
        parse_at(self.field(key)?, &self.sub(key), caps)
    }

    fn allow(&self, keys: &[&str]) -> Result<(), CliError> {
        for k in self.obj.keys() {
            if k != "type" && k != "name" && !keys.contains(&k.as_str()) {
                return Err(invalid(&self.sub(k), "unknown field"));
            }
        }
        Ok(())
    }
}

fn as_usize(v: &Value, path: &str) -> Result<usize, CliError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| invalid(path, "expected a nonnegative integer"))
}

fn as_set(v: &Value, path: &str) -> Result<Subset, CliError> {
    let items = v.as_array().ok_or_else(|| invalid(path, "expected an array of elements"))?;
    let mut s = Subset::default();
    for (i, item) in items.iter().enumerate() {
        let e = as_usize(item, &format!("{path}[{i}]"))?;
        if e >= 64 {
            return Err(invalid(&format!("{path}[{i}]"), "element index must be below 64"));
        }
        s = s.with(e);
    }
    Ok(s)
}

/// Parses a document read from disk.
pub fn parse_text(text: &str, caps: Caps) -> Result<Matroid, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("$: not valid JSON at line {}, column {}: {e}", e.line(), e.column())))?;
    parse(&value, caps)
}

pub fn parse(value: &Value, caps: Caps) -> Result<Matroid, CliError> {
    parse_at(value, "$", caps)
}

fn parse_at(value: &Value, path: &str, caps: Caps) -> Result<Matroid, CliError> {
    let obj = value
        .as_object()
        .ok_or_else(|| invalid(path, "expected a matroid object"))?;
    let node = Node {
        path: path.to_string(),
        obj,
    };
    let kind = node
        .field("type")?
        .as_str()
        .ok_or_else(|| invalid(&node.sub("type"), "expected a string"))?;
    let m = match kind {
        "uniform" => {
            node.allow(&["r", "n"])?;
            Matroid::uniform(node.usize("r")?, node.usize("n")?).map_err(|e| at(path, e))?
        }
        "graphic" => {
            node.allow(&["edges"])?;
            let mut edges = Vec::new();
            for (i, edge) in node.array("edges")?.iter().enumerate() {
                let p = format!("{}[{i}]", node.sub("edges"));
                let ends: Option<Vec<i64>> = edge
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .and_then(|a| a.iter().map(Value::as_i64).collect());
                match ends.as_deref() {
                    Some(&[u, v]) => edges.push((u, v)),
                    _ => return Err(invalid(&p, "expected an edge [u, v] of integers")),
                }
            }
            Matroid::graphic(&edges).map_err(|e| at(path, e))?
        }
        "binary" => {
            node.allow(&["rows"])?;
            let mut rows = Vec::new();
            for (i, row) in node.array("rows")?.iter().enumerate() {
                let p = format!("{}[{i}]", node.sub("rows"));
                let entries = row.as_array().ok_or_else(|| invalid(&p, "expected an array of 0/1"))?;
                let mut out = Vec::with_capacity(entries.len());
                for (j, v) in entries.iter().enumerate() {
                    match v.as_u64() {
                        Some(b @ (0 | 1)) => out.push(b as u8),
                        _ => return Err(invalid(&format!("{p}[{j}]"), "expected 0 or 1")),
                    }
                }
                rows.push(out);
            }
            if let Some(i) = rows.iter().position(|r| r.len() != rows[0].len()) {
                return Err(invalid(&format!("{}[{i}]", node.sub("rows")), "rows have different lengths"));
            }
            Matroid::binary(&rows).map_err(|e| at(path, e))?
        }
        "bases" => {
            node.allow(&["n", "bases"])?;
            let n = node.usize("n")?;
            let mut bases = Vec::new();
            for (i, b) in node.array("bases")?.iter().enumerate() {
                let p = format!("{}[{i}]", node.sub("bases"));
                let s = as_set(b, &p)?;
                if !s.fits(n) {
                    return Err(invalid(&p, format!("element outside the ground set of size {n}")));
                }
                bases.push(s);
            }
            Matroid::from_bases_capped(n, bases, caps.ground).map_err(|e| at(path, e))?
        }
        "dual" => {
            node.allow(&["inner"])?;
            node.matroid("inner", caps)?.dual()
        }
        "direct_sum" => {
            node.allow(&["parts"])?;
            let items = node.array("parts")?;
            if items.is_empty() {
                return Err(invalid(&node.sub("parts"), "expected at least one part"));
            }
            let parts = items
                .iter()
                .enumerate()
                .map(|(i, v)| parse_at(v, &format!("{}[{i}]", node.sub("parts")), caps))
                .collect::<Result<Vec<_>, _>>()?;
            direct_sum_all(&parts).map_err(|e| at(path, e))?
        }
        "two_sum" => {
            node.allow(&["left", "pl", "right", "pr"])?;
            let left = node.matroid("left", caps)?;
            let right = node.matroid("right", caps)?;
            let (pl, pr) = (node.usize("pl")?, node.usize("pr")?);
            if pl >= left.len() {
                return Err(invalid(&node.sub("pl"), format!("basepoint outside the left ground set of size {}", left.len())));
            }
            if pr >= right.len() {
                return Err(invalid(&node.sub("pr"), format!("basepoint outside the right ground set of size {}", right.len())));
            }
            two_sum(&left, pl, &right, pr).map_err(|e| at(path, e))?
        }
        "catalog" => {
            node.allow(&["name"])?;
            let name = node
                .field("name")?
                .as_str()
                .ok_or_else(|| invalid(&node.sub("name"), "expected a string"))?;
            let parsed: CatalogName = name.parse().map_err(|e| at(&node.sub("name"), e))?;
            catalog(parsed).map_err(|e| at(path, e))?
        }
        "parallel_ext" | "series_ext" => {
            node.allow(&["inner", "element"])?;
            let inner = node.matroid("inner", caps)?;
            let e = node.usize("element")?;
            if e >= inner.len() {
                return Err(invalid(&node.sub("element"), format!("element outside the ground set of size {}", inner.len())));
            }
            let built = if kind == "parallel_ext" {
                parallel_extension(&inner, e)
            } else {
                series_extension(&inner, e)
            };
            built.map_err(|err| at(path, err))?
        }
        "relax" => {
            node.allow(&["inner", "set"])?;
            let inner = node.matroid("inner", caps)?;
            let set = as_set(node.field("set")?, &node.sub("set"))?;
            if !set.fits(inner.len()) {
                return Err(invalid(&node.sub("set"), format!("element outside the ground set of size {}", inner.len())));
            }
            relax_circuit_hyperplane(&inner, set).map_err(|e| at(path, e))?
        }
        other => {
            return Err(invalid(
                &node.sub("type"),
                format!("unknown type {other:?}; expected one of {}", TYPES.join(", ")),
            ))
        }
    };
    let m = m.with_caps(caps);
    // Catalog documents carry their name inside the type-specific field.
    match obj.get("name") {
        Some(Value::String(name)) if kind != "catalog" => Ok(m.with_name(name.clone())),
        Some(Value::String(_)) | None => Ok(m),
        Some(_) => Err(invalid(&node.sub("name"), "expected a string")),
    }
}

fn elements(s: Subset) -> Value {
    Value::from(s.to_vec())
}

fn bases_document(m: &Matroid) -> Result<Value, CliError> {
    let bases = m.bases().map_err(|e| at("$", e))?;
    Ok(json!({
        "type": "bases",
        "n": m.len(),
        "bases": bases.into_iter().map(elements).collect::<Vec<_>>(),
    }))
}

/// A document that re-parses to a matroid isomorphic to `m` (identical, in
/// fact, element for element).
pub fn to_document(m: &Matroid) -> Result<Value, CliError> {
    let mut doc = match m.repr() {
        Repr::Uniform { rank } => json!({"type": "uniform", "r": rank, "n": m.len()}),
        Repr::Graphic(g) => json!({
            "type": "graphic",
            "edges": g.labelled.iter().map(|&(u, v)| json!([u, v])).collect::<Vec<_>>(),
        }),
        Repr::Binary(matrix) => json!({"type": "binary", "rows": matrix.to_rows()}),
        Repr::Bases(_) | Repr::Minor { .. } => bases_document(m)?,
        Repr::Dual(inner) => json!({"type": "dual", "inner": to_document(inner)?}),
        Repr::DirectSum(parts) => json!({
            "type": "direct_sum",
            "parts": parts.iter().map(to_document).collect::<Result<Vec<_>, _>>()?,
        }),
        Repr::TwoSum(sum) => json!({
            "type": "two_sum",
            "left": to_document(&sum.left)?,
            "pl": sum.left_base,
            "right": to_document(&sum.right)?,
            "pr": sum.right_base,
        }),
        Repr::ParallelExt { inner, base } => json!({
            "type": "parallel_ext",
            "inner": to_document(inner)?,
            "element": base,
        }),
    };
    if let (Some(name), Value::Object(obj)) = (m.name(), &mut doc) {
        obj.insert("name".into(), Value::from(name));
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mxt_core::constructions::are_isomorphic;

    fn doc(text: &str) -> Result<Matroid, CliError> {
        parse_text(text, Caps::default())
    }

    fn message(r: Result<Matroid, CliError>) -> String {
        match r {
            Err(CliError::Input(m)) => m,
            other => panic!("expected an input error, got {:?}", other.map(|m| m.len())),
        }
    }

    #[test]
    fn parses_the_basic_types() {
        let u = doc(r#"{"type":"uniform","r":2,"n":4}"#).unwrap();
        assert_eq!((u.len(), u.full_rank()), (4, 2));
        let k4 = doc(r#"{"type":"graphic","edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#).unwrap();
        assert_eq!(k4.bases().unwrap().len(), 16);
        let f = doc(r#"{"type":"binary","rows":[[1,0,1],[0,1,1]]}"#).unwrap();
        assert_eq!(f.bases().unwrap().len(), 3);
        let b = doc(r#"{"type":"bases","n":3,"bases":[[0,1],[0,2]],"name":"b"}"#).unwrap();
        assert_eq!(b.name(), Some("b"));
        assert!(b.is_loop(0) || b.is_coloop(0));
        let ts = doc(r#"{"type":"two_sum","left":{"type":"uniform","r":2,"n":4},"pl":0,"right":{"type":"uniform","r":2,"n":4},"pr":0}"#).unwrap();
        assert_eq!((ts.len(), ts.full_rank()), (6, 3));
    }

    #[test]
    fn parses_constructions() {
        let r = doc(r#"{"type":"relax","inner":{"type":"catalog","name":"MK4"},"set":[0,1,3]}"#).unwrap();
        assert_eq!(r.bases().unwrap().len(), 17);
        let p = doc(r#"{"type":"parallel_ext","inner":{"type":"uniform","r":1,"n":2},"element":0}"#).unwrap();
        assert!(p.same_rank_function(&Matroid::uniform(1, 3).unwrap()));
        let s = doc(r#"{"type":"series_ext","inner":{"type":"uniform","r":1,"n":2},"element":0}"#).unwrap();
        assert!(s.same_rank_function(&Matroid::uniform(2, 3).unwrap()));
        let d = doc(r#"{"type":"direct_sum","parts":[{"type":"uniform","r":1,"n":2},{"type":"dual","inner":{"type":"uniform","r":1,"n":2}}]}"#).unwrap();
        assert_eq!((d.len(), d.full_rank()), (4, 2));
    }

    #[test]
    fn errors_carry_paths() {
        let e = message(doc(r#"{"type":"direct_sum","parts":[{"type":"uniform","r":1,"n":2},{"type":"uniform","r":"x","n":2}]}"#));
        assert!(e.starts_with("$.parts[1].r:"), "{e}");
        let e = message(doc(r#"{"type":"two_sum","left":{"type":"uniform","r":2,"n":4},"pl":9,"right":{"type":"uniform","r":2,"n":4},"pr":0}"#));
        assert!(e.starts_with("$.pl:"), "{e}");
        let e = message(doc(r#"{"type":"bases","n":3,"bases":[[0,1],[2]]}"#));
        assert!(e.starts_with("$:") && e.contains("different sizes"), "{e}");
        let e = message(doc(r#"{"type":"bases","n":4,"bases":[[0,1],[2,3]]}"#));
        assert!(e.contains("exchange") || e.contains("invalid basis family"), "{e}");
        let e = message(doc(r#"{"type":"graphic","edges":[[1,2],[3]]}"#));
        assert!(e.starts_with("$.edges[1]:"), "{e}");
        let e = message(doc(r#"{"type":"uniform","r":2,"n":4,"extra":1}"#));
        assert!(e.starts_with("$.extra:"), "{e}");
        let e = message(doc(r#"{"type":"catalog","name":"K5"}"#));
        assert!(e.starts_with("$.name:"), "{e}");
        let e = message(doc(r#"{"type":"wat"}"#));
        assert!(e.starts_with("$.type:"), "{e}");
        let e = message(doc("[1,"));
        assert!(e.starts_with("$: not valid JSON"), "{e}");
    }

    #[test]
    fn cap_violations_are_reported_as_such() {
        let caps = Caps {
            ground: 5,
            polyhedral: 5,
            iso: 5,
        };
        let e = parse_text(r#"{"type":"relax","inner":{"type":"catalog","name":"MK4"},"set":[0,1,3]}"#, caps);
        assert!(matches!(e, Err(CliError::Cap(_))));
    }

    #[test]
    fn emitted_documents_round_trip() {
        for name in ["MK4", "W3", "Q6", "P6", "U(2,4)", "U24+2U24", "wheel(3)"] {
            let m = catalog(name.parse().unwrap()).unwrap();
            let back = parse(&to_document(&m).unwrap(), Caps::default()).unwrap();
            assert!(are_isomorphic(&m, &back).unwrap().is_some(), "{name}");
            assert_eq!(back.name(), m.name());
        }
        let m = doc(r#"{"type":"series_ext","inner":{"type":"catalog","name":"MK4"},"element":2}"#).unwrap();
        let back = parse(&to_document(&m).unwrap(), Caps::default()).unwrap();
        assert_eq!(back.bases().unwrap(), m.bases().unwrap());
    }
}
