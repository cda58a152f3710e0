use std::io::Read;

use qfold_core::corpus::{self, CorpusEntry};
use qfold_core::quiver::QuiverJson;
use qfold_core::split::dimension_vector;
use qfold_core::{DiagramAutomorphism, Quiver};
use serde_json::Value;

use crate::args::Source;

pub type InputResult<T> = std::result::Result<T, String>;

fn read_text(path: &str) -> InputResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("cannot read standard input: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn from_entry(e: CorpusEntry) -> (String, Quiver, DiagramAutomorphism) {
    (e.name, e.quiver, e.automorphism)
}

fn quiver_from_value(v: &Value) -> InputResult<(Quiver, DiagramAutomorphism)> {
    let qj: QuiverJson = serde_json::from_value(v.clone()).map_err(|e| format!("quiver: {e}"))?;
    qj.to_quiver().map_err(|e| e.to_string())
}

fn corpus_quiver(name: &str) -> InputResult<(Quiver, DiagramAutomorphism)> {
    let e = corpus::load(name).map_err(|e| e.to_string())?;
    Ok((e.quiver, e.automorphism))
}

/// A quiver with automorphism, from `--corpus` or a quiver JSON file.
pub fn load_quiver(src: &Source) -> InputResult<(String, Quiver, DiagramAutomorphism)> {
    match (&src.corpus, &src.input) {
        (Some(name), None) => corpus::load(name).map(from_entry).map_err(|e| e.to_string()),
        (None, Some(path)) => {
            let text = read_text(path)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
            let (q, a) = quiver_from_value(&value)?;
            Ok((path.clone(), q, a))
        }
        (Some(_), Some(_)) => Err("give either --corpus or --input, not both".into()),
        (None, None) => Err("one of --corpus or --input is required".into()),
    }
}

/// A module document. The quiver is its `quiver` object, or the entry
/// named by its `corpus` field, or the one given by `--corpus`.
pub struct Document {
    pub quiver: Quiver,
    pub automorphism: DiagramAutomorphism,
    pub body: Value,
}

pub fn load_document(src: &Source) -> InputResult<Document> {
    let body = match &src.input {
        Some(path) => {
            let text = read_text(path)?;
            serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?
        }
        None => Value::Object(Default::default()),
    };
    if !body.is_object() {
        return Err("the document must be a JSON object".into());
    }
    let (quiver, automorphism) = if let Some(name) = &src.corpus {
        corpus_quiver(name)?
    } else if let Some(qv) = body.get("quiver") {
        quiver_from_value(qv)?
    } else if let Some(name) = body.get("corpus").and_then(Value::as_str) {
        corpus_quiver(name)?
    } else {
        return Err("no quiver: pass --corpus or put \"quiver\" or \"corpus\" in the document".into());
    };
    Ok(Document { quiver, automorphism, body })
}

/// `1,0,2` in vertex order, or `id=k` pairs with missing vertices zero.
pub fn parse_dims(q: &Quiver, text: &str) -> InputResult<Vec<u64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(vec![0; q.vertex_count()]);
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.contains('=')) {
        let mut pairs = Vec::new();
        for p in parts {
            let (id, k) = p.split_once('=').ok_or_else(|| format!("expected id=value, got {p:?}"))?;
            let k: u64 = k.trim().parse().map_err(|_| format!("bad dimension {k:?}"))?;
            pairs.push((id.trim().to_string(), k));
        }
        dimension_vector(q, &pairs).map_err(|e| e.to_string())
    } else {
        if parts.len() != q.vertex_count() {
            return Err(format!("expected {} entries, got {}", q.vertex_count(), parts.len()));
        }
        parts
            .iter()
            .map(|p| p.parse::<u64>().map_err(|_| format!("bad dimension {p:?}")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qfold_core::quiver::families::type_a;

    #[test]
    fn dims_forms() {
        let q = type_a(3);
        assert_eq!(parse_dims(&q, "1,0,2").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_dims(&q, "3=2").unwrap(), vec![0, 0, 2]);
        assert_eq!(parse_dims(&q, "").unwrap(), vec![0, 0, 0]);
        assert!(parse_dims(&q, "1,0").is_err());
        assert!(parse_dims(&q, "9=1").is_err());
        assert!(parse_dims(&q, "1,x,0").is_err());
    }
}
