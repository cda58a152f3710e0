//! JSON form of modules: dimension maps keyed by vertex id, `B` keyed by
//! arrow name (`e` or `e*`), `I`/`J` keyed by vertex id, matrices as
//! row-major arrays of rational strings such as `"-3/2"`. Missing matrices
//! read as zero.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::field::{format_q, parse_q, Q};
use crate::matrix::Matrix;
use crate::quiver::{DoubledQuiver, Quiver};

use super::FramedModule;

pub fn matrix_to_json(m: &Matrix<Q>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(format_q(x))).collect()))
            .collect(),
    )
}

fn entry(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s).ok_or_else(|| Error::Json(format!("bad rational {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|x| Q::from_integer(x.into()))
            .ok_or_else(|| Error::Json(format!("non-integer number {n}; use a \"p/q\" string"))),
        other => Err(Error::Json(format!("matrix entry must be a string, got {other}"))),
    }
}

/// Parses a matrix of known shape. `[]` is accepted for any matrix with no
/// entries.
pub fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<Matrix<Q>> {
    let arr = v.as_array().ok_or_else(|| Error::Json("matrix must be an array of rows".into()))?;
    if arr.is_empty() && rows * cols == 0 {
        return Ok(Matrix::zeros(rows, cols));
    }
    if arr.len() != rows {
        return Err(Error::ShapeMismatch(format!("expected {rows} rows, got {}", arr.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in arr {
        let row = row.as_array().ok_or_else(|| Error::Json("matrix row must be an array".into()))?;
        if row.len() != cols {
            return Err(Error::ShapeMismatch(format!("expected {cols} columns, got {}", row.len())));
        }
        for x in row {
            data.push(entry(x)?);
        }
    }
    Ok(Matrix::from_vec(rows, cols, data))
}

pub fn dims_to_json(q: &Quiver, v: &[usize]) -> Value {
    let mut map = Map::new();
    for (x, &k) in v.iter().enumerate() {
        map.insert(q.vertex_id(x).to_string(), json!(k));
    }
    Value::Object(map)
}

/// Dimension map; vertices not listed get 0.
pub fn dims_from_json(q: &Quiver, v: Option<&Value>) -> Result<Vec<usize>> {
    let mut out = vec![0usize; q.vertex_count()];
    let Some(v) = v else { return Ok(out) };
    let map = v.as_object().ok_or_else(|| Error::Json("dimension vector must be an object".into()))?;
    for (id, k) in map {
        let x = q.vertex_index(id)?;
        out[x] = k
            .as_u64()
            .ok_or_else(|| Error::Json(format!("dimension at {id} must be a nonnegative integer")))? as usize;
    }
    Ok(out)
}

/// Matrices keyed by vertex id.
pub fn vertex_matrices_to_json(q: &Quiver, ms: &[Matrix<Q>]) -> Value {
    let mut map = Map::new();
    for (x, m) in ms.iter().enumerate() {
        map.insert(q.vertex_id(x).to_string(), matrix_to_json(m));
    }
    Value::Object(map)
}

/// Matrices keyed by vertex id with the given shapes; missing entries are
/// `default(x)`.
pub fn vertex_matrices_from_json(
    q: &Quiver,
    v: Option<&Value>,
    shape: impl Fn(usize) -> (usize, usize),
    default: impl Fn(usize) -> Matrix<Q>,
) -> Result<Vec<Matrix<Q>>> {
    let empty = Map::new();
    let map = match v {
        None => &empty,
        Some(v) => v.as_object().ok_or_else(|| Error::Json("expected an object keyed by vertex".into()))?,
    };
    for id in map.keys() {
        q.vertex_index(id)?;
    }
    (0..q.vertex_count())
        .map(|x| match map.get(q.vertex_id(x)) {
            Some(m) => {
                let (r, c) = shape(x);
                matrix_from_json(m, r, c)
            }
            None => Ok(default(x)),
        })
        .collect()
}

pub fn module_to_json(d: &DoubledQuiver, m: &FramedModule<Q>) -> Value {
    let q = d.base();
    let mut b = Map::new();
    for (h, mat) in m.b.iter().enumerate() {
        b.insert(d.arrow_name(h), matrix_to_json(mat));
    }
    json!({
        "v": dims_to_json(q, &m.v),
        "w": dims_to_json(q, &m.w),
        "B": Value::Object(b),
        "I": vertex_matrices_to_json(q, &m.i),
        "J": vertex_matrices_to_json(q, &m.j),
    })
}

pub fn module_from_json(d: &DoubledQuiver, value: &Value) -> Result<FramedModule<Q>> {
    let q = d.base();
    let obj = value.as_object().ok_or_else(|| Error::Json("module must be an object".into()))?;
    let v = dims_from_json(q, obj.get("v"))?;
    let w = dims_from_json(q, obj.get("w"))?;
    let mut m = FramedModule::zero(d, v.clone(), w.clone());
    if let Some(bv) = obj.get("B") {
        let map = bv.as_object().ok_or_else(|| Error::Json("B must be an object keyed by arrow".into()))?;
        for (name, mat) in map {
            let h = d
                .arrow_by_name(name)
                .ok_or_else(|| Error::Json(format!("unknown arrow {name:?}")))?;
            let a = &d.arrows()[h];
            m.b[h] = matrix_from_json(mat, v[a.tgt], v[a.src])?;
        }
    }
    m.i = vertex_matrices_from_json(q, obj.get("I"), |x| (v[x], w[x]), |x| Matrix::zeros(v[x], w[x]))?;
    m.j = vertex_matrices_from_json(q, obj.get("J"), |x| (w[x], v[x]), |x| Matrix::zeros(w[x], v[x]))?;
    Ok(m)
}
