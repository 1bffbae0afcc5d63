//! JSON encodings of the library types.
//!
//! Indices are 1-based on the wire. Scalars are written as strings (`"0"`,
//! `"-3/2"`, `"inf"`); integers are also accepted as JSON numbers on input.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};
use stiefel_core::arrangement::Covector;
use stiefel_core::bipartite::{BipartiteGraph, Matching, MatchingMultifield, Matroid};
use stiefel_core::linspace::{BoundedCell, DecompositionCertificate};
use stiefel_core::plucker::PluckerVector;
use stiefel_core::trop::{TropMatrix, TropScalar, TropVector};
use stiefel_core::{IndexSet, Rational};

/// Malformed input.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Domain(#[from] stiefel_core::Error),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn shape<T>(msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Shape(msg.into()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| FormatError::Shape(format!("missing field {key:?}")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    match v.as_u64() {
        Some(k) => Ok(k as usize),
        None => shape(format!("{what} must be a non-negative integer")),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| FormatError::Shape(format!("{what} must be an array")))
}

pub fn scalar_to_json(s: &TropScalar) -> Value {
    Value::String(s.to_string())
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn parse_scalar(v: &Value) -> Result<TropScalar> {
    match v {
        Value::Number(k) => match k.as_i64() {
            Some(k) => Ok(TropScalar::int(k)),
            None => shape(format!("{k} is not an integer; write fractions as \"p/q\"")),
        },
        Value::String(s) => {
            s.parse().map_err(|e: stiefel_core::trop::ParseScalarError| FormatError::Shape(e.to_string()))
        }
        _ => shape(format!("{v} is not a scalar")),
    }
}

/// `{"d": d, "n": n, "entries": [[...], ...]}`.
pub fn matrix_to_json(a: &TropMatrix) -> Value {
    let rows: Vec<Value> = (0..a.rows()).map(|i| Value::Array(a.row(i).iter().map(scalar_to_json).collect())).collect();
    json!({"d": a.rows(), "n": a.cols(), "entries": rows})
}

pub fn parse_matrix(v: &Value) -> Result<TropMatrix> {
    let d = usize_of(field(v, "d")?, "d")?;
    let n = usize_of(field(v, "n")?, "n")?;
    let rows = array(field(v, "entries")?, "entries")?;
    if rows.len() != d {
        return shape(format!("expected {d} rows, found {}", rows.len()));
    }
    let mut entries = Vec::with_capacity(d * n);
    for row in rows {
        let row = array(row, "a matrix row")?;
        if row.len() != n {
            return shape(format!("expected {n} entries per row, found {}", row.len()));
        }
        for e in row {
            entries.push(parse_scalar(e)?);
        }
    }
    Ok(TropMatrix::new(d, n, entries)?)
}

/// `{"entries": [...]}`.
pub fn vector_to_json(v: &TropVector) -> Value {
    json!({"entries": v.entries().iter().map(scalar_to_json).collect::<Vec<_>>()})
}

pub fn parse_vector(v: &Value) -> Result<TropVector> {
    let entries = array(field(v, "entries")?, "entries")?;
    Ok(TropVector::new(entries.iter().map(parse_scalar).collect::<Result<_>>()?))
}

pub fn points_to_json(x: &[Rational]) -> Value {
    Value::Array(x.iter().map(rational_to_json).collect())
}

pub fn set_to_json(s: IndexSet) -> Value {
    Value::Array(s.iter().map(|i| json!(i + 1)).collect())
}

fn parse_set(v: &Value, bound: usize) -> Result<IndexSet> {
    let mut s = IndexSet::EMPTY;
    for e in array(v, "an index set")? {
        let i = usize_of(e, "an index")?;
        if i == 0 || i > bound {
            return shape(format!("index {i} out of range 1..={bound}"));
        }
        s.insert(i - 1);
    }
    Ok(s)
}

/// `"1,3,4"` for the set `{1,3,4}`.
pub fn subset_key(s: IndexSet) -> String {
    s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn parse_subset_key(key: &str) -> Result<IndexSet> {
    let mut s = IndexSet::EMPTY;
    for part in key.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.parse::<usize>() {
            Ok(i) if (1..=64).contains(&i) => s.insert(i - 1),
            _ => return shape(format!("bad index {part:?} in subset key {key:?}")),
        }
    }
    Ok(s)
}

/// Map from sorted-subset strings to scalar strings, every `d`-subset present.
pub fn plucker_to_json(p: &PluckerVector) -> Value {
    let mut m = Map::new();
    for (s, v) in p.iter() {
        m.insert(subset_key(s), scalar_to_json(v));
    }
    Value::Object(m)
}

/// Accepts a bare map, or `{"d", "n", "values": map}` when the ground set
/// cannot be read off the keys. Missing keys are `∞`.
pub fn parse_plucker(v: &Value) -> Result<PluckerVector> {
    let (map, d, n) = match v.get("values") {
        Some(values) => (values, Some(usize_of(field(v, "d")?, "d")?), Some(usize_of(field(v, "n")?, "n")?)),
        None => (v, None, None),
    };
    let map = map.as_object().ok_or_else(|| FormatError::Shape("a Plücker vector must be an object".into()))?;
    let mut values = BTreeMap::new();
    for (k, e) in map {
        values.insert(parse_subset_key(k)?, parse_scalar(e)?);
    }
    let d = match d.or_else(|| values.keys().next().map(|s| s.len())) {
        Some(d) => d,
        None => return shape("empty Plücker vector"),
    };
    let n = n.unwrap_or_else(|| values.keys().flat_map(|s| s.iter()).max().map_or(0, |m| m + 1));
    if values.keys().any(|s| s.len() != d) {
        return shape(format!("every key must have {d} elements"));
    }
    Ok(PluckerVector::new(d, n, values)?)
}

pub fn edges_to_json(g: &BipartiteGraph) -> Value {
    Value::Array(g.edges().map(|(i, j)| json!([i + 1, j + 1])).collect())
}

/// `{"d", "n", "edges": [[i, j], ...]}`.
pub fn graph_to_json(g: &BipartiteGraph) -> Value {
    json!({"d": g.left_size(), "n": g.right_size(), "edges": edges_to_json(g)})
}

fn parse_edges(v: &Value) -> Result<Vec<(usize, usize)>> {
    array(v, "edges")?
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([i, j]) => {
                let (i, j) = (usize_of(i, "a row index")?, usize_of(j, "a column index")?);
                if i == 0 || j == 0 {
                    return shape("edges are 1-based");
                }
                Ok((i - 1, j - 1))
            }
            _ => shape(format!("{e} is not an edge [i, j]")),
        })
        .collect()
}

/// A graph, or the support of a matrix.
pub fn parse_graph(v: &Value) -> Result<BipartiteGraph> {
    if v.get("entries").is_some() {
        return Ok(parse_matrix(v)?.support());
    }
    let d = usize_of(field(v, "d")?, "d")?;
    let n = usize_of(field(v, "n")?, "n")?;
    Ok(BipartiteGraph::from_edges(d, n, &parse_edges(field(v, "edges")?)?)?)
}

/// Sorted basis lists.
pub fn matroid_to_json(m: &Matroid) -> Value {
    Value::Array(m.bases().iter().map(|b| set_to_json(*b)).collect())
}

/// One sorted row list per column.
pub fn covector_to_json(tau: &Covector) -> Value {
    Value::Array(tau.columns().into_iter().map(set_to_json).collect())
}

pub fn parse_covector(v: &Value, d: usize) -> Result<Covector> {
    let cols = array(v, "a covector")?.iter().map(|c| parse_set(c, d)).collect::<Result<Vec<_>>>()?;
    Ok(BipartiteGraph::from_columns(d, &cols))
}

pub fn matching_to_json(m: &Matching) -> Value {
    Value::Array(m.edges().map(|(i, j)| json!([i + 1, j + 1])).collect())
}

/// `{"d", "n", "fields": {"1,2": [[[1,1],[2,2]], ...], ...}}`.
pub fn multifield_to_json(lambda: &MatchingMultifield) -> Value {
    let mut fields = Map::new();
    for (s, ms) in lambda.iter() {
        fields.insert(subset_key(*s), Value::Array(ms.iter().map(matching_to_json).collect()));
    }
    json!({"d": lambda.left_size(), "n": lambda.right_size(), "fields": fields})
}

pub fn parse_multifield(v: &Value) -> Result<MatchingMultifield> {
    let d = usize_of(field(v, "d")?, "d")?;
    let n = usize_of(field(v, "n")?, "n")?;
    let map = field(v, "fields")?.as_object().ok_or_else(|| FormatError::Shape("fields must be an object".into()))?;
    let mut fields = BTreeMap::new();
    for (k, ms) in map {
        let mut set = BTreeSet::new();
        for m in array(ms, "a list of matchings")? {
            let mut cols = vec![usize::MAX; d];
            for (i, j) in parse_edges(m)? {
                if i >= d || cols[i] != usize::MAX {
                    return shape(format!("{m} does not match each row exactly once"));
                }
                cols[i] = j;
            }
            if cols.contains(&usize::MAX) {
                return shape(format!("{m} does not match each row exactly once"));
            }
            set.insert(Matching::new(cols)?);
        }
        fields.insert(parse_subset_key(k)?, set);
    }
    Ok(MatchingMultifield::new(d, n, fields)?)
}

pub fn certificate_to_json(c: &DecompositionCertificate) -> Value {
    json!({
        "covector": covector_to_json(&c.covector),
        "x": points_to_json(&c.x),
        "J": set_to_json(c.cols),
        "slack": points_to_json(&c.slack),
    })
}

pub fn bounded_cell_to_json(c: &BoundedCell) -> Value {
    json!({"covector": covector_to_json(&c.covector), "dim": c.dim, "point": points_to_json(&c.image_point)})
}
