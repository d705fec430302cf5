//! Family files: `{"d": 1, "l": 3, "r": 3, "D": 2, "rows": [[poly, ..], ..]}`
//! with each `poly` in the term-list form of [`crate::polyalg::text`].
//! `D` is optional on input and always written on output.

use std::fmt;

use serde_json::{json, Value};

use super::PolyFamily;
use crate::polyalg::{text, ShiftContext};

/// A malformed family file. `line`/`column` are set for JSON syntax errors;
/// structural errors carry a path such as `rows[2][1]` in the message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        ParseError { message: message.into(), line: None, column: None }
    }

    pub fn from_json(e: &serde_json::Error) -> Self {
        ParseError { message: e.to_string(), line: Some(e.line()), column: Some(e.column()) }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) if !self.message.contains(" at line ") => {
                write!(f, "{} at line {} column {}", self.message, l, c)
            }
            _ => write!(f, "{}", self.message),
        }
    }
}

impl std::error::Error for ParseError {}

pub fn to_json(fam: &PolyFamily) -> Value {
    let rows: Vec<Value> = fam.rows().iter().map(|r| Value::Array(r.iter().map(text::to_json).collect())).collect();
    json!({
        "d": fam.context().dim(),
        "l": fam.num_cols(),
        "r": fam.num_rows(),
        "D": fam.degree_cap(),
        "rows": rows,
    })
}

/// Compact canonical text. Parsing it and writing again gives the same bytes.
pub fn to_canonical_string(fam: &PolyFamily) -> String {
    to_json(fam).to_string()
}

pub fn from_str(s: &str) -> Result<PolyFamily, ParseError> {
    let v: Value = serde_json::from_str(s).map_err(|e| ParseError::from_json(&e))?;
    from_json(&v)
}

pub fn from_json(v: &Value) -> Result<PolyFamily, ParseError> {
    let obj = v.as_object().ok_or_else(|| ParseError::new("family must be a JSON object"))?;
    let field = |name: &str| -> Result<usize, ParseError> {
        obj.get(name)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| ParseError::new(format!("field `{}` must be a nonnegative integer", name)))
    };
    let d = field("d")?;
    let l = field("l")?;
    let r = field("r")?;
    if d == 0 {
        return Err(ParseError::new("field `d` must be at least 1"));
    }
    if l == 0 {
        return Err(ParseError::new("field `l` must be at least 1"));
    }
    let cap = match obj.get("D") {
        None => None,
        Some(_) => Some(field("D")?),
    };
    let rows =
        obj.get("rows").and_then(Value::as_array).ok_or_else(|| ParseError::new("field `rows` must be an array"))?;
    if rows.len() != r {
        return Err(ParseError::new(format!("`r` is {} but `rows` has {} rows", r, rows.len())));
    }
    let mut parsed = Vec::with_capacity(r);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| ParseError::new(format!("rows[{}] must be an array", i + 1)))?;
        if row.len() != l {
            return Err(ParseError::new(format!("rows[{}] has {} entries, expected l = {}", i + 1, row.len(), l)));
        }
        let mut out = Vec::with_capacity(l);
        for (j, p) in row.iter().enumerate() {
            let p = text::from_json(p, d).map_err(|e| ParseError::new(format!("rows[{}][{}]: {}", i + 1, j + 1, e)))?;
            out.push(p);
        }
        parsed.push(out);
    }
    let fam = PolyFamily::new(ShiftContext::new(d), l, parsed).map_err(|e| ParseError::new(e.to_string()))?;
    Ok(match cap {
        Some(cap) => fam.with_degree_cap(cap),
        None => fam,
    })
}
