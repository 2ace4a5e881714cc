//! JSON formats.
//!
//! Boxes: `{"parties": 2, "table": [[[[p]]]]}` nested `[x][y][a][b]`, or
//! `{"parties": 3, "table": ...}` nested `[x][y][z][a][b][c]`.
//! States: `{"dim": 4, "re": [[..]], "im": [[..]]}` (`im` optional).
//! Settings: `[[a0, a1], [b0, b1]]` (plus `[c0, c1]` for three parties), each a 3-vector.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::boxcore::{BipartiteBox, BoxError};
use crate::qstate::{DensityMatrix, MeasurementSettings, StateError};
use crate::tribox::TripartiteBox;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxJson {
    pub parties: u8,
    pub table: Value,
}

fn nest(flat: &[f64]) -> Value {
    if flat.len() == 1 {
        return serde_json::json!(flat[0]);
    }
    let h = flat.len() / 2;
    Value::Array(vec![nest(&flat[..h]), nest(&flat[h..])])
}

fn flatten(v: &Value, depth: usize, out: &mut Vec<f64>) -> Result<(), BoxError> {
    if depth == 0 {
        let x = v.as_f64().ok_or_else(|| BoxError::Shape(format!("expected a number, got {v}")))?;
        out.push(x);
        return Ok(());
    }
    let arr = v.as_array().ok_or_else(|| BoxError::Shape(format!("expected a 2-element array, got {v}")))?;
    if arr.len() != 2 {
        return Err(BoxError::Shape(format!("expected 2 entries, got {}", arr.len())));
    }
    for item in arr {
        flatten(item, depth - 1, out)?;
    }
    Ok(())
}

impl BoxJson {
    fn flat(&self, parties: u8) -> Result<Vec<f64>, BoxError> {
        if self.parties != parties {
            return Err(BoxError::Shape(format!("expected parties={parties}, got {}", self.parties)));
        }
        let mut out = Vec::with_capacity(64);
        flatten(&self.table, 2 * parties as usize, &mut out)?;
        Ok(out)
    }
}

impl From<BipartiteBox> for BoxJson {
    fn from(b: BipartiteBox) -> Self {
        BoxJson { parties: 2, table: nest(b.flat()) }
    }
}

impl From<TripartiteBox> for BoxJson {
    fn from(b: TripartiteBox) -> Self {
        BoxJson { parties: 3, table: nest(b.flat()) }
    }
}

impl TryFrom<BoxJson> for BipartiteBox {
    type Error = BoxError;
    fn try_from(j: BoxJson) -> Result<Self, BoxError> {
        let v = j.flat(2)?;
        BipartiteBox::new(v.try_into().expect("16 entries"))
    }
}

impl TryFrom<BoxJson> for TripartiteBox {
    type Error = BoxError;
    fn try_from(j: BoxJson) -> Result<Self, BoxError> {
        let v = j.flat(3)?;
        TripartiteBox::new(v.try_into().expect("64 entries"))
    }
}

/// A box of either size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AnyBox {
    Bi(BipartiteBox),
    Tri(TripartiteBox),
}

impl AnyBox {
    pub fn to_json(&self) -> BoxJson {
        match self {
            AnyBox::Bi(b) => (*b).into(),
            AnyBox::Tri(b) => (*b).into(),
        }
    }
}

pub fn parse_box(text: &str) -> Result<AnyBox, BoxError> {
    let j: BoxJson = serde_json::from_str(text).map_err(|e| BoxError::Shape(e.to_string()))?;
    match j.parties {
        2 => Ok(AnyBox::Bi(j.try_into()?)),
        3 => Ok(AnyBox::Tri(j.try_into()?)),
        n => Err(BoxError::Shape(format!("unsupported number of parties {n}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

pub fn parse_state(text: &str) -> Result<DensityMatrix, StateError> {
    let j: StateJson = serde_json::from_str(text).map_err(|e| StateError::InvalidState(e.to_string()))?;
    let n = j.dim;
    let rows_ok = |m: &Vec<Vec<f64>>| m.len() == n && m.iter().all(|r| r.len() == n);
    if !rows_ok(&j.re) || j.im.as_ref().is_some_and(|m| !rows_ok(m)) {
        return Err(StateError::InvalidState(format!("matrix is not {n}x{n}")));
    }
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let im = j.im.as_ref().map_or(0.0, |m| m[r][c]);
            entries.push(num_complex::Complex64::new(j.re[r][c], im));
        }
    }
    DensityMatrix::new(n, entries)
}

pub fn state_to_json(rho: &DensityMatrix) -> StateJson {
    let n = rho.dim();
    StateJson {
        dim: n,
        re: (0..n).map(|r| (0..n).map(|c| rho.get(r, c).re).collect()).collect(),
        im: Some((0..n).map(|r| (0..n).map(|c| rho.get(r, c).im).collect()).collect()),
    }
}

/// Accepts `{"dirs": [...]}` as written by serde, or the bare array.
pub fn parse_settings(text: &str) -> Result<MeasurementSettings, StateError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Form {
        Wrapped { dirs: Vec<[[f64; 3]; 2]> },
        Bare(Vec<[[f64; 3]; 2]>),
    }
    let v = match serde_json::from_str(text).map_err(|e| StateError::InvalidState(e.to_string()))? {
        Form::Wrapped { dirs } | Form::Bare(dirs) => dirs,
    };
    MeasurementSettings::new(v)
}
