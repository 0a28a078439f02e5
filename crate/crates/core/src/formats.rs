//! On-disk JSON forms for matrices, distributions, ensembles, and POVMs,
//! shared by the command-line tool and the check harness.
//!
//! Reading goes through serde; writing goes through a small canonical
//! emitter that prints every float with 17 significant digits, so a written
//! file re-reads to bit-identical values and repeated writes are
//! byte-identical.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::probdist::{Distribution, Joint2, Joint3, MarkovChain3};
use crate::qentropy::{Ensemble, Povm};
use crate::qlinalg::{ComplexMatrix, DensityMatrix};

/// A complex matrix as `dims: [rows, cols]` plus row-major
/// `[re, im]` entry pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dims: [usize; 2],
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            dims: [m.rows(), m.cols()],
            entries: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let [rows, cols] = self.dims;
        if self.entries.len() != rows * cols {
            return Err(Error::InvalidFormat(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                self.entries.len()
            )));
        }
        for (i, &[re, im]) in self.entries.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::InvalidFormat(format!(
                    "non-finite entry at index {i}"
                )));
            }
        }
        let data = self
            .entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(rows, cols, data)
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        Self::from_matrix(rho.matrix())
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.to_matrix()?)
    }
}

/// A probability vector with optional outcome labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFile {
    pub probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl DistributionFile {
    pub fn from_distribution(d: &Distribution) -> Self {
        Self {
            probs: d.probs().to_vec(),
            labels: d.labels().map(<[String]>::to_vec),
        }
    }

    pub fn to_distribution(&self) -> Result<Distribution> {
        match &self.labels {
            Some(labels) => Distribution::with_labels(self.probs.clone(), labels.clone()),
            None => Distribution::new(self.probs.clone()),
        }
    }
}

/// A two-variable joint as nested rows, `probs[a][b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointFile {
    pub probs: Vec<Vec<f64>>,
}

impl JointFile {
    pub fn from_joint(j: &Joint2) -> Self {
        let (rows, cols) = j.dims();
        let probs = (0..rows)
            .map(|i| (0..cols).map(|jj| j.get(i, jj)).collect())
            .collect();
        Self { probs }
    }

    pub fn to_joint(&self) -> Result<Joint2> {
        Joint2::from_rows(self.probs.clone())
    }
}

/// A three-variable joint as `probs[a][b][c]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Joint3File {
    pub probs: Vec<Vec<Vec<f64>>>,
}

impl Joint3File {
    pub fn from_joint3(j: &Joint3) -> Self {
        let (da, db, dc) = j.dims();
        let probs = (0..da)
            .map(|a| {
                (0..db)
                    .map(|b| (0..dc).map(|c| j.get(a, b, c)).collect())
                    .collect()
            })
            .collect();
        Self { probs }
    }

    pub fn to_joint3(&self) -> Result<Joint3> {
        let da = self.probs.len();
        let db = self.probs.first().map_or(0, Vec::len);
        let dc = self
            .probs
            .first()
            .and_then(|p| p.first())
            .map_or(0, Vec::len);
        let mut flat = Vec::with_capacity(da * db * dc);
        for plane in &self.probs {
            if plane.len() != db {
                return Err(Error::InvalidFormat("ragged second axis".into()));
            }
            for row in plane {
                if row.len() != dc {
                    return Err(Error::InvalidFormat("ragged third axis".into()));
                }
                flat.extend_from_slice(row);
            }
        }
        Joint3::new(da, db, dc, flat)
    }
}

/// A three-step Markov chain: source weights over A and the two
/// row-stochastic hop matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkovFile {
    pub source: Vec<f64>,
    pub trans_ab: Vec<Vec<f64>>,
    pub trans_bc: Vec<Vec<f64>>,
}

impl MarkovFile {
    pub fn from_chain(c: &MarkovChain3) -> Self {
        Self {
            source: c.source().probs().to_vec(),
            trans_ab: c.trans_ab().iter().map(|r| r.probs().to_vec()).collect(),
            trans_bc: c.trans_bc().iter().map(|r| r.probs().to_vec()).collect(),
        }
    }

    pub fn to_chain(&self) -> Result<MarkovChain3> {
        MarkovChain3::from_rows(
            self.source.clone(),
            self.trans_ab.clone(),
            self.trans_bc.clone(),
        )
    }
}

/// An ensemble: preparation probabilities and one matrix per state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleFile {
    pub probs: Vec<f64>,
    pub states: Vec<MatrixFile>,
}

impl EnsembleFile {
    pub fn from_ensemble(e: &Ensemble) -> Self {
        Self {
            probs: e.probs().probs().to_vec(),
            states: e.states().iter().map(MatrixFile::from_density).collect(),
        }
    }

    pub fn to_ensemble(&self) -> Result<Ensemble> {
        let probs = Distribution::new(self.probs.clone())?;
        let states = self
            .states
            .iter()
            .map(MatrixFile::to_density)
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(probs, states)
    }
}

/// A POVM as a list of element matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PovmFile {
    pub elements: Vec<MatrixFile>,
}

impl PovmFile {
    pub fn from_povm(p: &Povm) -> Self {
        Self {
            elements: p.elements().iter().map(MatrixFile::from_matrix).collect(),
        }
    }

    pub fn to_povm(&self) -> Result<Povm> {
        let elements = self
            .elements
            .iter()
            .map(MatrixFile::to_matrix)
            .collect::<Result<Vec<_>>>()?;
        Povm::new(elements)
    }
}

/// Parses a JSON document into one of the file types, reporting syntax and
/// shape problems as [`Error::InvalidFormat`].
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::InvalidFormat(e.to_string()))
}

/// A JSON document with a fixed field order, rendered deterministically.
#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    Null,
    Bool(bool),
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    Array(Vec<JsonValue>),
    Object(Vec<(String, JsonValue)>),
}

impl JsonValue {
    /// Converts a serde value, keeping object key order.
    pub fn from_serde(v: &serde_json::Value) -> Self {
        match v {
            serde_json::Value::Null => JsonValue::Null,
            serde_json::Value::Bool(b) => JsonValue::Bool(*b),
            serde_json::Value::Number(n) => {
                if let Some(u) = n.as_u64() {
                    JsonValue::UInt(u)
                } else if let Some(i) = n.as_i64() {
                    JsonValue::Int(i)
                } else {
                    JsonValue::Float(n.as_f64().expect("JSON number fits f64"))
                }
            }
            serde_json::Value::String(s) => JsonValue::Str(s.clone()),
            serde_json::Value::Array(items) => {
                JsonValue::Array(items.iter().map(Self::from_serde).collect())
            }
            serde_json::Value::Object(map) => JsonValue::Object(
                map.iter()
                    .map(|(k, val)| (k.clone(), Self::from_serde(val)))
                    .collect(),
            ),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            JsonValue::Null => out.push_str("null"),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Int(i) => out.push_str(&i.to_string()),
            JsonValue::UInt(u) => out.push_str(&u.to_string()),
            JsonValue::Float(x) => {
                assert!(x.is_finite(), "only finite floats are written");
                // 17 significant digits: round-trips every f64 exactly.
                out.push_str(&format!("{x:.16e}"));
            }
            JsonValue::Str(s) => write_escaped(s, out),
            JsonValue::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            JsonValue::Object(fields) => {
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_escaped(key, out);
                    out.push(':');
                    value.write(out);
                }
                out.push('}');
            }
        }
    }
}

fn write_escaped(s: &str, out: &mut String) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Serializes any serde-serializable value through the canonical emitter.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("in-memory data serializes");
    JsonValue::from_serde(&v).render()
}
