//! JSON form of a matrix: `{"rows": n, "cols": m, "data": [[re, im], ...]}`
//! in row-major order. A bare 2-D array of reals is accepted on input.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matcore::{Mat, C64};

#[derive(Serialize, Deserialize)]
struct Dense {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyMatrix {
    Dense(Dense),
    Real(Vec<Vec<f64>>),
}

impl AnyMatrix {
    fn into_mat(self) -> Result<Mat> {
        match self {
            AnyMatrix::Dense(d) => {
                let data = d.data.into_iter().map(|[re, im]| C64::new(re, im)).collect();
                Mat::from_row_major(d.rows, d.cols, data)
            }
            AnyMatrix::Real(rows) => {
                let cols = rows.first().map_or(0, Vec::len);
                if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
                    return Err(Error::Parse(format!(
                        "ragged array: expected {cols} columns, found a row with {}",
                        bad.len()
                    )));
                }
                let flat: Vec<f64> = rows.concat();
                Mat::from_real(rows.len(), cols, &flat)
            }
        }
    }
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Dense {
            rows: self.rows(),
            cols: self.cols(),
            data: self.to_row_major().iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        AnyMatrix::deserialize(d)?
            .into_mat()
            .map_err(serde::de::Error::custom)
    }
}

/// Parses either JSON form.
pub fn parse_matrix(text: &str) -> Result<Mat> {
    let any: AnyMatrix =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    any.into_mat()
}

/// Canonical JSON text; [`parse_matrix`] reads it back bit-exactly.
pub fn write_matrix(m: &Mat) -> String {
    serde_json::to_string(m).expect("finite entries serialize")
}
