//! JSON documents written by the CLI.
//!
//! A series is `{"variable":"t","trunc_order":D,"coefficients":["c0",...,"cD"]}`
//! with coefficients as decimal strings so arbitrary precision survives.

use hnpoly_core::pseries::TruncatedSeries;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("unsupported variable {0:?}, expected \"t\"")]
    Variable(String),
    #[error("trunc_order {order} needs {} coefficients, found {found}", order + 1)]
    Length { order: usize, found: usize },
    #[error("coefficient {index} is not a decimal integer: {value:?}")]
    Coefficient { index: usize, value: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub variable: String,
    pub trunc_order: usize,
    pub coefficients: Vec<String>,
}

impl SeriesJson {
    pub fn from_series(s: &TruncatedSeries) -> Self {
        Self {
            variable: "t".into(),
            trunc_order: s.order(),
            coefficients: s.coeffs().iter().map(BigInt::to_string).collect(),
        }
    }

    pub fn to_series(&self) -> Result<TruncatedSeries, FormatError> {
        if self.variable != "t" {
            return Err(FormatError::Variable(self.variable.clone()));
        }
        if self.coefficients.len() != self.trunc_order + 1 {
            return Err(FormatError::Length {
                order: self.trunc_order,
                found: self.coefficients.len(),
            });
        }
        let coeffs = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(index, c)| {
                c.parse::<BigInt>().map_err(|_| FormatError::Coefficient {
                    index,
                    value: c.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries::from_coeffs(coeffs).expect("length checked above"))
    }
}

/// Degree, Euler characteristic and vanishing data of an attested polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyReport {
    pub fixed_det: bool,
    pub degree: usize,
    pub euler_characteristic: String,
    pub vanishing_order_at_minus_one: usize,
    /// Inclusive exponent range checked to be zero.
    pub zero_window: [usize; 2],
}

/// Output of `stack`, `ss` and `stable`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub command: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    pub g: u32,
    #[serde(flatten)]
    pub series: SeriesJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recursive: Option<SeriesJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PolyReport>,
}

/// Output of `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub command: String,
    pub suite: String,
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub g: u32,
    pub trunc_order: usize,
    pub cases: u64,
    pub checks: u64,
    pub status: String,
    pub counterexample: Option<String>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_series_document(text: &str) -> Result<(SeriesDocument, TruncatedSeries), FormatError> {
    let doc: SeriesDocument = serde_json::from_str(text)?;
    let series = doc.series.to_series()?;
    Ok((doc, series))
}
