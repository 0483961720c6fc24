//! Serialized form of character tables.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{CyclotomicNumber, Rational};

use super::ChartabError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub group: String,
    pub order: Vec<(u64, u32)>,
    pub exponent: u64,
    pub classes: Vec<ClassDoc>,
    #[serde(default)]
    pub ordinary: Vec<RowDoc>,
    #[serde(default)]
    pub brauer: BTreeMap<u64, BlockDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassDoc {
    pub name: String,
    pub order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
    #[serde(default)]
    pub power_maps: BTreeMap<u64, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDoc {
    pub id: String,
    pub values: BTreeMap<String, CycDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockDoc {
    pub classes: Vec<String>,
    pub rows: Vec<RowDoc>,
}

/// `Σ (num/den)·ζ_n^exp`; a bare integer is accepted as a rational value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CycDoc {
    Integer(i64),
    Terms { n: u64, terms: Vec<(i64, i64, i64)> },
}

impl CycDoc {
    pub fn to_value(&self) -> Result<CyclotomicNumber, ChartabError> {
        match self {
            CycDoc::Integer(v) => Ok(CyclotomicNumber::from_integer(*v)),
            CycDoc::Terms { n, terms } => {
                if *n == 0 {
                    return Err(ChartabError::Schema("cyclotomic value with n = 0".into()));
                }
                let mut ts = Vec::with_capacity(terms.len());
                for &(e, num, den) in terms {
                    if den == 0 {
                        return Err(ChartabError::Schema("zero denominator in value".into()));
                    }
                    ts.push((e, Rational::new(BigInt::from(num), BigInt::from(den))));
                }
                Ok(CyclotomicNumber::from_terms(*n, ts).minimize())
            }
        }
    }

    pub fn from_value(x: &CyclotomicNumber) -> Result<Self, ChartabError> {
        let mut terms = Vec::new();
        for (j, c) in x.terms() {
            let num = c.numer().to_i64();
            let den = c.denom().to_i64();
            match (num, den) {
                (Some(a), Some(b)) => terms.push((j as i64, a, b)),
                _ => return Err(ChartabError::Schema(format!("coefficient {c} exceeds 64 bits"))),
            }
        }
        Ok(CycDoc::Terms { n: x.conductor(), terms })
    }
}
