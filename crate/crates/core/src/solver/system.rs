use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SolverError;

/// `coeffs · x = constant`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equality {
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

/// `constant + coeffs · x ≡ 0 (mod modulus)`, and `≥ 0` when `nonneg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<i64>,
    pub constant: i64,
    pub modulus: u64,
    pub nonneg: bool,
}

impl Row {
    pub fn eval(&self, x: &[i64]) -> i128 {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant as i128, |acc, (&a, &v)| acc + a as i128 * v as i128)
    }

    pub fn admits(&self, x: &[i64]) -> bool {
        let v = self.eval(x);
        (!self.nonneg || v >= 0) && v.rem_euclid(self.modulus as i128) == 0
    }
}

impl Equality {
    pub fn holds(&self, x: &[i64]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(0i128, |acc, (&a, &v)| acc + a as i128 * v as i128);
        lhs == self.constant as i128
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLinearSystem {
    pub variables: Vec<String>,
    pub equalities: Vec<Equality>,
    pub rows: Vec<Row>,
    pub bounds: Vec<Option<(i64, i64)>>,
}

impl IntegerLinearSystem {
    pub fn new(variables: Vec<String>) -> Self {
        let n = variables.len();
        IntegerLinearSystem { variables, equalities: Vec::new(), rows: Vec::new(), bounds: vec![None; n] }
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn add_equality(&mut self, coeffs: Vec<i64>, constant: i64) -> &mut Self {
        assert_eq!(coeffs.len(), self.dim());
        self.equalities.push(Equality { coeffs, constant });
        self
    }

    pub fn add_row(&mut self, coeffs: Vec<i64>, constant: i64, modulus: u64, nonneg: bool) -> &mut Self {
        assert_eq!(coeffs.len(), self.dim());
        assert!(modulus >= 1, "modulus must be positive");
        self.rows.push(Row { coeffs, constant, modulus, nonneg });
        self
    }

    pub fn set_bound(&mut self, var: usize, lo: i64, hi: i64) -> &mut Self {
        self.bounds[var] = Some((lo, hi));
        self
    }

    /// Bound every variable to `[-m, m]`, intersecting existing bounds.
    pub fn with_max_abs(mut self, m: i64) -> Self {
        for b in &mut self.bounds {
            *b = Some(match *b {
                Some((lo, hi)) => (lo.max(-m), hi.min(m)),
                None => (-m, m),
            });
        }
        self
    }

    pub fn has_bounds(&self) -> bool {
        self.bounds.iter().any(Option::is_some)
    }

    /// Whether `x` satisfies every equality, row and bound.
    pub fn admits(&self, x: &[i64]) -> bool {
        x.len() == self.dim()
            && self.equalities.iter().all(|e| e.holds(x))
            && self.rows.iter().all(|r| r.admits(x))
            && self
                .bounds
                .iter()
                .zip(x)
                .all(|(b, &v)| b.map_or(true, |(lo, hi)| lo <= v && v <= hi))
    }

    pub fn from_doc(doc: &RawSystemDoc) -> Result<Self, SolverError> {
        let mut sys = IntegerLinearSystem::new(doc.variables.clone());
        let idx: BTreeMap<&str, usize> =
            doc.variables.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if idx.len() != doc.variables.len() {
            return Err(SolverError::Parse("duplicate variable name".into()));
        }
        if doc.modulus == 0 {
            return Err(SolverError::Parse("modulus must be positive".into()));
        }
        let dense = |m: &BTreeMap<String, i64>| -> Result<Vec<i64>, SolverError> {
            let mut v = vec![0i64; idx.len()];
            for (name, &c) in m {
                let &i = idx.get(name.as_str()).ok_or_else(|| SolverError::UnknownVariable(name.clone()))?;
                v[i] = c;
            }
            Ok(v)
        };
        for e in &doc.equalities {
            sys.add_equality(dense(&e.coeffs)?, e.constant);
        }
        for r in &doc.rows {
            let m = r.modulus.unwrap_or(doc.modulus);
            if m == 0 {
                return Err(SolverError::Parse("row modulus must be positive".into()));
            }
            sys.add_row(dense(&r.coeffs)?, r.constant, m, r.nonneg.unwrap_or(true));
        }
        if let Some(bounds) = &doc.bounds {
            for (name, &(lo, hi)) in bounds {
                let &i = idx.get(name.as_str()).ok_or_else(|| SolverError::UnknownVariable(name.clone()))?;
                sys.set_bound(i, lo, hi);
            }
        }
        Ok(sys)
    }

    pub fn to_doc(&self, modulus: u64) -> RawSystemDoc {
        let sparse = |c: &[i64]| -> BTreeMap<String, i64> {
            c.iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| (self.variables[i].clone(), a))
                .collect()
        };
        let bounds: BTreeMap<String, (i64, i64)> = self
            .bounds
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.map(|b| (self.variables[i].clone(), b)))
            .collect();
        RawSystemDoc {
            variables: self.variables.clone(),
            modulus,
            equalities: self
                .equalities
                .iter()
                .map(|e| EqualityDoc { coeffs: sparse(&e.coeffs), constant: e.constant })
                .collect(),
            rows: self
                .rows
                .iter()
                .map(|r| RowDoc {
                    coeffs: sparse(&r.coeffs),
                    constant: r.constant,
                    modulus: (r.modulus != modulus).then_some(r.modulus),
                    nonneg: (!r.nonneg).then_some(false),
                })
                .collect(),
            bounds: (!bounds.is_empty()).then_some(bounds),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSystemDoc {
    pub variables: Vec<String>,
    pub modulus: u64,
    #[serde(default)]
    pub equalities: Vec<EqualityDoc>,
    #[serde(default)]
    pub rows: Vec<RowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BTreeMap<String, (i64, i64)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EqualityDoc {
    pub coeffs: BTreeMap<String, i64>,
    pub constant: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDoc {
    pub coeffs: BTreeMap<String, i64>,
    pub constant: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nonneg: Option<bool>,
}

pub fn parse_system(text: &str) -> Result<IntegerLinearSystem, SolverError> {
    let doc: RawSystemDoc = serde_json::from_str(text).map_err(|e| SolverError::Parse(e.to_string()))?;
    IntegerLinearSystem::from_doc(&doc)
}

pub fn load_system(path: impl AsRef<std::path::Path>) -> Result<IntegerLinearSystem, SolverError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| SolverError::Parse(format!("{}: {e}", path.display())))?;
    parse_system(&text)
}
