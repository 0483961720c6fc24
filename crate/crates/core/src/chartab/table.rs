use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, is_prime, CyclotomicNumber};

use super::doc::{BlockDoc, ClassDoc, CycDoc, RowDoc, TableDoc};
use super::ChartabError;

pub const IDENTITY_CLASS: &str = "1a";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub order: u64,
    pub size: Option<u64>,
    /// prime ↦ class of `g^p`
    pub power_maps: BTreeMap<u64, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharKind {
    Ordinary,
    Brauer(u64),
}

impl CharKind {
    /// 0 for ordinary characters, `p` for `p`-Brauer characters.
    pub fn characteristic(self) -> u64 {
        match self {
            CharKind::Ordinary => 0,
            CharKind::Brauer(p) => p,
        }
    }
}

/// A character with values indexed like the table's class list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterRow {
    pub id: String,
    pub kind: CharKind,
    values: Vec<Option<CyclotomicNumber>>,
}

impl CharacterRow {
    pub fn new(id: impl Into<String>, kind: CharKind, values: Vec<Option<CyclotomicNumber>>) -> Self {
        CharacterRow { id: id.into(), kind, values }
    }

    pub fn value(&self, class: usize) -> Option<&CyclotomicNumber> {
        self.values.get(class).and_then(Option::as_ref)
    }

    pub fn values(&self) -> &[Option<CyclotomicNumber>] {
        &self.values
    }

    /// Value on the identity class.
    pub fn degree(&self) -> &CyclotomicNumber {
        self.values[0].as_ref().expect("degree is checked at parse time")
    }

    #[cfg(test)]
    pub(crate) fn values_mut(&mut self) -> &mut Vec<Option<CyclotomicNumber>> {
        &mut self.values
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerBlock {
    pub prime: u64,
    pub classes: Vec<String>,
    pub rows: Vec<CharacterRow>,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group: String,
    pub order: Vec<(u64, u32)>,
    pub exponent: u64,
    pub classes: Vec<ClassInfo>,
    pub ordinary: Vec<CharacterRow>,
    pub brauer: BTreeMap<u64, BrauerBlock>,
    index: HashMap<String, usize>,
}

impl PartialEq for CharacterTable {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group
            && self.order == other.order
            && self.exponent == other.exponent
            && self.classes == other.classes
            && self.ordinary == other.ordinary
            && self.brauer == other.brauer
    }
}

/// Parse and check a table document.
pub fn parse_table(text: &str) -> Result<CharacterTable, ChartabError> {
    let doc: TableDoc =
        serde_json::from_str(text).map_err(|e| ChartabError::Schema(e.to_string()))?;
    CharacterTable::from_doc(&doc)
}

fn dangling(context: impl Into<String>, class: &str) -> ChartabError {
    ChartabError::DanglingClassRef { context: context.into(), class: class.to_string() }
}

impl CharacterTable {
    pub fn from_doc(doc: &TableDoc) -> Result<Self, ChartabError> {
        let first = doc.classes.first().map(|c| c.name.as_str());
        if first != Some(IDENTITY_CLASS) {
            return Err(ChartabError::Schema(format!(
                "first class must be \"{IDENTITY_CLASS}\", found {first:?}"
            )));
        }
        if doc.exponent == 0 {
            return Err(ChartabError::Schema("exponent must be positive".into()));
        }
        for &(p, e) in &doc.order {
            if !is_prime(p) || e == 0 {
                return Err(ChartabError::Schema(format!("bad order factor {p}^{e}")));
            }
        }
        let mut index = HashMap::new();
        for (i, c) in doc.classes.iter().enumerate() {
            if c.order == 0 {
                return Err(ChartabError::Schema(format!("class {} has order 0", c.name)));
            }
            if c.size == Some(0) {
                return Err(ChartabError::Schema(format!("class {} has size 0", c.name)));
            }
            if index.insert(c.name.clone(), i).is_some() {
                return Err(ChartabError::Schema(format!("duplicate class {}", c.name)));
            }
        }
        let classes: Vec<ClassInfo> = doc
            .classes
            .iter()
            .map(|c| ClassInfo {
                name: c.name.clone(),
                order: c.order,
                size: c.size,
                power_maps: c.power_maps.clone(),
            })
            .collect();
        for c in &classes {
            for (&p, target) in &c.power_maps {
                if !is_prime(p) {
                    return Err(ChartabError::Schema(format!(
                        "power map key {p} of class {} is not prime",
                        c.name
                    )));
                }
                if !index.contains_key(target) {
                    return Err(dangling(format!("power map {p} of class {}", c.name), target));
                }
            }
        }
        let row_from = |r: &RowDoc, kind: CharKind, allowed: Option<&BTreeSet<usize>>| {
            let mut values = vec![None; classes.len()];
            for (name, v) in &r.values {
                let &i = index
                    .get(name)
                    .ok_or_else(|| dangling(format!("character {}", r.id), name))?;
                if let Some(allowed) = allowed {
                    if !allowed.contains(&i) {
                        return Err(ChartabError::Schema(format!(
                            "character {} has a value on {name}, outside its block",
                            r.id
                        )));
                    }
                }
                values[i] = Some(v.to_value()?);
            }
            let wanted: Vec<usize> = match allowed {
                Some(a) => a.iter().copied().collect(),
                None => (0..classes.len()).collect(),
            };
            if let Some(&i) = wanted.iter().find(|&&i| values[i].is_none()) {
                return Err(ChartabError::Schema(format!(
                    "character {} has no value on {}",
                    r.id, classes[i].name
                )));
            }
            Ok(CharacterRow { id: r.id.clone(), kind, values })
        };
        let mut ordinary = Vec::new();
        for r in &doc.ordinary {
            ordinary.push(row_from(r, CharKind::Ordinary, None)?);
        }
        let mut brauer = BTreeMap::new();
        for (&p, block) in &doc.brauer {
            if !is_prime(p) {
                return Err(ChartabError::Schema(format!("Brauer key {p} is not prime")));
            }
            let mut allowed = BTreeSet::new();
            for name in &block.classes {
                let &i = index
                    .get(name)
                    .ok_or_else(|| dangling(format!("{p}-Brauer block"), name))?;
                allowed.insert(i);
            }
            if !allowed.contains(&0) {
                return Err(ChartabError::Schema(format!(
                    "{p}-Brauer block does not contain {IDENTITY_CLASS}"
                )));
            }
            let mut rows = Vec::new();
            for r in &block.rows {
                rows.push(row_from(r, CharKind::Brauer(p), Some(&allowed))?);
            }
            brauer.insert(p, BrauerBlock { prime: p, classes: block.classes.clone(), rows });
        }
        let mut ids = BTreeSet::new();
        for r in ordinary.iter().chain(brauer.values().flat_map(|b| &b.rows)) {
            if !ids.insert((r.id.clone(), r.kind)) {
                return Err(ChartabError::Schema(format!("duplicate character id {}", r.id)));
            }
        }
        let table = CharacterTable {
            group: doc.group.clone(),
            order: doc.order.clone(),
            exponent: doc.exponent,
            classes,
            ordinary,
            brauer,
            index,
        };
        table.check_identity_and_power_maps()?;
        table.check_degrees()?;
        Ok(table)
    }

    fn check_identity_and_power_maps(&self) -> Result<(), ChartabError> {
        if self.classes[0].order != 1 {
            return Err(ChartabError::Schema(format!("{IDENTITY_CLASS} must have order 1")));
        }
        for c in &self.classes {
            for (&p, target) in &c.power_maps {
                let t = &self.classes[self.index[target]];
                let expected = if c.order % p == 0 { c.order / p } else { c.order };
                if t.order != expected {
                    return Err(ChartabError::PowerMapOrder {
                        class: c.name.clone(),
                        prime: p,
                        target: target.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_degrees(&self) -> Result<(), ChartabError> {
        for r in self.all_rows() {
            let d = r.degree();
            match d.as_integer() {
                Some(v) if v.is_positive() => {}
                _ => {
                    return Err(ChartabError::BadDegree { row: r.id.clone(), value: d.to_string() })
                }
            }
        }
        Ok(())
    }

    pub fn to_doc(&self) -> Result<TableDoc, ChartabError> {
        let row_doc = |r: &CharacterRow| -> Result<RowDoc, ChartabError> {
            let mut values = BTreeMap::new();
            for (i, v) in r.values.iter().enumerate() {
                if let Some(v) = v {
                    values.insert(self.classes[i].name.clone(), CycDoc::from_value(v)?);
                }
            }
            Ok(RowDoc { id: r.id.clone(), values })
        };
        let mut brauer = BTreeMap::new();
        for (&p, b) in &self.brauer {
            brauer.insert(
                p,
                BlockDoc {
                    classes: b.classes.clone(),
                    rows: b.rows.iter().map(row_doc).collect::<Result<_, _>>()?,
                },
            );
        }
        Ok(TableDoc {
            group: self.group.clone(),
            order: self.order.clone(),
            exponent: self.exponent,
            classes: self
                .classes
                .iter()
                .map(|c| ClassDoc {
                    name: c.name.clone(),
                    order: c.order,
                    size: c.size,
                    power_maps: c.power_maps.clone(),
                })
                .collect(),
            ordinary: self.ordinary.iter().map(row_doc).collect::<Result<_, _>>()?,
            brauer,
        })
    }

    /// Pretty-printed JSON document.
    pub fn serialize(&self) -> Result<String, ChartabError> {
        serde_json::to_string_pretty(&self.to_doc()?).map_err(|e| ChartabError::Schema(e.to_string()))
    }

    pub fn class_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn class(&self, name: &str) -> Option<&ClassInfo> {
        self.class_index(name).map(|i| &self.classes[i])
    }

    pub fn group_order(&self) -> BigInt {
        self.order.iter().fold(BigInt::one(), |acc, &(p, e)| acc * BigInt::from(p).pow(e))
    }

    /// Ordinary rows followed by every Brauer block in ascending prime order.
    pub fn all_rows(&self) -> impl Iterator<Item = &CharacterRow> {
        self.ordinary.iter().chain(self.brauer.values().flat_map(|b| b.rows.iter()))
    }

    pub fn find_row(&self, id: &str, kind: CharKind) -> Option<&CharacterRow> {
        match kind {
            CharKind::Ordinary => self.ordinary.iter().find(|r| r.id == id),
            CharKind::Brauer(p) => self.brauer.get(&p)?.rows.iter().find(|r| r.id == id),
        }
    }

    /// Class of `g^d` for `g` in class `c`.
    pub fn class_power(&self, c: &str, d: u64) -> Result<&str, ChartabError> {
        let i = self.class_index(c).ok_or_else(|| ChartabError::UnknownClass(c.to_string()))?;
        let j = self.class_power_index(i, d)?;
        Ok(&self.classes[j].name)
    }

    pub fn class_power_index(&self, c: usize, d: u64) -> Result<usize, ChartabError> {
        assert!(d >= 1, "class_power needs a positive exponent");
        let mut cur = c;
        for (p, e) in factorize(d) {
            for _ in 0..e {
                let info = &self.classes[cur];
                if info.order == 1 {
                    return Ok(0);
                }
                if info.order % p != 0 && p % info.order == 1 {
                    continue;
                }
                let target = info.power_maps.get(&p).ok_or_else(|| ChartabError::MissingPowerMap {
                    class: info.name.clone(),
                    prime: p,
                })?;
                cur = self.index[target];
            }
        }
        Ok(cur)
    }

    pub fn element_orders(&self) -> Vec<u64> {
        let s: BTreeSet<u64> = self.classes.iter().map(|c| c.order).collect();
        s.into_iter().collect()
    }

    /// Indices of the classes other than `1a` whose order divides `k`.
    pub fn support_indices(&self, k: u64) -> Vec<usize> {
        (1..self.classes.len()).filter(|&i| k % self.classes[i].order == 0).collect()
    }

    pub fn classes_of_order_dividing(&self, k: u64) -> Vec<String> {
        self.support_indices(k).into_iter().map(|i| self.classes[i].name.clone()).collect()
    }

    /// Indices of the classes of order coprime to `p`.
    pub fn p_regular_indices(&self, p: u64) -> Vec<usize> {
        (0..self.classes.len()).filter(|&i| gcd(self.classes[i].order, p) == 1).collect()
    }
}
