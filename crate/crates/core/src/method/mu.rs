//! Eigenvalue-multiplicity rows `μ_l(u, χ, p)` for a unit of order `k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, gcd, prime_power, CyclotomicNumber, RootTraces};
use crate::chartab::{CharKind, CharacterRow, CharacterTable};
use crate::solver::IntegerLinearSystem;

use super::pa::PowerScenario;
use super::MethodError;

/// Which character rows feed the constraints.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum CharSelector {
    /// every ordinary row and every Brauer block in characteristic prime to `k`
    #[default]
    All,
    Named(Vec<(String, CharKind)>),
}

impl CharSelector {
    /// Comma-separated ids; `id@p` names a `p`-Brauer row.
    pub fn parse(spec: &str) -> Result<Self, MethodError> {
        let mut out = Vec::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.rsplit_once('@') {
                Some((id, p)) => {
                    let p: u64 = p.parse().map_err(|_| MethodError::BadSelector(item.to_string()))?;
                    out.push((id.to_string(), CharKind::Brauer(p)));
                }
                None => out.push((item.to_string(), CharKind::Ordinary)),
            }
        }
        if out.is_empty() {
            return Err(MethodError::BadSelector(spec.to_string()));
        }
        Ok(CharSelector::Named(out))
    }

    pub fn rows<'a>(&self, table: &'a CharacterTable, k: u64) -> Result<Vec<&'a CharacterRow>, MethodError> {
        match self {
            CharSelector::All => Ok(table
                .ordinary
                .iter()
                .chain(table.brauer.values().filter(|b| k % b.prime != 0).flat_map(|b| &b.rows))
                .collect()),
            CharSelector::Named(ids) => ids
                .iter()
                .map(|(id, kind)| {
                    let row = table.find_row(id, *kind).ok_or_else(|| MethodError::UnknownCharacter(row_name(id, *kind)))?;
                    let p = kind.characteristic();
                    if p != 0 && k % p == 0 {
                        return Err(MethodError::BrauerCharacteristicDividesOrder { character: id.clone(), p, order: k });
                    }
                    Ok(row)
                })
                .collect(),
        }
    }
}

fn row_name(id: &str, kind: CharKind) -> String {
    match kind {
        CharKind::Ordinary => id.to_string(),
        CharKind::Brauer(p) => format!("{id}@{p}"),
    }
}

/// Which `μ_l(u, χ, p)` a row stands for; `p = 0` for ordinary characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MuLabel {
    pub character: String,
    pub l: u64,
    pub p: u64,
}

impl fmt::Display for MuLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu_{}({}, {})", self.l, self.character, self.p)
    }
}

/// `(constant + coeffs·ν) / k` must be a non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuRow {
    pub labels: Vec<MuLabel>,
    pub coeffs: Vec<i64>,
    pub constant: i64,
}

impl MuRow {
    pub fn value(&self, nu: &[i64]) -> i128 {
        self.coeffs.iter().zip(nu).fold(self.constant as i128, |acc, (&a, &v)| acc + a as i128 * v as i128)
    }
}

/// `constant + coeffs·ν ≡ 0 (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuCongruence {
    pub coeffs: Vec<i64>,
    pub constant: i64,
    pub modulus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuSystem {
    pub order: u64,
    pub variables: Vec<String>,
    pub rows: Vec<MuRow>,
    pub congruences: Vec<MuCongruence>,
}

impl MuSystem {
    /// The rows with modulus `k`, the congruences, and `Σν = 1`.
    pub fn to_integer_system(&self) -> IntegerLinearSystem {
        self.subsystem(|_| true)
    }

    /// As [`to_integer_system`](Self::to_integer_system) with only the rows `keep` accepts.
    pub fn subsystem(&self, keep: impl Fn(usize) -> bool) -> IntegerLinearSystem {
        let n = self.variables.len();
        let mut sys = IntegerLinearSystem::new(self.variables.clone());
        sys.add_equality(vec![1; n], 1);
        for (i, r) in self.rows.iter().enumerate() {
            if keep(i) {
                sys.add_row(r.coeffs.clone(), r.constant, self.order, true);
            }
        }
        for c in &self.congruences {
            sys.add_row(c.coeffs.clone(), c.constant, c.modulus, false);
        }
        sys
    }

    /// Rows whose value at `nu` is negative or not divisible by `k`.
    pub fn violated(&self, nu: &[i64]) -> Vec<&MuRow> {
        let k = self.order as i128;
        self.rows.iter().filter(|r| {
            let v = r.value(nu);
            v < 0 || v % k != 0
        }).collect()
    }
}

/// `χ(u^d)` for the power scenario; `χ(1)` when `d = k`.
pub fn char_value_at_power(
    table: &CharacterTable,
    row: &CharacterRow,
    scenario: &PowerScenario,
    d: u64,
) -> Result<CyclotomicNumber, MethodError> {
    let k = scenario.order;
    assert!(d > 1 && k % d == 0, "d must be a divisor of k greater than 1");
    if d == k {
        return Ok(row.degree().clone());
    }
    let m = k / d;
    let pa = scenario.assignment.get(&m).ok_or(MethodError::MissingScenarioOrder(m))?;
    let mut acc = CyclotomicNumber::zero();
    for (class, &nu) in pa.classes.iter().zip(&pa.values) {
        if nu == 0 {
            continue;
        }
        let i = table.class_index(class).ok_or_else(|| MethodError::UnknownClass(class.clone()))?;
        let v = row.value(i).ok_or_else(|| MethodError::MissingValue { character: row.id.clone(), class: class.clone() })?;
        acc = &acc + &v.scale_int(nu);
    }
    Ok(acc)
}

/// For `k = p^n`: `Σ_{order(C) = p^m} ν_C ≡ 0 (mod p)` for each `m < n`
/// with `p^m` an element order.
pub fn cohn_livingstone_congruences(table: &CharacterTable, k: u64) -> Vec<MuCongruence> {
    let Some((p, n)) = prime_power(k) else {
        return Vec::new();
    };
    let support = table.support_indices(k);
    (1..n)
        .filter_map(|m| {
            let q = p.pow(m);
            let coeffs: Vec<i64> = support.iter().map(|&i| (table.classes[i].order == q) as i64).collect();
            coeffs.contains(&1).then_some(MuCongruence { coeffs, constant: 0, modulus: p })
        })
        .collect()
}

fn integral(q: BigRational, character: &str, what: impl FnOnce() -> String) -> Result<i64, MethodError> {
    if !q.is_integer() {
        return Err(MethodError::NonIntegerCoefficient { character: character.to_string(), detail: format!("{} = {q}", what()) });
    }
    q.to_integer().to_i64().ok_or_else(|| MethodError::NonIntegerCoefficient {
        character: character.to_string(),
        detail: format!("{} = {q} does not fit in 64 bits", what()),
    })
}

/// Coefficients for one order, reused across power scenarios.
pub struct MuBuilder<'a> {
    table: &'a CharacterTable,
    order: u64,
    support: Vec<usize>,
    rows: Vec<&'a CharacterRow>,
    /// `coeffs[row][l][j]` for support class `j`
    coeffs: Vec<Vec<Vec<i64>>>,
    traces: BTreeMap<u64, RootTraces>,
    congruences: Vec<MuCongruence>,
}

impl<'a> MuBuilder<'a> {
    pub fn new(table: &'a CharacterTable, selection: &CharSelector, k: u64) -> Result<Self, MethodError> {
        assert!(k > 1, "units of order 1 carry no constraints");
        let rows = selection.rows(table, k)?;
        let support = table.support_indices(k);
        let traces: BTreeMap<u64, RootTraces> = divisors(k).into_iter().map(|m| (m, RootTraces::new(m))).collect();
        let rt = &traces[&k];
        let mut coeffs = Vec::with_capacity(rows.len());
        for row in &rows {
            let p = row.kind.characteristic();
            if p != 0 && gcd(p, k) != 1 {
                return Err(MethodError::BrauerCharacteristicDividesOrder { character: row.id.clone(), p, order: k });
            }
            let vals = support
                .iter()
                .map(|&i| {
                    row.value(i).ok_or_else(|| MethodError::MissingValue {
                        character: row.id.clone(),
                        class: table.classes[i].name.clone(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut per_l = Vec::with_capacity(k as usize);
            for l in 0..k as i64 {
                let mut line = Vec::with_capacity(vals.len());
                for (j, v) in vals.iter().enumerate() {
                    let class = &table.classes[support[j]].name;
                    let t = rt.trace_times_root(v, -l).ok_or_else(|| MethodError::NonIntegerCoefficient {
                        character: row.id.clone(),
                        detail: format!("value on {class} is not in Q(ζ_{k})"),
                    })?;
                    line.push(integral(t, &row.id, || format!("coefficient of {class} for l = {l}"))?);
                }
                per_l.push(line);
            }
            coeffs.push(per_l);
        }
        Ok(MuBuilder { table, order: k, support, rows, coeffs, traces, congruences: cohn_livingstone_congruences(table, k) })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn variables(&self) -> Vec<String> {
        self.support.iter().map(|&i| self.table.classes[i].name.clone()).collect()
    }

    /// `id` or `id@p` of every selected row.
    pub fn active_characters(&self) -> Vec<String> {
        self.rows.iter().map(|r| row_name(&r.id, r.kind)).collect()
    }

    pub fn build(&self, scenario: &PowerScenario) -> Result<MuSystem, MethodError> {
        let k = self.order;
        assert_eq!(scenario.order, k, "scenario is for a different order");
        let mut rows: Vec<MuRow> = Vec::new();
        let mut seen: HashMap<(Vec<i64>, i64), usize> = HashMap::new();
        for (ri, row) in self.rows.iter().enumerate() {
            let powers: Vec<(u64, CyclotomicNumber)> = divisors(k)
                .into_iter()
                .filter(|&d| d > 1)
                .map(|d| Ok((k / d, char_value_at_power(self.table, row, scenario, d)?)))
                .collect::<Result<_, MethodError>>()?;
            for l in 0..k {
                let mut c = BigRational::zero();
                for (m, v) in &powers {
                    let t = self.traces[m].trace_times_root(v, -(l as i64)).ok_or_else(|| MethodError::NonIntegerCoefficient {
                        character: row.id.clone(),
                        detail: format!("χ(u^{}) = {v} is not in Q(ζ_{m})", k / m),
                    })?;
                    c += t;
                }
                let constant = integral(c, &row.id, || format!("constant for l = {l}"))?;
                let coeffs = self.coeffs[ri][l as usize].clone();
                let label = MuLabel { character: row.id.clone(), l, p: row.kind.characteristic() };
                match seen.get(&(coeffs.clone(), constant)) {
                    Some(&i) => rows[i].labels.push(label),
                    None => {
                        seen.insert((coeffs.clone(), constant), rows.len());
                        rows.push(MuRow { labels: vec![label], coeffs, constant });
                    }
                }
            }
        }
        Ok(MuSystem { order: k, variables: self.variables(), rows, congruences: self.congruences.clone() })
    }
}

/// One-shot [`MuBuilder`] for a single scenario.
pub fn build_mu_system(
    table: &CharacterTable,
    selection: &CharSelector,
    k: u64,
    scenario: &PowerScenario,
) -> Result<MuSystem, MethodError> {
    MuBuilder::new(table, selection, k)?.build(scenario)
}

/// Integer value of a rational-integer character value, if it is one.
pub(crate) fn integer_value(v: &CyclotomicNumber) -> Option<i64> {
    v.as_integer().and_then(|x: BigInt| x.to_i64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::load_table;
    use crate::method::PAVector;

    fn table(name: &str) -> CharacterTable {
        load_table(format!("{}/fixtures/tables/{name}.json", env!("CARGO_MANIFEST_DIR"))).unwrap()
    }

    fn row_for<'a>(sys: &'a MuSystem, id: &str, l: u64) -> &'a MuRow {
        sys.rows.iter().find(|r| r.labels.iter().any(|x| x.character == id && x.l == l)).unwrap()
    }

    #[test]
    fn j1_order5_brauer_row() {
        let t = table("j1_mod11_order5");
        let sys = build_mu_system(&t, &CharSelector::All, 5, &PowerScenario::empty(5)).unwrap();
        assert_eq!(sys.variables, vec!["5a", "5b"]);
        let r = row_for(&sys, "chi2", 1);
        assert_eq!((r.coeffs.clone(), r.constant), (vec![3, -2], 7));
        assert!(r.labels.iter().all(|x| x.p == 11));
    }

    #[test]
    fn j1_order19_brauer_row() {
        let t = table("j1_mod11_order19");
        let sel = CharSelector::parse("chi13@11").unwrap();
        let sys = build_mu_system(&t, &sel, 19, &PowerScenario::empty(19)).unwrap();
        let r = row_for(&sys, "chi13", 1);
        assert_eq!((r.coeffs.clone(), r.constant), (vec![14, -5, -5], 119));
    }

    #[test]
    fn selector_syntax_and_errors() {
        let t = table("a4");
        assert_eq!(
            CharSelector::parse("chi2, phi1@3").unwrap(),
            CharSelector::Named(vec![("chi2".into(), CharKind::Ordinary), ("phi1".into(), CharKind::Brauer(3))])
        );
        assert!(CharSelector::parse("").is_err());
        let sel = CharSelector::parse("phi1@3").unwrap();
        assert!(matches!(sel.rows(&t, 3), Err(MethodError::BrauerCharacteristicDividesOrder { p: 3, .. })));
        let sel = CharSelector::parse("chi9").unwrap();
        assert!(matches!(sel.rows(&t, 2), Err(MethodError::UnknownCharacter(_))));
        // Brauer blocks in characteristic dividing k are left out by default
        let all = CharSelector::All.rows(&t, 3).unwrap();
        assert_eq!(all.len(), 4 + 3);
    }

    #[test]
    fn value_at_power() {
        let t = table("j1_mod11_order5");
        let chi2 = t.find_row("chi2", CharKind::Brauer(11)).unwrap();
        let mut sc = PowerScenario::empty(10);
        sc.assignment.insert(5, PAVector::new(5, vec!["5a".into(), "5b".into()], vec![2, -1]));
        let v = char_value_at_power(&t, chi2, &sc, 2).unwrap();
        let want = &chi2.value(1).unwrap().scale_int(2) - chi2.value(2).unwrap();
        assert_eq!(v, want);
        assert_eq!(&char_value_at_power(&t, chi2, &sc, 10).unwrap(), chi2.degree());
        assert!(matches!(char_value_at_power(&t, chi2, &sc, 5), Err(MethodError::MissingScenarioOrder(2))));
    }

    #[test]
    fn cohn_livingstone_rows() {
        let j2 = table("j2_skeleton");
        let c = cohn_livingstone_congruences(&j2, 4);
        let vars = j2.classes_of_order_dividing(4);
        assert_eq!(vars, vec!["2a", "2b", "4a"]);
        assert_eq!(c, vec![MuCongruence { coeffs: vec![1, 1, 0], constant: 0, modulus: 2 }]);
        let j3 = table("j3_skeleton");
        assert_eq!(j3.classes_of_order_dividing(8), vec!["2a", "4a", "8a"]);
        let c: Vec<Vec<i64>> = cohn_livingstone_congruences(&j3, 8).into_iter().map(|c| c.coeffs).collect();
        assert_eq!(c, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        assert!(cohn_livingstone_congruences(&table("c5"), 5).is_empty());
        assert!(cohn_livingstone_congruences(&table("c6"), 6).is_empty());
    }

    #[test]
    fn duplicate_rows_are_merged() {
        let t = table("c2");
        let sys = build_mu_system(&t, &CharSelector::All, 2, &PowerScenario::empty(2)).unwrap();
        let labels: usize = sys.rows.iter().map(|r| r.labels.len()).sum();
        assert_eq!(labels, t.ordinary.len() * 2);
        let keys: std::collections::HashSet<_> = sys.rows.iter().map(|r| (r.coeffs.clone(), r.constant)).collect();
        assert_eq!(keys.len(), sys.rows.len());
    }
}
