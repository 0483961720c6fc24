//! Compressed rows for units of order `s·t` and characters constant on the
//! classes of orders `s` and `t`.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, root_trace};
use crate::chartab::{CharacterRow, CharacterTable};
use crate::solver::IntegerLinearSystem;

use super::mu::integer_value;
use super::MethodError;

/// `μ_l = (m1 + ν_s·ms + ν_t·mt) / (s·t)`, with `ν_s`, `ν_t` the summed
/// partial augmentations on the classes of order `s` and `t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PQRow {
    pub s: u64,
    pub t: u64,
    pub character: String,
    pub l: i64,
    pub m1: i64,
    pub ms: i64,
    pub mt: i64,
}

impl PQRow {
    pub fn numerator(&self, nu_s: i64, nu_t: i64) -> i64 {
        self.m1 + self.ms * nu_s + self.mt * nu_t
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.m1, self.ms, self.mt)
    }
}

pub fn build_pq_row(xi_s: i64, xi_t: i64, degree: i64, s: u64, t: u64, l: i64) -> PQRow {
    assert!(s != t && gcd(s, t) == 1, "s and t must be coprime");
    let st = root_trace(s * t, -l);
    PQRow {
        s,
        t,
        character: String::new(),
        l,
        m1: degree + xi_t * root_trace(t, -l) + xi_s * root_trace(s, -l),
        ms: xi_s * st,
        mt: xi_t * st,
    }
}

/// The common rational-integer value of `row` on the classes of order `q`.
fn constant_on(table: &CharacterTable, row: &CharacterRow, q: u64) -> Result<i64, MethodError> {
    let mut common = None;
    for (i, c) in table.classes.iter().enumerate() {
        if c.order != q {
            continue;
        }
        let v = row
            .value(i)
            .ok_or_else(|| MethodError::MissingValue { character: row.id.clone(), class: c.name.clone() })?;
        let v = integer_value(v).ok_or(MethodError::NonConstantCharacter { character: row.id.clone(), order: q })?;
        match common {
            None => common = Some(v),
            Some(w) if w == v => {}
            Some(_) => return Err(MethodError::NonConstantCharacter { character: row.id.clone(), order: q }),
        }
    }
    common.ok_or(MethodError::NonConstantCharacter { character: row.id.clone(), order: q })
}

/// [`build_pq_row`] after checking that `row` is constant on both class orders.
pub fn pq_row_for_character(
    table: &CharacterTable,
    row: &CharacterRow,
    s: u64,
    t: u64,
    l: i64,
) -> Result<PQRow, MethodError> {
    let xi_s = constant_on(table, row, s)?;
    let xi_t = constant_on(table, row, t)?;
    let degree = integer_value(row.degree()).ok_or(MethodError::NonConstantCharacter { character: row.id.clone(), order: 1 })?;
    let mut r = build_pq_row(xi_s, xi_t, degree, s, t, l);
    r.character = row.id.clone();
    Ok(r)
}

/// Variables `ν_s`, `ν_t` with `ν_s + ν_t = 1` and every row's numerator
/// non-negative and divisible by `s·t`.
pub fn pq_system(s: u64, t: u64, rows: &[PQRow]) -> IntegerLinearSystem {
    let mut sys = IntegerLinearSystem::new(vec![format!("nu{s}"), format!("nu{t}")]);
    sys.add_equality(vec![1, 1], 1);
    for r in rows {
        assert_eq!((r.s, r.t), (s, t), "row is for a different pair of primes");
        sys.add_row(vec![r.ms, r.mt], r.m1, s * t, true);
    }
    sys
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::{load_table, CharKind};
    use crate::method::{build_mu_system, CharSelector, PAVector, PowerScenario};

    #[test]
    fn printed_triples() {
        assert_eq!(build_pq_row(2, 0, 77, 3, 11, 0).triple(), (81, 40, 0));
        assert_eq!(build_pq_row(5, 0, 77, 2, 7, 1).triple(), (72, 5, 0));
        assert_eq!(build_pq_row(0, 0, 91, 5, 7, 0).triple(), (91, 0, 0));
    }

    #[test]
    fn agrees_with_general_rows() {
        let t = load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/j1_order33.json")).unwrap();
        let mut sc = PowerScenario::empty(33);
        sc.assignment.insert(3, PAVector::concentrated(3, vec!["3a".into()], "3a").unwrap());
        sc.assignment.insert(11, PAVector::concentrated(11, vec!["11a".into()], "11a").unwrap());
        for id in ["chi6", "chi7"] {
            let row = t.find_row(id, CharKind::Ordinary).unwrap();
            let sel = CharSelector::Named(vec![(id.into(), CharKind::Ordinary)]);
            let sys = build_mu_system(&t, &sel, 33, &sc).unwrap();
            for l in 0..33 {
                let pq = pq_row_for_character(&t, row, 3, 11, l).unwrap();
                let general = sys.rows.iter().find(|r| r.labels.iter().any(|x| x.l == l as u64)).unwrap();
                assert_eq!((general.coeffs.clone(), general.constant), (vec![pq.ms, pq.mt], pq.m1), "{id} l={l}");
            }
        }
    }

    #[test]
    fn non_constant_character_is_rejected() {
        let t = load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/c5.json")).unwrap();
        let row = t.find_row("chi2", CharKind::Ordinary).unwrap();
        assert!(matches!(pq_row_for_character(&t, row, 5, 2, 0), Err(MethodError::NonConstantCharacter { order: 5, .. })));
    }

    #[test]
    fn order_33_system_is_infeasible() {
        let rows = [build_pq_row(2, 0, 77, 3, 11, 0), build_pq_row(2, 0, 77, 3, 11, 1), build_pq_row(-1, 0, 77, 3, 11, 0)];
        let sys = pq_system(3, 11, &rows);
        assert!(crate::solver::enumerate(&sys, 10).unwrap().is_empty());
    }
}
