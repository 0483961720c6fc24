use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::{lcm, CyclotomicNumber, Rational};

use super::table::{CharacterRow, CharacterTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IssueKind {
    BadDegree,
    PowerMapOrder,
    MissingPowerMap,
    ExponentMismatch,
    ClassOrderDivisibility,
    BrauerClasses,
    ValueOutsideField,
    ClassSizes,
    Orthogonality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub severity: Severity,
    pub kind: IssueKind,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    /// No errors; warnings are allowed.
    pub fn is_clean(&self) -> bool {
        self.errors().next().is_none()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Warning)
    }

    fn error(&mut self, kind: IssueKind, message: String) {
        self.issues.push(Issue { severity: Severity::Error, kind, message });
    }

    fn warn(&mut self, kind: IssueKind, message: String) {
        self.issues.push(Issue { severity: Severity::Warning, kind, message });
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)
    }
}

/// Re-check every table invariant and collect the findings.
pub fn validate(table: &CharacterTable) -> ValidationReport {
    let mut rep = ValidationReport::default();
    check_degrees(table, &mut rep);
    check_classes(table, &mut rep);
    check_brauer(table, &mut rep);
    check_fields(table, &mut rep);
    check_orthogonality(table, &mut rep);
    rep
}

fn check_degrees(t: &CharacterTable, rep: &mut ValidationReport) {
    for r in t.all_rows() {
        let ok = matches!(r.value(0).and_then(CyclotomicNumber::as_integer), Some(v) if v.is_positive());
        if !ok {
            rep.error(IssueKind::BadDegree, format!("character {} has degree {}", r.id, fmt_value(r, 0)));
        }
    }
}

fn fmt_value(r: &CharacterRow, i: usize) -> String {
    r.value(i).map(ToString::to_string).unwrap_or_else(|| "none".into())
}

fn check_classes(t: &CharacterTable, rep: &mut ValidationReport) {
    let group_order = t.group_order();
    let lcm_orders = t.classes.iter().fold(1u64, |a, c| lcm(a, c.order));
    if lcm_orders != t.exponent {
        rep.error(
            IssueKind::ExponentMismatch,
            format!("exponent {} but class orders have lcm {lcm_orders}", t.exponent),
        );
    }
    let exp_primes: Vec<u64> = crate::arith::prime_divisors(t.exponent);
    for c in &t.classes {
        if t.exponent % c.order != 0 || &group_order % BigInt::from(c.order) != BigInt::from(0) {
            rep.error(
                IssueKind::ClassOrderDivisibility,
                format!("class {} has order {} not dividing the exponent and group order", c.name, c.order),
            );
        }
        for (&p, target) in &c.power_maps {
            let Some(tc) = t.class(target) else { continue };
            let expected = if c.order % p == 0 { c.order / p } else { c.order };
            if tc.order != expected {
                rep.error(
                    IssueKind::PowerMapOrder,
                    format!("power map {p} sends {} (order {}) to {target} (order {})", c.name, c.order, tc.order),
                );
            }
        }
        if c.order == 1 {
            if c.power_maps.values().any(|v| v != &t.classes[0].name) {
                rep.error(IssueKind::PowerMapOrder, format!("{} must map to itself", c.name));
            }
            continue;
        }
        for &p in &exp_primes {
            let forced = c.order % p != 0 && p % c.order == 1;
            if !c.power_maps.contains_key(&p) && !forced {
                rep.warn(IssueKind::MissingPowerMap, format!("class {} has no {p}-power map", c.name));
            }
        }
    }
}

fn check_brauer(t: &CharacterTable, rep: &mut ValidationReport) {
    for (&p, b) in &t.brauer {
        let expected: Vec<&str> = t
            .p_regular_indices(p)
            .into_iter()
            .map(|i| t.classes[i].name.as_str())
            .collect();
        let mut got: Vec<&str> = b.classes.iter().map(String::as_str).collect();
        let mut want = expected.clone();
        got.sort_unstable();
        want.sort_unstable();
        if got != want {
            rep.error(
                IssueKind::BrauerClasses,
                format!("{p}-Brauer block classes {:?} differ from the {p}-regular classes {:?}", b.classes, expected),
            );
        }
        if !t.order.iter().any(|&(q, _)| q == p) {
            rep.warn(IssueKind::BrauerClasses, format!("{p} does not divide the group order"));
        }
    }
}

fn check_fields(t: &CharacterTable, rep: &mut ValidationReport) {
    for r in t.all_rows() {
        for (i, c) in t.classes.iter().enumerate() {
            if let Some(v) = r.value(i) {
                let m = v.minimize().conductor();
                if c.order % m != 0 {
                    rep.error(
                        IssueKind::ValueOutsideField,
                        format!("character {} on {}: {v} is not in Q(ζ_{})", r.id, c.name, c.order),
                    );
                }
            }
        }
    }
}

fn check_orthogonality(t: &CharacterTable, rep: &mut ValidationReport) {
    let Some(sizes) = t.classes.iter().map(|c| c.size).collect::<Option<Vec<u64>>>() else {
        return;
    };
    let order = t.group_order();
    let total: BigInt = sizes.iter().map(|&s| BigInt::from(s)).sum();
    if total != order {
        rep.error(IssueKind::ClassSizes, format!("class sizes sum to {total}, group order is {order}"));
    }
    let order_q = Rational::from_integer(order);
    for r in &t.ordinary {
        let mut acc = CyclotomicNumber::zero();
        for (i, &s) in sizes.iter().enumerate() {
            let v = r.value(i).expect("ordinary rows cover every class");
            acc = &acc + &(v * &v.conj()).scale_int(s as i64);
        }
        if acc.as_rational().as_ref() != Some(&order_q) {
            rep.error(
                IssueKind::Orthogonality,
                format!("character {}: Σ|C|·χ·χ̄ = {acc}, expected {}", r.id, t.group_order()),
            );
        }
    }
}
