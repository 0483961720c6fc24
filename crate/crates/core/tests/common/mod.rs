#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::Rng;
use torsion_units::arith::divisors;
use torsion_units::chartab::{load_table, CharacterTable};
use torsion_units::method::{MuSystem, PAVector, PowerScenario};
use torsion_units::solver::IntegerLinearSystem;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel)
}

pub const SMALL: [&str; 8] = ["c2", "c3", "c4", "c5", "c6", "s3", "d8", "a4"];

pub fn table(name: &str) -> CharacterTable {
    load_table(fixture(&format!("tables/{name}.json"))).unwrap()
}

/// Random system with ≤ 4 variables, bounds inside ±30 and box volume ≤ 10⁶.
pub fn random_system(rng: &mut StdRng) -> IntegerLinearSystem {
    let n = rng.gen_range(1..=4);
    let names = (0..n).map(|i| format!("x{i}")).collect();
    let mut sys = IntegerLinearSystem::new(names);
    let width = [60, 60, 60, 30][n - 1];
    for j in 0..n {
        let lo = rng.gen_range(-30..=30 - width.min(30));
        let hi = (lo + rng.gen_range(0..=width)).min(30);
        sys.set_bound(j, lo, hi);
    }
    if n > 1 && rng.gen_bool(0.5) {
        let coeffs = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        sys.add_equality(coeffs, rng.gen_range(-5..=5));
    }
    for _ in 0..rng.gen_range(0..=5) {
        let coeffs = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
        sys.add_row(coeffs, rng.gen_range(-40..=40), rng.gen_range(1..=12), rng.gen_bool(0.8));
    }
    sys
}

pub fn box_scan(sys: &IntegerLinearSystem) -> Vec<Vec<i64>> {
    let b: Vec<(i64, i64)> = sys.bounds.iter().map(|b| b.unwrap()).collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = b.iter().map(|&(lo, _)| lo).collect();
    if b.iter().any(|&(lo, hi)| lo > hi) {
        return out;
    }
    loop {
        if sys.admits(&x) {
            out.push(x.clone());
        }
        let mut j = x.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if x[j] < b[j].1 {
                x[j] += 1;
                break;
            }
            x[j] = b[j].0;
        }
    }
}

/// Scenario of the group element in class `c`: `u^d` sits in the class of `c^d`.
pub fn element_scenario(t: &CharacterTable, c: usize) -> PowerScenario {
    let k = t.classes[c].order;
    let mut sc = PowerScenario::empty(k);
    for m in divisors(k).into_iter().filter(|&m| m > 1 && m < k) {
        let target = t.class_power_index(c, k / m).unwrap();
        let pa = PAVector::concentrated(m, t.classes_of_order_dividing(m), &t.classes[target].name).unwrap();
        sc.assignment.insert(m, pa);
    }
    sc
}

pub fn admissible_everywhere(sys: &MuSystem, nu: &[i64]) -> bool {
    sys.violated(nu).is_empty()
        && sys.congruences.iter().all(|c| {
            let v: i64 = c.constant + c.coeffs.iter().zip(nu).map(|(a, x)| a * x).sum::<i64>();
            v.rem_euclid(c.modulus as i64) == 0
        })
}

/// `Σ_l (constant + coeffs·ν)` for every (character, characteristic).
pub fn l_sums(sys: &MuSystem, nu: &[i64]) -> BTreeMap<(String, u64), i128> {
    let mut out = BTreeMap::new();
    for r in &sys.rows {
        for lab in &r.labels {
            *out.entry((lab.character.clone(), lab.p)).or_insert(0) += r.value(nu);
        }
    }
    out
}

pub fn random_pa(rng: &mut StdRng, order: u64, classes: Vec<String>) -> PAVector {
    let n = classes.len();
    let mut values: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
    let rest: i64 = values[..n - 1].iter().sum();
    values[n - 1] = 1 - rest;
    PAVector::new(order, classes, values)
}

