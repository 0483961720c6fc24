use std::collections::BTreeMap;

use crate::arith::{divisors, prime_divisors};
use crate::chartab::{ChartabError, CharacterTable};

use super::pa::{PAVector, PowerScenario, SolutionStore};
use super::MethodError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioSet {
    pub order: u64,
    pub scenarios: Vec<PowerScenario>,
    /// divisor orders whose stored set is empty
    pub killed_by_power: Vec<u64>,
}

impl ScenarioSet {
    pub fn is_killed_by_power(&self) -> bool {
        !self.killed_by_power.is_empty()
    }
}

fn proper_divisors(k: u64) -> Vec<u64> {
    divisors(k).into_iter().filter(|&m| m > 1 && m < k).collect()
}

/// Number of scenarios without pruning, which can exceed what fits in memory.
pub fn scenario_count(store: &SolutionStore, k: u64) -> Result<u128, MethodError> {
    proper_divisors(k).into_iter().try_fold(1u128, |acc, m| {
        let set = store.get(m).ok_or(MethodError::MissingStoreOrder(m))?;
        Ok(acc * set.len() as u128)
    })
}

/// Every choice of stored vectors for the proper powers of a unit of order `k`.
///
/// With `prune`, a scenario is dropped when the vector for order `m` is
/// trivial at `c` but the one for `m/q` is not trivial at the class of
/// `c^q`; the check is skipped where a power map is unknown.
pub fn scenarios(store: &SolutionStore, k: u64, prune: Option<&CharacterTable>) -> Result<ScenarioSet, MethodError> {
    let divs = proper_divisors(k);
    let mut sets: Vec<(u64, &[PAVector])> = Vec::with_capacity(divs.len());
    let mut killed = Vec::new();
    for &m in &divs {
        let set = store.get(m).ok_or(MethodError::MissingStoreOrder(m))?;
        if set.is_empty() {
            killed.push(m);
        }
        sets.push((m, set));
    }
    if !killed.is_empty() {
        return Ok(ScenarioSet { order: k, scenarios: Vec::new(), killed_by_power: killed });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; sets.len()];
    loop {
        let assignment: BTreeMap<u64, PAVector> = sets.iter().zip(&idx).map(|(&(m, set), &i)| (m, set[i].clone())).collect();
        let sc = PowerScenario { order: k, assignment };
        if prune.is_none_or(|t| power_consistent(t, &sc)) {
            out.push(sc);
        }
        // odometer with the last divisor fastest
        let mut j = sets.len();
        loop {
            if j == 0 {
                return Ok(ScenarioSet { order: k, scenarios: out, killed_by_power: Vec::new() });
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < sets[j].1.len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

fn power_consistent(table: &CharacterTable, sc: &PowerScenario) -> bool {
    for (&m, pa) in &sc.assignment {
        let Some(c) = pa.trivial_class() else { continue };
        for q in prime_divisors(m) {
            let Some(lower) = sc.assignment.get(&(m / q)) else { continue };
            match table.class_power(c, q) {
                Ok(target) => {
                    if lower.trivial_class() != Some(target) {
                        return false;
                    }
                }
                Err(ChartabError::MissingPowerMap { .. }) => {}
                Err(_) => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vectors(order: u64, n: usize) -> Vec<PAVector> {
        (0..n as i64).map(|i| PAVector::new(order, vec!["x".into()], vec![i])).collect()
    }

    #[test]
    fn product_size_and_order() {
        let mut s = SolutionStore::new();
        s.insert(2, vectors(2, 2));
        s.insert(3, vectors(3, 3));
        let sc = scenarios(&s, 6, None).unwrap();
        assert_eq!(sc.scenarios.len(), 6);
        assert_eq!(scenario_count(&s, 6).unwrap(), 6);
        let first: Vec<i64> = sc.scenarios[1].assignment.values().map(|p| p.values[0]).collect();
        assert_eq!(first, vec![0, 1]);
    }

    #[test]
    fn prime_order_has_one_empty_scenario() {
        let sc = scenarios(&SolutionStore::new(), 7, None).unwrap();
        assert_eq!(sc.scenarios, vec![PowerScenario::empty(7)]);
    }

    #[test]
    fn empty_divisor_kills() {
        let mut s = SolutionStore::new();
        s.insert(2, vectors(2, 1));
        s.insert(7, Vec::new());
        let sc = scenarios(&s, 14, None).unwrap();
        assert!(sc.scenarios.is_empty());
        assert_eq!(sc.killed_by_power, vec![7]);
        assert!(matches!(scenarios(&s, 21, None), Err(MethodError::MissingStoreOrder(3))));
    }
}
