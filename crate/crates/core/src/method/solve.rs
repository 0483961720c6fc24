use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime};
use crate::chartab::CharacterTable;
use crate::solver::{enumerate, SolverError, DEFAULT_LIMIT};

use super::mu::{CharSelector, MuBuilder, MuLabel, MuSystem};
use super::pa::{PAVector, SolutionStore};
use super::scenario::scenarios;
use super::MethodError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub selection: CharSelector,
    pub prune_power: bool,
    /// bound every partial augmentation to `[-m, m]`
    pub max_abs: Option<i64>,
    /// per-scenario solution cap
    pub limit: usize,
    /// search for an irreducible infeasible row set when nothing survives
    pub explain: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { selection: CharSelector::All, prune_power: false, max_abs: None, limit: DEFAULT_LIMIT, explain: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioOutcome {
    pub index: usize,
    pub rows: usize,
    pub solutions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderOutcome {
    pub order: u64,
    pub classes: Vec<String>,
    pub solutions: Vec<PAVector>,
    pub trivial: usize,
    pub nontrivial: usize,
    pub scenario_count: usize,
    /// divisor orders with no admissible vector
    pub killed_by_power: Vec<u64>,
    /// rows of an irreducible infeasible subsystem, per empty scenario
    pub killed_by: Vec<Vec<MuLabel>>,
    pub active_characters: Vec<String>,
    pub scenarios: Vec<ScenarioOutcome>,
}

/// Admissible partial augmentations of units of order `k`.
///
/// Scenarios are solved in parallel on the current rayon pool; the merged
/// set is sorted, so the result does not depend on the schedule.
pub fn solve_order(
    table: &CharacterTable,
    k: u64,
    store: &SolutionStore,
    opts: &SolveOptions,
) -> Result<OrderOutcome, MethodError> {
    let classes = table.classes_of_order_dividing(k);
    let set = scenarios(store, k, opts.prune_power.then_some(table))?;
    let mut out = OrderOutcome {
        order: k,
        classes: classes.clone(),
        solutions: Vec::new(),
        trivial: 0,
        nontrivial: 0,
        scenario_count: set.scenarios.len(),
        killed_by_power: set.killed_by_power.clone(),
        killed_by: Vec::new(),
        active_characters: Vec::new(),
        scenarios: Vec::new(),
    };
    if set.is_killed_by_power() {
        return Ok(out);
    }
    let builder = MuBuilder::new(table, &opts.selection, k)?;
    out.active_characters = builder.active_characters();
    let solved: Vec<(MuSystem, Vec<Vec<i64>>)> = set
        .scenarios
        .par_iter()
        .map(|sc| {
            let sys = builder.build(sc)?;
            let sols = enumerate(&bounded(&sys, opts.max_abs), opts.limit)?;
            Ok((sys, sols))
        })
        .collect::<Result<_, MethodError>>()?;
    let mut merged: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (index, (sys, sols)) in solved.iter().enumerate() {
        out.scenarios.push(ScenarioOutcome { index, rows: sys.rows.len(), solutions: sols.len() });
        merged.extend(sols.iter().cloned());
    }
    out.solutions = merged.into_iter().map(|v| PAVector::new(k, classes.clone(), v)).collect();
    out.trivial = out.solutions.iter().filter(|p| p.is_trivial()).count();
    out.nontrivial = out.solutions.len() - out.trivial;
    if out.solutions.is_empty() && opts.explain {
        out.killed_by = solved
            .par_iter()
            .map(|(sys, _)| irreducible_infeasible(sys, opts.max_abs))
            .collect::<Result<_, _>>()?;
    }
    Ok(out)
}

fn bounded(sys: &MuSystem, max_abs: Option<i64>) -> crate::solver::IntegerLinearSystem {
    let s = sys.to_integer_system();
    match max_abs {
        Some(m) => s.with_max_abs(m),
        None => s,
    }
}

/// Labels of a row subset that is infeasible and feasible after removing
/// any one row, found by deletion filtering over halving chunks.
pub fn irreducible_infeasible(sys: &MuSystem, max_abs: Option<i64>) -> Result<Vec<MuLabel>, MethodError> {
    let feasible = |keep: &[bool]| -> Result<bool, MethodError> {
        let mut s = sys.subsystem(|i| keep[i]);
        if let Some(m) = max_abs {
            s = s.with_max_abs(m);
        }
        match enumerate(&s, 1) {
            Ok(v) => Ok(!v.is_empty()),
            Err(SolverError::LimitExceeded { .. } | SolverError::Unbounded { .. }) => Ok(true),
            Err(e) => Err(e.into()),
        }
    };
    let mut keep = vec![true; sys.rows.len()];
    if feasible(&keep)? {
        return Ok(Vec::new());
    }
    let mut stack: Vec<Vec<usize>> = vec![(0..keep.len()).collect()];
    while let Some(chunk) = stack.pop() {
        for &i in &chunk {
            keep[i] = false;
        }
        if !feasible(&keep)? {
            continue;
        }
        for &i in &chunk {
            keep[i] = true;
        }
        if chunk.len() > 1 {
            let (a, b) = chunk.split_at(chunk.len() / 2);
            stack.push(b.to_vec());
            stack.push(a.to_vec());
        }
    }
    let mut labels: Vec<MuLabel> = Vec::new();
    for (i, r) in sys.rows.iter().enumerate() {
        if keep[i] {
            labels.extend(r.labels.iter().cloned());
        }
    }
    Ok(labels)
}

/// Element orders above 1, then the minimal divisors of the exponent that
/// are not element orders.
pub fn candidate_orders(table: &CharacterTable) -> Vec<u64> {
    let elems: BTreeSet<u64> = table.element_orders().into_iter().collect();
    let mut out: Vec<u64> = elems.iter().copied().filter(|&o| o > 1).collect();
    for d in divisors(table.exponent) {
        if d == 1 || elems.contains(&d) {
            continue;
        }
        let minimal = divisors(d).into_iter().all(|e| e == d || elems.contains(&e));
        if minimal {
            out.push(d);
        }
    }
    out
}

/// Ascending, so every proper divisor comes before its multiples.
pub fn processing_order(orders: &[u64]) -> Vec<u64> {
    let mut v = orders.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    Extra,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeGraphReport {
    pub primes: Vec<u64>,
    pub group_edges: Vec<(u64, u64)>,
    pub unit_edges: Vec<(u64, u64)>,
    /// edges of the unit graph that are not edges of the group graph
    pub extra_edges: Vec<(u64, u64)>,
    pub verdict: Verdict,
}

/// Compare the prime graph of the group with the one allowed for torsion units.
pub fn prime_graph_compare(table: &CharacterTable, results: &SolutionStore) -> Result<PrimeGraphReport, MethodError> {
    let orders = table.element_orders();
    let primes: Vec<u64> = orders.iter().copied().filter(|&o| is_prime(o)).collect();
    let mut group_edges = Vec::new();
    let mut unit_edges = Vec::new();
    let mut extra_edges = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if orders.iter().any(|o| o % (p * q) == 0) {
                group_edges.push((p, q));
                unit_edges.push((p, q));
                continue;
            }
            let set = results.get(p * q).ok_or(MethodError::IncompleteResults { p, q })?;
            if !set.is_empty() {
                unit_edges.push((p, q));
                extra_edges.push((p, q));
            }
        }
    }
    let verdict = if extra_edges.is_empty() { Verdict::Equal } else { Verdict::Extra };
    Ok(PrimeGraphReport { primes, group_edges, unit_edges, extra_edges, verdict })
}
