use num_bigint::BigInt;
use num_rational::BigRational;

use super::fm;
use super::prepare::{reduce, FM_MAX_FREE};
use super::system::IntegerLinearSystem;
use super::SolverError;

/// Exact value of one row at an assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCheck {
    pub value: i128,
    /// `value / modulus`, the μ value for generated systems
    pub quotient: BigRational,
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub equalities: Vec<bool>,
    pub rows: Vec<RowCheck>,
    pub in_bounds: bool,
}

impl Verification {
    pub fn all_admissible(&self) -> bool {
        self.in_bounds && self.equalities.iter().all(|&e| e) && self.rows.iter().all(|r| r.admissible)
    }

    pub fn failing_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().enumerate().filter(|(_, r)| !r.admissible).map(|(i, _)| i)
    }
}

/// Recompute every row of `sys` at `x`.
pub fn verify_solution(sys: &IntegerLinearSystem, x: &[i64]) -> Verification {
    assert_eq!(x.len(), sys.dim(), "assignment must cover every variable");
    let rows = sys
        .rows
        .iter()
        .map(|r| {
            let value = r.eval(x);
            RowCheck {
                value,
                quotient: BigRational::new(BigInt::from(value), BigInt::from(r.modulus)),
                admissible: r.admits(x),
            }
        })
        .collect();
    let in_bounds = sys
        .bounds
        .iter()
        .zip(x)
        .all(|(b, &v)| b.is_none_or(|(lo, hi)| lo <= v && v <= hi));
    Verification { equalities: sys.equalities.iter().map(|e| e.holds(x)).collect(), rows, in_bounds }
}

/// Integer intervals containing every solution, ignoring congruences.
///
/// Returns `Ok(None)` when the system has no solution.
pub fn derive_bounds(sys: &IntegerLinearSystem) -> Result<Option<Vec<(i64, i64)>>, SolverError> {
    let Some(red) = reduce(sys) else {
        return Ok(None);
    };
    let f = red.t.first().map_or(0, Vec::len);
    if f > FM_MAX_FREE {
        return sys
            .bounds
            .iter()
            .enumerate()
            .map(|(j, b)| {
                b.ok_or_else(|| SolverError::Unbounded {
                    detail: format!("{} needs an explicit bound", sys.variables[j]),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some);
    }
    let mut out = Vec::with_capacity(sys.dim());
    for (j, name) in sys.variables.iter().enumerate() {
        // variable 0 is x_j, tied to the parameters by x_j = x0_j + T_j·y
        let mut rows: Vec<fm::Ineq> = red
            .ineqs
            .iter()
            .map(|r| {
                let mut a = vec![BigInt::from(0)];
                a.extend(r.a.iter().cloned());
                fm::Ineq { a, c: r.c.clone() }
            })
            .collect();
        let mut tie: Vec<BigInt> = vec![BigInt::from(1)];
        tie.extend(red.t[j].iter().map(|v| -v));
        rows.push(fm::Ineq { a: tie.clone(), c: -&red.x0[j] });
        rows.push(fm::Ineq { a: tie.iter().map(|v| -v).collect(), c: red.x0[j].clone() });
        let Some(levels) = fm::project(&rows, f + 1)? else {
            return Ok(None);
        };
        let (lo, hi, ok) = fm::level_bounds(&levels[0], 0, &[]);
        if !ok {
            return Ok(None);
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(SolverError::Unbounded { detail: format!("{name} has no finite interval") });
        };
        if lo > hi {
            return Ok(None);
        }
        let conv = |v: BigInt| i64::try_from(v).map_err(|_| SolverError::Overflow);
        out.push((conv(lo)?, conv(hi)?));
    }
    Ok(Some(out))
}
