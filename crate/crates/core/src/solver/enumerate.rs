//! Depth-first enumeration over the free parameters.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use num_integer::Integer;
use rayon::prelude::*;

use super::prepare::{prepare, Congruence, LevelRow, Prepared};
use super::system::IntegerLinearSystem;
use super::SolverError;

/// Arithmetic progression `first, first + step, …, ≤ last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Progression {
    pub first: i128,
    pub last: i128,
    pub step: i128,
}

impl Progression {
    pub fn len(&self) -> i128 {
        if self.first > self.last {
            0
        } else {
            (self.last - self.first) / self.step + 1
        }
    }

    pub fn nth(&self, i: i128) -> i128 {
        self.first + i * self.step
    }
}

/// Intersection of two residue classes, `None` if disjoint.
pub(crate) fn crt(a: (i128, i128), b: (i128, i128)) -> Option<(i128, i128)> {
    let ((r1, m1), (r2, m2)) = (a, b);
    let e = m1.extended_gcd(&m2);
    let g = e.gcd;
    let diff = r2 - r1;
    if diff % g != 0 {
        return None;
    }
    let l = m1 / g * m2;
    let m2g = m2 / g;
    let t = ((diff / g).rem_euclid(m2g) * e.x.rem_euclid(m2g)).rem_euclid(m2g);
    Some(((r1 + m1 * t).rem_euclid(l), l))
}

/// Residue class of `y` with `c + a·y ≡ 0 (mod m)`.
pub(crate) fn solve_linear(a: i128, c: i128, m: i128) -> Option<(i128, i128)> {
    let a = a.rem_euclid(m);
    let e = a.extended_gcd(&m);
    let g = e.gcd;
    let rhs = (-c).rem_euclid(m);
    if rhs % g != 0 {
        return None;
    }
    let mg = m / g;
    Some(((rhs / g % mg) * e.x.rem_euclid(mg) % mg, mg))
}

fn dot(a: &[i128], y: &[i128]) -> i128 {
    a.iter().zip(y).map(|(x, v)| x * v).sum()
}

/// Residue class of `y_i` imposed by the level congruences, given `y_0..y_{i-1}`.
pub(crate) fn level_class(congs: &[Congruence], i: usize, prefix: &[i128]) -> Option<(i128, i128)> {
    congs.iter().try_fold((0, 1), |acc, k| {
        let c = k.c + dot(&k.a[..i], prefix);
        crt(acc, solve_linear(k.a[i], c, k.m)?)
    })
}

/// Integer interval of `y_i` from the level rows; inner `None` when empty.
pub(crate) fn level_interval(
    rows: &[LevelRow],
    i: usize,
    prefix: &[i128],
) -> Result<Option<(i128, i128)>, SolverError> {
    let mut lo: Option<i128> = None;
    let mut hi: Option<i128> = None;
    for r in rows {
        let s = r.c + dot(&r.a[..i], prefix);
        let ai = r.a[i];
        if ai > 0 {
            let b = Integer::div_ceil(&-s, &ai);
            lo = Some(lo.map_or(b, |l| l.max(b)));
        } else if ai < 0 {
            let b = Integer::div_floor(&s, &-ai);
            hi = Some(hi.map_or(b, |h| h.min(b)));
        } else if s < 0 {
            return Ok(None);
        }
    }
    match (lo, hi) {
        (Some(lo), Some(hi)) => Ok((lo <= hi).then_some((lo, hi))),
        (None, _) => Err(SolverError::Unbounded { detail: format!("parameter {i} has no lower bound") }),
        (_, None) => Err(SolverError::Unbounded { detail: format!("parameter {i} has no upper bound") }),
    }
}

/// Admissible values of `y_i` given the prefix.
pub(crate) fn level_values(p: &Prepared, i: usize, prefix: &[i128]) -> Result<Option<Progression>, SolverError> {
    let Some((lo, hi)) = level_interval(&p.levels[i], i, prefix)? else {
        return Ok(None);
    };
    let Some((r, m)) = level_class(&p.congruences[i], i, prefix) else {
        return Ok(None);
    };
    let first = lo + (r - lo).rem_euclid(m);
    Ok(Some(Progression { first, last: hi, step: m }))
}

struct Collector<'a> {
    p: &'a Prepared,
    limit: usize,
    found: AtomicUsize,
    stop: AtomicBool,
}

impl Collector<'_> {
    fn push(&self, y: &[i128], out: &mut Vec<Vec<i64>>) -> Result<(), SolverError> {
        if self.found.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.stop.store(true, Ordering::Relaxed);
            return Err(SolverError::LimitExceeded { limit: self.limit });
        }
        let x = self
            .p
            .point(y)
            .into_iter()
            .map(|v| i64::try_from(v).map_err(|_| SolverError::Overflow))
            .collect::<Result<_, _>>()?;
        out.push(x);
        Ok(())
    }

    fn dfs(&self, i: usize, y: &mut Vec<i128>, out: &mut Vec<Vec<i64>>) -> Result<(), SolverError> {
        if self.stop.load(Ordering::Relaxed) {
            return Err(SolverError::LimitExceeded { limit: self.limit });
        }
        if i == self.p.f {
            return self.push(y, out);
        }
        let Some(prog) = level_values(self.p, i, y)? else {
            return Ok(());
        };
        for k in 0..prog.len() {
            y.push(prog.nth(k));
            let r = self.dfs(i + 1, y, out);
            y.pop();
            r?;
        }
        Ok(())
    }
}

/// Default cap on the number of solutions returned by [`enumerate`].
pub const DEFAULT_LIMIT: usize = 1_000_000;

/// All integer solutions, sorted lexicographically.
///
/// The top-level parameter range is split across the current rayon pool.
pub fn enumerate(sys: &IntegerLinearSystem, limit: usize) -> Result<Vec<Vec<i64>>, SolverError> {
    enumerate_prepared(&prepare(sys)?, limit)
}

pub(crate) fn enumerate_prepared(p: &Prepared, limit: usize) -> Result<Vec<Vec<i64>>, SolverError> {
    if p.infeasible {
        return Ok(Vec::new());
    }
    let col = Collector { p, limit, found: AtomicUsize::new(0), stop: AtomicBool::new(false) };
    let mut out = Vec::new();
    if p.f == 0 {
        col.push(&[], &mut out)?;
        return Ok(out);
    }
    let Some(top) = level_values(p, 0, &[])? else {
        return Ok(out);
    };
    let n = u64::try_from(top.len()).map_err(|_| SolverError::Overflow)?;
    let parts: Vec<Vec<Vec<i64>>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut y = vec![top.nth(k as i128)];
            let mut sub = Vec::new();
            col.dfs(1, &mut y, &mut sub)?;
            Ok(sub)
        })
        .collect::<Result<_, SolverError>>()?;
    out.extend(parts.into_iter().flatten());
    out.sort_unstable();
    Ok(out)
}
