//! Fourier–Motzkin projections of `c + a·y ≥ 0` systems.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SolverError;

/// Hard cap on intermediate rows before giving up.
pub(crate) const MAX_FM_ROWS: usize = 250_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Ineq {
    pub a: Vec<BigInt>,
    pub c: BigInt,
}

#[derive(Clone)]
struct Tracked {
    a: Vec<BigInt>,
    c: BigInt,
    hist: Vec<u64>,
}

fn hist_union(x: &[u64], y: &[u64]) -> Vec<u64> {
    x.iter().zip(y).map(|(a, b)| a | b).collect()
}

fn hist_count(h: &[u64]) -> u32 {
    h.iter().map(|w| w.count_ones()).sum()
}

/// Divide by the content of `a` and round the constant down.
///
/// Returns `Err(())` for an infeasible constant row and `Ok(None)` for a
/// trivially true one.
fn normalize(mut a: Vec<BigInt>, c: BigInt) -> Result<Option<(Vec<BigInt>, BigInt)>, ()> {
    let g = a.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return if c.is_negative() { Err(()) } else { Ok(None) };
    }
    if g.is_one() {
        return Ok(Some((a, c)));
    }
    for x in &mut a {
        *x /= &g;
    }
    Ok(Some((a, c.div_floor(&g))))
}

/// Sequential projections for variables `0..nvars`.
///
/// `levels[i]` holds the rows of the projection onto `y_0..=y_i` whose
/// coefficient on `y_i` is non-zero; with `y_0..y_{i-1}` fixed they bound
/// `y_i`. Every integer point of the input satisfies every output row.
/// Returns `Ok(None)` when the system is infeasible.
pub(crate) fn project(rows: &[Ineq], nvars: usize) -> Result<Option<Vec<Vec<Ineq>>>, SolverError> {
    project_capped(rows, nvars, MAX_FM_ROWS)
}

pub(crate) fn project_capped(rows: &[Ineq], nvars: usize, cap: usize) -> Result<Option<Vec<Vec<Ineq>>>, SolverError> {
    let words = rows.len().div_ceil(64).max(1);
    let mut cur: Vec<Tracked> = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        match normalize(r.a.clone(), r.c.clone()) {
            Err(()) => return Ok(None),
            Ok(None) => {}
            Ok(Some((a, c))) => {
                let mut hist = vec![0u64; words];
                hist[k / 64] |= 1 << (k % 64);
                cur.push(Tracked { a, c, hist });
            }
        }
    }
    cur = dedup(cur);
    let mut levels: Vec<Vec<Ineq>> = vec![Vec::new(); nvars];
    for (step, j) in (0..nvars).rev().enumerate() {
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in cur {
            if r.a[j].is_positive() {
                pos.push(r);
            } else if r.a[j].is_negative() {
                neg.push(r);
            } else {
                next.push(r);
            }
        }
        levels[j] = pos.iter().chain(&neg).map(|r| Ineq { a: r.a.clone(), c: r.c.clone() }).collect();
        // rows combined so far must involve at most step + 2 originals
        let max_hist = step as u32 + 2;
        if step == 0 && next.len() + pos.len() * neg.len() > cap {
            return Err(SolverError::Blowup { rows: next.len() + pos.len() * neg.len() });
        }
        for p in &pos {
            for q in &neg {
                let hist = hist_union(&p.hist, &q.hist);
                if hist_count(&hist) > max_hist {
                    continue;
                }
                let (lp, lq) = (-&q.a[j], p.a[j].clone());
                let a: Vec<BigInt> = p.a.iter().zip(&q.a).map(|(x, y)| x * &lp + y * &lq).collect();
                let c = &p.c * &lp + &q.c * &lq;
                match normalize(a, c) {
                    Err(()) => return Ok(None),
                    Ok(None) => {}
                    Ok(Some((a, c))) => next.push(Tracked { a, c, hist }),
                }
            }
            if next.len() > cap {
                return Err(SolverError::Blowup { rows: next.len() });
            }
        }
        cur = dedup(next);
    }
    Ok(Some(levels))
}

/// Keep one row per coefficient vector, the one with the smallest constant.
fn dedup(rows: Vec<Tracked>) -> Vec<Tracked> {
    let mut best: HashMap<Vec<BigInt>, usize> = HashMap::new();
    let mut out: Vec<Tracked> = Vec::new();
    for r in rows {
        match best.get(&r.a) {
            Some(&i) => {
                if r.c < out[i].c || (r.c == out[i].c && hist_count(&r.hist) < hist_count(&out[i].hist)) {
                    out[i] = r;
                }
            }
            None => {
                best.insert(r.a.clone(), out.len());
                out.push(r);
            }
        }
    }
    out
}

/// Integer interval `[lo, hi]` of `y_i` given a fixed prefix, from level rows.
pub(crate) fn level_bounds(rows: &[Ineq], i: usize, prefix: &[BigInt]) -> (Option<BigInt>, Option<BigInt>, bool) {
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    let mut ok = true;
    for r in rows {
        let s = r.a[..i].iter().zip(prefix).fold(r.c.clone(), |acc, (a, y)| acc + a * y);
        let ai = &r.a[i];
        if ai.is_positive() {
            let b = (-s).div_ceil(ai);
            lo = Some(match lo {
                Some(l) if l >= b => l,
                _ => b,
            });
        } else if ai.is_negative() {
            let b = s.div_floor(&-ai);
            hi = Some(match hi {
                Some(h) if h <= b => h,
                _ => b,
            });
        } else if s.is_negative() {
            ok = false;
        }
    }
    (lo, hi, ok)
}
