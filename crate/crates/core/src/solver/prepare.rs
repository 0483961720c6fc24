//! Reduction of a system to free parameters with per-level bounds and congruences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::fm::{self, Ineq};
use super::lattice::parametrize;
use super::system::IntegerLinearSystem;
use super::SolverError;

/// Free variables beyond which Fourier–Motzkin is not attempted.
pub const FM_MAX_FREE: usize = 8;

#[derive(Debug, Clone)]
pub(crate) struct LevelRow {
    pub a: Vec<i128>,
    pub c: i128,
}

/// `c + a·y ≡ 0 (mod m)` with `a_level` its last non-zero entry.
#[derive(Debug, Clone)]
pub(crate) struct Congruence {
    pub a: Vec<i128>,
    pub c: i128,
    pub m: i128,
}

#[derive(Debug, Clone)]
pub(crate) struct Prepared {
    pub f: usize,
    pub x0: Vec<i128>,
    pub t: Vec<Vec<i128>>,
    pub levels: Vec<Vec<LevelRow>>,
    pub congruences: Vec<Vec<Congruence>>,
    pub infeasible: bool,
}

fn to_i128(x: &BigInt) -> Result<i128, SolverError> {
    x.to_i128().ok_or(SolverError::Overflow)
}

impl Prepared {
    fn empty(n: usize) -> Self {
        Prepared {
            f: 0,
            x0: vec![0; n],
            t: vec![Vec::new(); n],
            levels: Vec::new(),
            congruences: Vec::new(),
            infeasible: true,
        }
    }

    /// Original coordinates of the parameter point `y`.
    pub fn point(&self, y: &[i128]) -> Vec<i128> {
        self.x0
            .iter()
            .zip(&self.t)
            .map(|(&x, row)| row.iter().zip(y).fold(x, |acc, (&t, &v)| acc + t * v))
            .collect()
    }
}

/// Rows of the system (and its bounds) over the free parameters.
pub(crate) struct Reduced {
    pub x0: Vec<BigInt>,
    pub t: Vec<Vec<BigInt>>,
    pub ineqs: Vec<Ineq>,
    pub congs: Vec<(Vec<BigInt>, BigInt, u64)>,
}

pub(crate) fn reduce(sys: &IntegerLinearSystem) -> Option<Reduced> {
    let n = sys.dim();
    let p = parametrize(n, &sys.equalities)?;
    let f = p.free();
    let subst = |coeffs: &[BigInt], c: &BigInt| -> (Vec<BigInt>, BigInt) {
        let mut a = vec![BigInt::zero(); f];
        let mut k = c.clone();
        for (j, cj) in coeffs.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            k += cj * &p.x0[j];
            for (ak, tk) in a.iter_mut().zip(&p.t[j]) {
                *ak += cj * tk;
            }
        }
        (a, k)
    };
    let mut ineqs = Vec::new();
    let mut congs = Vec::new();
    for r in &sys.rows {
        let coeffs: Vec<BigInt> = r.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let (a, c) = subst(&coeffs, &BigInt::from(r.constant));
        if r.modulus > 1 {
            congs.push((a.clone(), c.clone(), r.modulus));
        }
        if r.nonneg {
            ineqs.push(Ineq { a, c });
        }
    }
    for (j, b) in sys.bounds.iter().enumerate() {
        if let Some((lo, hi)) = *b {
            let mut e = vec![BigInt::zero(); n];
            e[j] = BigInt::from(1);
            let (a, c) = subst(&e, &BigInt::from(-lo));
            ineqs.push(Ineq { a, c });
            e[j] = BigInt::from(-1);
            let (a, c) = subst(&e, &BigInt::from(hi));
            ineqs.push(Ineq { a, c });
        }
    }
    Some(Reduced { x0: p.x0, t: p.t, ineqs, congs })
}

pub(crate) fn prepare(sys: &IntegerLinearSystem) -> Result<Prepared, SolverError> {
    prepare_capped(sys, fm::MAX_FM_ROWS)
}

fn prepare_capped(sys: &IntegerLinearSystem, cap: usize) -> Result<Prepared, SolverError> {
    let n = sys.dim();
    let Some(red) = reduce(sys) else {
        return Ok(Prepared::empty(n));
    };
    let f = red.t.first().map_or(0, Vec::len);
    let level_ineqs: Vec<Vec<Ineq>> = if f <= FM_MAX_FREE {
        match project_or_relax(&red.ineqs, f, cap)? {
            Some(lv) => lv,
            None => return Ok(Prepared::empty(n)),
        }
    } else if sys.has_bounds() {
        match triangular(&red.ineqs, f) {
            Some(lv) => lv,
            None => return Ok(Prepared::empty(n)),
        }
    } else {
        return Err(SolverError::TooManyFreeVariables { free: f, max: FM_MAX_FREE });
    };
    let mut levels = Vec::with_capacity(f);
    for rows in level_ineqs {
        let mut lv = Vec::with_capacity(rows.len());
        for r in rows {
            lv.push(LevelRow {
                a: r.a.iter().map(to_i128).collect::<Result<_, _>>()?,
                c: to_i128(&r.c)?,
            });
        }
        levels.push(lv);
    }
    let mut congruences: Vec<Vec<Congruence>> = vec![Vec::new(); f];
    for (a, c, m) in &red.congs {
        let mb = BigInt::from(*m);
        let a: Vec<i128> = a.iter().map(|x| to_i128(&x.mod_floor(&mb))).collect::<Result<_, _>>()?;
        let c = to_i128(&c.mod_floor(&mb))?;
        match a.iter().rposition(|&x| x != 0) {
            Some(l) => congruences[l].push(Congruence { a, c, m: *m as i128 }),
            None if c != 0 => return Ok(Prepared::empty(n)),
            None => {}
        }
    }
    Ok(Prepared {
        f,
        x0: red.x0.iter().map(to_i128).collect::<Result<_, _>>()?,
        t: red.t.iter().map(|r| r.iter().map(to_i128).collect::<Result<_, _>>()).collect::<Result<_, _>>()?,
        levels,
        congruences,
        infeasible: false,
    })
}

/// Rows grouped by their last non-zero parameter, without elimination.
fn triangular(rows: &[Ineq], f: usize) -> Option<Vec<Vec<Ineq>>> {
    let mut out = vec![Vec::new(); f];
    for r in rows {
        match r.a.iter().rposition(|x| !x.is_zero()) {
            Some(l) => out[l].push(r.clone()),
            None if r.c < BigInt::zero() => return None,
            None => {}
        }
    }
    Some(out)
}

/// Project every row, or, if that blows up, project a spread-out subset and
/// check the remaining rows at the level of their last parameter.
fn project_or_relax(rows: &[Ineq], f: usize, cap: usize) -> Result<Option<Vec<Vec<Ineq>>>, SolverError> {
    let err = match fm::project_capped(rows, f, cap) {
        Err(e @ SolverError::Blowup { .. }) => e,
        other => return other,
    };
    let mut size = 8;
    while size < rows.len() {
        let stride = rows.len() as f64 / size as f64;
        let subset: Vec<Ineq> = (0..size).map(|i| rows[(i as f64 * stride) as usize].clone()).collect();
        let Some(mut lv) = fm::project_capped(&subset, f, cap)? else {
            return Ok(None);
        };
        let bounded = lv.iter().enumerate().all(|(i, r)| {
            r.iter().any(|x| x.a[i].is_positive()) && r.iter().any(|x| x.a[i].is_negative())
        });
        if bounded {
            let Some(all) = triangular(rows, f) else {
                return Ok(None);
            };
            for (level, extra) in lv.iter_mut().zip(all) {
                level.extend(extra);
            }
            return Ok(Some(lv));
        }
        size *= 2;
    }
    Err(err)
}
