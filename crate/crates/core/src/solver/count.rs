//! Exact solution counting.
//!
//! With at most two free parameters the count is assembled per residue class
//! from floor sums over the segments of the polygon; otherwise the search
//! tree is walked and the last level is counted directly.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::enumerate::{level_class, level_interval, level_values};
use super::prepare::{prepare, LevelRow, Prepared};
use super::system::IntegerLinearSystem;
use super::SolverError;

/// `Σ_{i=0}^{n-1} floor((a·i + b) / m)` for `m > 0`.
pub fn floor_sum(n: &BigInt, m: &BigInt, a: &BigInt, b: &BigInt) -> BigInt {
    assert!(m.is_positive(), "floor_sum needs a positive modulus");
    let mut ans = BigInt::zero();
    if !n.is_positive() {
        return ans;
    }
    let (mut n, mut m, mut a, mut b) = (n.clone(), m.clone(), a.clone(), b.clone());
    let two = BigInt::from(2);
    loop {
        let (qa, ra) = a.div_mod_floor(&m);
        if !qa.is_zero() {
            ans += &n * (&n - 1) / &two * &qa;
            a = ra;
        }
        let (qb, rb) = b.div_mod_floor(&m);
        if !qb.is_zero() {
            ans += &n * &qb;
            b = rb;
        }
        let y_max = &a * &n + &b;
        if y_max < m {
            return ans;
        }
        let (q, r) = y_max.div_rem(&m);
        n = q;
        b = r;
        std::mem::swap(&mut m, &mut a);
    }
}

/// Exact number of integer solutions.
pub fn count(sys: &IntegerLinearSystem) -> Result<BigUint, SolverError> {
    count_with(sys, None)
}

/// `count` with the floor-sum path used for every segment, however short.
pub fn count_floor_sum_only(sys: &IntegerLinearSystem) -> Result<BigUint, SolverError> {
    count_with(sys, Some(0))
}

/// `threshold`: segments with fewer parameter values are iterated directly
/// (default: the lcm of the moduli).
fn count_with(sys: &IntegerLinearSystem, threshold: Option<i128>) -> Result<BigUint, SolverError> {
    let p = prepare(sys)?;
    if p.infeasible {
        return Ok(BigUint::zero());
    }
    let total = match p.f {
        0 => BigInt::one(),
        1 => BigInt::from(last_level(&p, 0, &[])?),
        2 => count_planar(&p, threshold)?,
        _ => BigInt::from(walk(&p, 0, &mut Vec::new())?),
    };
    Ok(total.to_biguint().expect("counts are non-negative"))
}

fn last_level(p: &Prepared, i: usize, prefix: &[i128]) -> Result<u128, SolverError> {
    Ok(level_values(p, i, prefix)?.map_or(0, |g| g.len() as u128))
}

fn walk(p: &Prepared, i: usize, y: &mut Vec<i128>) -> Result<u128, SolverError> {
    if i + 1 == p.f {
        return last_level(p, i, y);
    }
    let Some(prog) = level_values(p, i, y)? else {
        return Ok(0);
    };
    let mut total = 0u128;
    for k in 0..prog.len() {
        y.push(prog.nth(k));
        let r = walk(p, i + 1, y);
        y.pop();
        total += r?;
    }
    Ok(total)
}

/// Level-1 row `c + a0·y0 + a1·y1 ≥ 0` viewed as a line in `y0`.
struct Line {
    a0: BigInt,
    a1: BigInt,
    c: BigInt,
}

impl Line {
    fn from_row(r: &LevelRow) -> Self {
        Line { a0: BigInt::from(r.a[0]), a1: BigInt::from(r.a[1]), c: BigInt::from(r.c) }
    }

    /// The value of `y1` where the row is tight.
    fn at(&self, y0: &BigRational) -> BigRational {
        -(BigRational::from_integer(self.c.clone()) + y0 * &self.a0) / &self.a1
    }

    fn meet(&self, o: &Line) -> Option<BigRational> {
        let den = &self.a0 * &o.a1 - &o.a0 * &self.a1;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(&o.c * &self.a1 - &self.c * &o.a1, den))
    }
}

fn count_planar(p: &Prepared, threshold: Option<i128>) -> Result<BigInt, SolverError> {
    let Some((lo0, hi0)) = level_interval(&p.levels[0], 0, &[])? else {
        return Ok(BigInt::zero());
    };
    let lines: Vec<Line> = p.levels[1].iter().map(Line::from_row).collect();
    if !lines.iter().any(|l| l.a1.is_negative()) {
        return Err(SolverError::Unbounded { detail: "parameter 1 has no upper bound".into() });
    }
    if !lines.iter().any(|l| l.a1.is_positive()) {
        return Err(SolverError::Unbounded { detail: "parameter 1 has no lower bound".into() });
    }
    let modulus = p.congruences.iter().flatten().fold(1i128, |m, k| m.lcm(&k.m));
    let threshold = threshold.unwrap_or(modulus);

    let (lo_q, hi_q) = (BigRational::from_integer(lo0.into()), BigRational::from_integer(hi0.into()));
    let mut cuts = vec![lo_q.clone(), hi_q.clone()];
    for (i, li) in lines.iter().enumerate() {
        for lj in &lines[i + 1..] {
            if let Some(x) = li.meet(lj) {
                if x > lo_q && x < hi_q {
                    cuts.push(x);
                }
            }
        }
    }
    cuts.sort();
    cuts.dedup();

    let mut total = BigInt::zero();
    for x in &cuts {
        if x.is_integer() {
            let y0 = x.to_integer().to_i128().ok_or(SolverError::Overflow)?;
            total += BigInt::from(column(p, y0)?);
        }
    }
    for w in cuts.windows(2) {
        let first = w[0].floor().to_integer() + BigInt::one();
        let last = w[1].ceil().to_integer() - BigInt::one();
        if first > last {
            continue;
        }
        let first = first.to_i128().ok_or(SolverError::Overflow)?;
        let last = last.to_i128().ok_or(SolverError::Overflow)?;
        if last - first + 1 < threshold {
            for y0 in first..=last {
                total += BigInt::from(column(p, y0)?);
            }
            continue;
        }
        let mid = (&w[0] + &w[1]) / BigRational::from_integer(BigInt::from(2));
        let upper = active(&lines, &mid, true);
        let lower = active(&lines, &mid, false);
        if upper.at(&mid) < lower.at(&mid) {
            continue;
        }
        total += segment(p, upper, lower, first, last, modulus)?;
    }
    Ok(total)
}

/// Solutions in the column `y0`.
fn column(p: &Prepared, y0: i128) -> Result<u128, SolverError> {
    if level_class(&p.congruences[0], 0, &[]).is_none_or(|(r, m)| (y0 - r).rem_euclid(m) != 0) {
        return Ok(0);
    }
    last_level(p, 1, &[y0])
}

/// The binding upper (`a1 < 0`) or lower (`a1 > 0`) line at `y0`.
fn active<'a>(lines: &'a [Line], y0: &BigRational, upper: bool) -> &'a Line {
    let mut it = lines.iter().filter(|l| l.a1.is_negative() == upper);
    let mut best = it.next().expect("both sides are present");
    let mut best_v = best.at(y0);
    for l in it {
        let v = l.at(y0);
        if (upper && v < best_v) || (!upper && v > best_v) {
            best = l;
            best_v = v;
        }
    }
    best
}

/// Solutions with `y0 ∈ [first, last]` between two fixed lines.
///
/// Per residue `r0` of `y0` modulo the lcm of all moduli, `y1` runs over a
/// fixed class `r2 (mod l2)` and the column count is
/// `floor((Xu − r2·du)/(du·l2)) + floor((Xl + r2·dl)/(dl·l2)) + 1`
/// with `Xu = c_u + a0_u·y0`, `du = −a1_u` and `Xl`, `dl = a1_l` alike.
fn segment(p: &Prepared, upper: &Line, lower: &Line, first: i128, last: i128, modulus: i128) -> Result<BigInt, SolverError> {
    let class0 = level_class(&p.congruences[0], 0, &[]);
    let du = -&upper.a1;
    let dl = lower.a1.clone();
    let lm = BigInt::from(modulus);
    let mut total = BigInt::zero();
    for r0 in 0..modulus {
        if class0.is_none_or(|(r, m)| (r0 - r).rem_euclid(m) != 0) {
            continue;
        }
        let Some((r2, l2)) = level_class(&p.congruences[1], 1, &[r0]) else {
            continue;
        };
        // y0 = base + modulus·s for s in 0..n
        let base = first + (r0 - first).rem_euclid(modulus);
        if base > last {
            continue;
        }
        let n = BigInt::from((last - base) / modulus + 1);
        let (base, r2, l2) = (BigInt::from(base), BigInt::from(r2), BigInt::from(l2));
        let up = floor_sum(
            &n,
            &(&du * &l2),
            &(&upper.a0 * &lm),
            &(&upper.c + &upper.a0 * &base - &r2 * &du),
        );
        let low = floor_sum(
            &n,
            &(&dl * &l2),
            &(&lower.a0 * &lm),
            &(&lower.c + &lower.a0 * &base + &r2 * &dl),
        );
        total += up + low + n;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(n: i64, m: i64, a: i64, b: i64) -> i64 {
        (0..n).map(|i| Integer::div_floor(&(a * i + b), &m)).sum()
    }

    #[test]
    fn floor_sum_matches_naive() {
        for n in 0..8 {
            for m in 1..7 {
                for a in -9..10 {
                    for b in -12..13 {
                        let got = floor_sum(&n.into(), &m.into(), &a.into(), &b.into());
                        assert_eq!(got, BigInt::from(naive(n, m, a, b)), "{n} {m} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn triangle_with_congruence() {
        // a + b + c = 1, a, b, c ≥ 0, b ≡ 0 (mod 2): (1,0,0), (0,0,1)
        let mut s = IntegerLinearSystem::new(vec!["a".into(), "b".into(), "c".into()]);
        s.add_equality(vec![1, 1, 1], 1);
        for j in 0..3 {
            let mut e = vec![0; 3];
            e[j] = 1;
            s.add_row(e, 0, 1, true);
        }
        s.add_row(vec![0, 1, 0], 0, 2, false);
        assert_eq!(count(&s).unwrap(), BigUint::from(2u32));
        assert_eq!(count_floor_sum_only(&s).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn large_triangle_closed_form() {
        // b ≥ −M, c ≥ −M, b + c ≤ M + 1 has (3M+2)(3M+3)/2 points
        let m = 1_000_000i64;
        let mut s = IntegerLinearSystem::new(vec!["b".into(), "c".into()]);
        s.add_row(vec![1, 0], m, 1, true).add_row(vec![0, 1], m, 1, true).add_row(vec![-1, -1], m + 1, 1, true);
        let want = BigUint::from(((3 * m + 2) * (3 * m + 3) / 2) as u64);
        assert_eq!(count(&s).unwrap(), want);
    }
}
