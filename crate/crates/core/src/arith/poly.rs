//! Cyclotomic polynomials.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::numtheory::{divisors, mobius};

/// Integer polynomial as coefficients from the constant term upward.
pub type IntPoly = Vec<BigInt>;

/// Φ_n built by dividing `x^n − 1` exactly by Φ_d for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic_polynomial is defined for n >= 1");
    let mut cache: Vec<(u64, IntPoly)> = Vec::new();
    for d in divisors(n) {
        let mut p = x_pow_minus_one(d as usize);
        for (e, phi_e) in &cache {
            if d % e == 0 {
                p = div_exact(&p, phi_e);
            }
        }
        cache.push((d, p));
    }
    cache.pop().map(|(_, p)| p).unwrap_or_default()
}

fn x_pow_minus_one(d: usize) -> IntPoly {
    let mut p = vec![BigInt::zero(); d + 1];
    p[0] = -BigInt::one();
    p[d] = BigInt::one();
    p
}

/// Quotient of `a` by a monic `b`; panics on a non-zero remainder.
fn div_exact(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = a.clone();
    if r.len() <= db {
        assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i - db + j] -= &c * bj;
        }
        q[i - db] = c;
    }
    assert!(r.iter().all(Zero::is_zero), "inexact polynomial division");
    q
}

/// Φ_n as `Π_{d|n} (x^d − 1)^{μ(n/d)}`, in machine integers.
///
/// This is the form the reduction kernel uses. It multiplies every factor with
/// μ = +1 before dividing out the μ = −1 factors, so each step is exact.
pub(crate) fn cyclotomic_kernel(n: u64) -> Vec<i64> {
    let mut p: Vec<i64> = vec![1];
    let ds = divisors(n);
    for &d in &ds {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i64; p.len() + d];
            for (i, &c) in p.iter().enumerate() {
                next[i] -= c;
                next[i + d] += c;
            }
            p = next;
        }
    }
    for &d in &ds {
        if mobius(n / d) == -1 {
            // divide by x^d − 1 from the top: q_i = p_{i+d} + q_{i+d}
            let d = d as usize;
            let deg = p.len() - 1;
            let mut q = vec![0i64; deg + 1 - d];
            for i in (0..q.len()).rev() {
                let above = if i + d < q.len() { q[i + d] } else { 0 };
                q[i] = p[i + d] + above;
            }
            p = q;
        }
    }
    p
}
