//! Traces of roots of unity (Ramanujan sums) and traces by linearity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cyclotomic::CyclotomicNumber;
use super::numtheory::{euler_phi, gcd, mobius, residue};

/// `Tr_{Q(ζ_n)/Q}(ζ_n^j) = μ(m)·φ(n)/φ(m)` with `m = n / gcd(j mod n, n)`.
pub fn root_trace(n: u64, j: i64) -> i64 {
    assert!(n >= 1, "root_trace is defined for n >= 1");
    let r = residue(j, n);
    let m = n / gcd(r, n);
    mobius(m) * (euler_phi(n) / euler_phi(m)) as i64
}

/// `root_trace(n, j)` for every residue `j`, computed once per conductor.
#[derive(Debug, Clone)]
pub struct RootTraces {
    n: u64,
    table: Vec<i64>,
}

impl RootTraces {
    pub fn new(n: u64) -> Self {
        let table = (0..n as i64).map(|j| root_trace(n, j)).collect();
        RootTraces { n, table }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn get(&self, j: i64) -> i64 {
        self.table[residue(j, self.n) as usize]
    }

    /// `Tr_{Q(ζ_n)/Q}(x · ζ_n^e)`.
    ///
    /// Returns `None` when the conductor of `x` does not divide `n`, so `x` is
    /// not known to lie in `Q(ζ_n)`.
    pub fn trace_times_root(&self, x: &CyclotomicNumber, e: i64) -> Option<BigRational> {
        let c = x.conductor();
        if self.n % c != 0 {
            return None;
        }
        let step = (self.n / c) as i64;
        let mut acc = BigRational::zero();
        for (j, a) in x.coefficients().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let t = self.get(j as i64 * step + e);
            if t != 0 {
                acc += a * BigRational::from_integer(BigInt::from(t));
            }
        }
        Some(acc)
    }
}

/// Trace from the conductor field of `x` down to Q.
pub fn trace_to_rationals(x: &CyclotomicNumber) -> BigRational {
    let n = x.conductor();
    let mut acc = BigRational::zero();
    for (j, a) in x.coefficients().iter().enumerate() {
        if !a.is_zero() {
            acc += a * BigRational::from_integer(BigInt::from(root_trace(n, j as i64)));
        }
    }
    acc
}
