//! Exact rational and cyclotomic arithmetic.

mod cyclotomic;
mod numtheory;
mod poly;
mod trace;

pub use cyclotomic::{root_of_unity, ArithError, CyclotomicNumber};
pub use numtheory::{
    divisors, euler_phi, factorize, gcd, is_prime, lcm, mobius, prime_divisors, prime_power,
    residue,
};
pub use poly::{cyclotomic_polynomial, IntPoly};
pub use trace::{root_trace, trace_to_rationals, RootTraces};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Embed a rational into Q(ζ_n).
pub fn embed(q: Rational, n: u64) -> CyclotomicNumber {
    CyclotomicNumber::from_rational(q).lift(n)
}
