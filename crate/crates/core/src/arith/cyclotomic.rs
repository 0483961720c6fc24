//! Elements of Q(ζ_n) in the power basis modulo Φ_n.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::numtheory::{divisors, euler_phi, gcd, lcm, residue};
use super::poly::cyclotomic_kernel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("automorphism exponent {d} is not coprime to conductor {n}")]
    NonCoprimeAutomorphism { d: i64, n: u64 },
}

/// `Σ_{j<φ(n)} a_j ζ_n^j`, reduced modulo Φ_n.
///
/// The conductor is whatever field the value was built in; it is only
/// shrunk by [`CyclotomicNumber::minimize`]. Equality compares at the lcm.
#[derive(Clone)]
pub struct CyclotomicNumber {
    n: u64,
    coeffs: Vec<BigRational>,
}

/// Reduce a dense polynomial in ζ_n (any length) modulo Φ_n.
fn reduce(n: u64, mut a: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_kernel(n);
    let deg = phi.len() - 1;
    if a.len() > deg {
        for i in (deg..a.len()).rev() {
            if a[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut a[i], BigRational::zero());
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    a[i - deg + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                }
            }
        }
    }
    a.resize(deg, BigRational::zero());
    a
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber { n: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CyclotomicNumber { n: 1, coeffs: vec![q] }
    }

    /// `Σ c · ζ_n^e` over the given terms, exponents taken mod `n`.
    pub fn from_terms<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(n >= 1, "conductor must be positive");
        let mut dense = vec![BigRational::zero(); n as usize];
        for (e, c) in terms {
            dense[residue(e, n) as usize] += c;
        }
        CyclotomicNumber { n, coeffs: reduce(n, dense) }
    }

    /// Power-basis coefficients; length φ(conductor).
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// True when every power-basis coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// The same element written in Q(ζ_m); `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m % self.n == 0, "cannot lift conductor {} to {}", self.n, m);
        if m == self.n {
            return self.clone();
        }
        let step = (m / self.n) as usize;
        let mut dense = vec![BigRational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            dense[j * step] = c.clone();
        }
        CyclotomicNumber { n: m, coeffs: reduce(m, dense) }
    }

    /// Image under ζ ↦ ζ^d.
    pub fn galois_apply(&self, d: i64) -> Result<Self, ArithError> {
        let n = self.n;
        if n == 1 {
            return Ok(self.clone());
        }
        let dr = residue(d, n);
        if gcd(dr, n) != 1 {
            return Err(ArithError::NonCoprimeAutomorphism { d, n });
        }
        let mut dense = vec![BigRational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            dense[((j as u64 * dr) % n) as usize] += c;
        }
        Ok(CyclotomicNumber { n, coeffs: reduce(n, dense) })
    }

    /// Complex conjugate, ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit modulo every conductor")
    }

    /// Rewrite in the smallest cyclotomic field containing the value.
    pub fn minimize(&self) -> Self {
        for d in divisors(self.n) {
            if d == self.n {
                break;
            }
            if d % 4 == 2 {
                continue;
            }
            if let Some(x) = self.descend(d) {
                return x;
            }
        }
        self.clone()
    }

    /// Solve `lift(y, n) = self` for `y ∈ Q(ζ_d)` by Gaussian elimination.
    fn descend(&self, d: u64) -> Option<Self> {
        let rows = self.coeffs.len();
        let cols = euler_phi(d) as usize;
        let basis: Vec<Vec<BigRational>> = (0..cols)
            .map(|j| {
                let mut e = vec![BigRational::zero(); d as usize];
                e[j] = BigRational::one();
                CyclotomicNumber { n: d, coeffs: reduce(d, e) }.lift(self.n).coeffs
            })
            .collect();
        // augmented matrix rows x (cols + 1)
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|i| {
                let mut r: Vec<BigRational> = basis.iter().map(|b| b[i].clone()).collect();
                r.push(self.coeffs[i].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for v in m[r].iter_mut() {
                *v *= &inv;
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for k in c..=cols {
                        let t = &f * &m[r][k];
                        m[i][k] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if m[r..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut y = vec![BigRational::zero(); cols];
        for (i, &c) in pivots.iter().enumerate() {
            y[c] = m[i][cols].clone();
        }
        Some(CyclotomicNumber { n: d, coeffs: y })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Sparse `(exponent, coefficient)` list of the non-zero power-basis terms.
    pub fn terms(&self) -> Vec<(u64, BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (j as u64, c.clone()))
            .collect()
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.n, other.n);
        (self.lift(m), other.lift(m))
    }
}

pub fn root_of_unity(n: u64, j: i64) -> CyclotomicNumber {
    CyclotomicNumber::from_terms(n, [(j, BigRational::one())])
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: Self) -> CyclotomicNumber {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: Self) -> CyclotomicNumber {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: Self) -> CyclotomicNumber {
        let (a, b) = self.common(rhs);
        let n = a.n;
        let mut dense = vec![BigRational::zero(); n as usize];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    dense[(i + j) % n as usize] += x * y;
                }
            }
        }
        CyclotomicNumber { n, coeffs: reduce(n, dense) }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: Self) -> CyclotomicNumber {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*j, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "z{}^{}", self.n, j)?,
                (_, false) => write!(f, "{abs}*z{}^{}", self.n, j)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn roots() {
        assert_eq!(root_of_unity(5, 0), CyclotomicNumber::one());
        assert_eq!(root_of_unity(4, 2), CyclotomicNumber::from_integer(-1));
        assert_eq!(root_of_unity(5, 7), root_of_unity(5, 2));
        assert_eq!(root_of_unity(5, 7).coefficients(), root_of_unity(5, 2).coefficients());
    }

    #[test]
    fn arithmetic() {
        let z5 = root_of_unity(5, 1);
        assert!((&z5 + &(-&z5)).is_zero());
        let i = root_of_unity(4, 1);
        assert_eq!(&i * &i, CyclotomicNumber::from_integer(-1));
        let a = &CyclotomicNumber::one() + &root_of_unity(3, 1);
        let b = &CyclotomicNumber::one() + &root_of_unity(3, 2);
        assert_eq!(&a * &b, CyclotomicNumber::one());
    }

    #[test]
    fn galois() {
        assert_eq!(root_of_unity(5, 1).galois_apply(2).unwrap(), root_of_unity(5, 2));
        let r = CyclotomicNumber::from_rational(BigRational::new(2.into(), 3.into()));
        assert_eq!(r.galois_apply(4).unwrap(), r);
        let z6 = root_of_unity(6, 1);
        let img = z6.galois_apply(5).unwrap();
        // ζ₆⁵ = ζ₆⁻¹ = 1 − ζ₆ modulo x² − x + 1
        assert_eq!(img.conductor(), 6);
        assert_eq!(img.coefficients(), &[q(1), q(-1)]);
        assert_eq!(
            z6.galois_apply(3),
            Err(ArithError::NonCoprimeAutomorphism { d: 3, n: 6 })
        );
    }

    #[test]
    fn minimize_finds_the_conductor() {
        assert_eq!(root_of_unity(6, 1).minimize().conductor(), 3);
        assert_eq!(root_of_unity(12, 4).minimize().conductor(), 3);
        assert_eq!(root_of_unity(12, 3).minimize().conductor(), 4);
        assert_eq!(root_of_unity(12, 6).minimize().conductor(), 1);
        let s5 = &root_of_unity(5, 1) + &root_of_unity(5, 4);
        assert_eq!(s5.lift(15).minimize().conductor(), 5);
        assert_eq!(s5.lift(15).minimize(), s5);
        let m = root_of_unity(1, 0).lift(30).minimize();
        assert_eq!(m.conductor(), 1);
        assert_eq!(m.as_integer(), Some(1.into()));
    }

    #[test]
    fn display() {
        let x = &root_of_unity(5, 2).scale_int(-3) + &CyclotomicNumber::from_integer(2);
        assert_eq!(x.to_string(), "2 - 3*z5^2");
        assert_eq!(CyclotomicNumber::zero().to_string(), "0");
    }
}
