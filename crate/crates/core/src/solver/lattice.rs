//! Integer parametrization of the solution lattice of the equalities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::system::Equality;

/// All integer solutions of the equalities are `x0 + T·y` for `y ∈ Z^f`.
#[derive(Debug, Clone)]
pub(crate) struct Parametrization {
    pub x0: Vec<BigInt>,
    /// `n` rows of length `f`
    pub t: Vec<Vec<BigInt>>,
}

impl Parametrization {
    pub fn free(&self) -> usize {
        self.t.first().map_or(0, Vec::len)
    }
}

/// Unimodular column reduction `A·U = [H | 0]` with `H` lower echelon.
///
/// Returns `None` when the equalities have no integer solution.
pub(crate) fn parametrize(n: usize, eqs: &[Equality]) -> Option<Parametrization> {
    let mut a: Vec<Vec<BigInt>> = eqs
        .iter()
        .map(|e| e.coeffs.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let b: Vec<BigInt> = eqs.iter().map(|e| BigInt::from(e.constant)).collect();
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let col_axpy = |m: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
        for row in m.iter_mut() {
            let t = &row[src] * q;
            row[dst] -= t;
        }
    };
    let col_swap = |m: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut piv = 0usize;
    let mut pivot_of: Vec<Option<usize>> = vec![None; eqs.len()];
    for i in 0..eqs.len() {
        loop {
            let nz: Vec<usize> = (piv..n).filter(|&c| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let &c0 = nz.iter().min_by_key(|&&c| (a[i][c].abs(), c)).expect("nonempty");
            if nz.len() == 1 {
                col_swap(&mut a, piv, c0);
                col_swap(&mut u, piv, c0);
                pivot_of[i] = Some(piv);
                piv += 1;
                break;
            }
            for &c in &nz {
                if c != c0 {
                    let q = a[i][c].div_floor(&a[i][c0]);
                    col_axpy(&mut a, c, c0, &q);
                    col_axpy(&mut u, c, c0, &q);
                }
            }
        }
    }
    let mut z = vec![BigInt::zero(); piv];
    for i in 0..eqs.len() {
        let mut s = b[i].clone();
        let upto = pivot_of[i].unwrap_or(piv);
        for (c, zc) in z.iter().enumerate().take(upto) {
            s -= &a[i][c] * zc;
        }
        match pivot_of[i] {
            Some(p) => {
                let (q, r) = s.div_rem(&a[i][p]);
                if !r.is_zero() {
                    return None;
                }
                z[p] = q;
            }
            None => {
                if !s.is_zero() {
                    return None;
                }
            }
        }
    }
    let x0 = (0..n)
        .map(|r| (0..piv).fold(BigInt::zero(), |acc, c| acc + &u[r][c] * &z[c]))
        .collect();
    let t = u.into_iter().map(|row| row[piv..].to_vec()).collect();
    Some(Parametrization { x0, t })
}
