use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{QMat, QSubspace, QVec, Rational};
use crate::error::{Error, Result};

/// The full solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: QVec,
    pub kernel: QSubspace,
}

/// Solves `A x = b` exactly. Rows are cleared to integers and reduced with
/// Bareiss fraction-free elimination; only the final back substitution
/// divides. Returns `Ok(None)` for an inconsistent system.
pub fn solve_linear(a: &QMat, b: &QVec) -> Result<Option<Solution>> {
    if a.rows() != b.dim() {
        return Err(Error::dim(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.dim()
        )));
    }
    let (m, n) = (a.rows(), a.cols());
    let mut t: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            let mut row: Vec<&Rational> = a.row_slice(i).iter().collect();
            row.push(&b[i]);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !t[i][c].is_zero()) else {
            continue;
        };
        t.swap(p, r);
        for i in r + 1..m {
            for j in c + 1..=n {
                let v = (&t[r][c] * &t[i][j] - &t[i][c] * &t[r][j]) / &prev;
                t[i][j] = v;
            }
            t[i][c] = BigInt::zero();
        }
        prev = t[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    if t[r..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }

    let mut x = vec![Rational::zero(); n];
    for (i, &pc) in pivots.iter().enumerate().rev() {
        let mut acc = Rational::from_int(t[i][n].clone());
        for j in pc + 1..n {
            if !t[i][j].is_zero() {
                acc -= &(Rational::from_int(t[i][j].clone()) * &x[j]);
            }
        }
        x[pc] = acc / Rational::from_int(t[i][pc].clone());
    }
    Ok(Some(Solution { particular: QVec::new(x), kernel: QSubspace::kernel_of(a) }))
}

impl QMat {
    pub(crate) fn row_slice(&self, i: usize) -> &[Rational] {
        &self.entries()[i * self.cols()..(i + 1) * self.cols()]
    }
}
