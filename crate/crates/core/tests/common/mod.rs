//! Exact checks shared by the integration tests.

#![allow(dead_code)]

use isogenous::abelian::{IntMatrix, Smith};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Big = Vec<Vec<BigInt>>;

pub fn big(m: &IntMatrix) -> Big {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| BigInt::from(m[(i, j)])).collect()).collect()
}

pub fn mul(a: &Big, b: &Big, inner: usize) -> Big {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum()).collect())
        .collect()
}

/// Determinant by Bareiss elimination.
pub fn det(m: &Big) -> BigInt {
    let n = m.len();
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]).div_floor(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Checks `U A V = S`, unimodularity, `V V^{-1} = I`, diagonal shape and
/// the divisibility chain. Returns a description of the first failure.
pub fn check_smith(a: &IntMatrix, s: &Smith) -> Result<(), String> {
    let (m, n) = (a.rows(), a.cols());
    if mul(&mul(&big(&s.u), &big(a), m), &big(&s.v), n) != big(&s.s) {
        return Err("U A V != S".into());
    }
    let id: Big = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
    if mul(&big(&s.v), &big(&s.v_inv), n) != id {
        return Err("V V^-1 != I".into());
    }
    if !det(&big(&s.u)).abs().is_one() || !det(&big(&s.v)).abs().is_one() {
        return Err("transform is not unimodular".into());
    }
    for i in 0..m {
        for j in 0..n {
            if i != j && s.s[(i, j)] != 0 {
                return Err(format!("off-diagonal entry at ({i}, {j})"));
            }
        }
    }
    for w in s.diagonal().windows(2) {
        let divides = if w[0] == 0 { w[1] == 0 } else { w[1] % w[0] == 0 };
        if w[0] < 0 || w[1] < 0 || !divides {
            return Err(format!("diagonal {:?} is not a divisibility chain", s.diagonal()));
        }
    }
    Ok(())
}
