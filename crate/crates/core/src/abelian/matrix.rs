//! Dense integer matrices over `i64`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::arith::axpy;
use crate::error::{Error, Result};

/// Row-major dense matrix over `i64`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    /// Builds a matrix from rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::WidthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::WidthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = axpy(out[(i, j)], a, other[(k, j)])?;
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> Result<i64> {
        if self.rows != self.cols {
            return Err(Error::WidthMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k * n + k] == 0 {
                let Some(swap) = (k + 1..n).find(|&i| m[i * n + k] != 0) else {
                    return Ok(0);
                };
                for j in 0..n {
                    m.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[i * n + j]
                        .checked_mul(m[k * n + k])
                        .and_then(|a| {
                            m[i * n + k]
                                .checked_mul(m[k * n + j])
                                .and_then(|b| a.checked_sub(b))
                        })
                        .ok_or(Error::Overflow("determinant"))?;
                    m[i * n + j] = v / prev;
                }
            }
            prev = m[k * n + k];
        }
        i64::try_from(sign * m[n * n - 1]).map_err(|_| Error::Overflow("determinant"))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::smith::{smith_normal_form, Smith};

    fn check(a: &IntMatrix) -> Smith {
        let r = smith_normal_form(a).unwrap();
        let prod = r.u.checked_mul(a).unwrap().checked_mul(&r.v).unwrap();
        assert_eq!(prod, r.s);
        assert_eq!(
            r.v.checked_mul(&r.v_inv).unwrap(),
            IntMatrix::identity(a.cols())
        );
        r
    }

    #[test]
    fn identity_is_fixed() {
        let a = IntMatrix::identity(2);
        let r = check(&a);
        assert_eq!(r.s, a);
        assert_eq!(r.u, a);
        assert_eq!(r.v, a);
    }

    #[test]
    fn two_by_two() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]).unwrap();
        assert_eq!(check(&a).diagonal(), vec![2, 4]);
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zeros(2, 2);
        let r = check(&a);
        assert_eq!(r.s, a);
        assert_eq!(r.u, IntMatrix::identity(2));
        assert_eq!(r.v, IntMatrix::identity(2));
    }

    #[test]
    fn rectangular_and_chain() {
        let a = IntMatrix::from_rows(&[[2, 0, 0], [0, 3, 0]]).unwrap();
        assert_eq!(check(&a).diagonal(), vec![1, 6]);
        let a = IntMatrix::from_rows(&[[4], [6], [10]]).unwrap();
        assert_eq!(check(&a).diagonal(), vec![2]);
    }

    #[test]
    fn overflow_surfaces() {
        let big = i64::MAX / 2 + 7;
        let a = IntMatrix::from_rows(&[[big, 0], [0, big - 1]]).unwrap();
        assert!(matches!(smith_normal_form(&a), Err(Error::Overflow(_))));
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_rows(&[[2, 4], [6, 8]]).unwrap();
        assert_eq!(a.determinant().unwrap(), -8);
        let a = IntMatrix::from_rows(&[[0, 1, 2], [1, 0, 3], [4, -3, 8]]).unwrap();
        assert_eq!(a.determinant().unwrap(), -2);
    }
}
