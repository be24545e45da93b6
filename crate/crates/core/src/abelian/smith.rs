//! Smith normal form with transformation matrices.
//!
//! The reduction runs on big integers: alternate row and column Hermite
//! passes until the matrix is diagonal, then repair the divisibility chain
//! with 2x2 gcd/lcm steps. Naive pivoting lets `U` and `V` grow
//! exponentially, so the transforms are size-reduced afterwards using the
//! freedom they have (kernel rows, and pairs of equal invariant factors).
//! Transforms are not unique; if the reduced ones still do not fit in
//! `i64`, the same input is retried transposed and with reversed rows or
//! columns before giving up with [`Error::Overflow`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Result of [`smith_normal_form`]: `u * a * v == s`, with `v_inv` the
/// inverse of `v`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, including ones and trailing zeros.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)])
            .collect()
    }
}

type Mat = Vec<Vec<BigInt>>;

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

fn transpose(m: &Mat, cols: usize) -> Mat {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `round(a / b)` for `b > 0`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (BigInt::from(2) * a + b).div_floor(&(BigInt::from(2) * b))
}

/// A unimodular transform acting on rows, with its inverse kept in step.
struct Side {
    t: Mat,
    inv: Mat,
}

impl Side {
    fn new(n: usize) -> Self {
        Side {
            t: identity(n),
            inv: identity(n),
        }
    }

    /// Rows `(i, j)` become `k * (row_i, row_j)` for `det k = +-1`; the
    /// inverse gets the inverse operation on its columns.
    fn combine(&mut self, s: &mut Mat, i: usize, j: usize, k: [[BigInt; 2]; 2]) {
        let det = &k[0][0] * &k[1][1] - &k[0][1] * &k[1][0];
        debug_assert!(det.abs().is_one());
        for m in [&mut *s, &mut self.t] {
            let (ri, rj) = (m[i].clone(), m[j].clone());
            for c in 0..ri.len() {
                m[i][c] = &k[0][0] * &ri[c] + &k[0][1] * &rj[c];
                m[j][c] = &k[1][0] * &ri[c] + &k[1][1] * &rj[c];
            }
        }
        let ki = [
            [&det * &k[1][1], -(&det * &k[0][1])],
            [-(&det * &k[1][0]), &det * &k[0][0]],
        ];
        for row in self.inv.iter_mut() {
            let (ci, cj) = (row[i].clone(), row[j].clone());
            row[i] = &ci * &ki[0][0] + &cj * &ki[1][0];
            row[j] = &ci * &ki[0][1] + &cj * &ki[1][1];
        }
    }

    /// `row_i += c * row_k` on the transform only (rows of `s` involved are
    /// zero or the change is compensated elsewhere).
    fn add(&mut self, i: usize, k: usize, c: &BigInt) {
        let rk = self.t[k].clone();
        for (x, y) in self.t[i].iter_mut().zip(&rk) {
            *x += c * y;
        }
        for row in self.inv.iter_mut() {
            let ci = row[i].clone();
            row[k] -= c * ci;
        }
    }
}

/// Row-style Hermite pass: upper echelon with positive pivots and the
/// entries above each pivot reduced modulo it.
fn hermite_rows(s: &mut Mat, side: &mut Side) {
    let m = s.len();
    let n = s.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if s[i][c].is_zero() {
                continue;
            }
            let (a, b) = (s[r][c].clone(), s[i][c].clone());
            let e = a.extended_gcd(&b);
            let k = [[e.x, e.y], [-(&b / &e.gcd), &a / &e.gcd]];
            side.combine(s, r, i, k);
        }
        if s[r][c].is_zero() {
            continue;
        }
        if s[r][c].is_negative() {
            negate_single(s, side, r);
        }
        for i in 0..r {
            let q = s[i][c].div_floor(&s[r][c]);
            if !q.is_zero() {
                let rr = s[r].clone();
                for (x, y) in s[i].iter_mut().zip(&rr) {
                    *x -= &q * y;
                }
                side.add(i, r, &-q);
            }
        }
        r += 1;
    }
}

fn negate_single(s: &mut Mat, side: &mut Side, r: usize) {
    for x in s[r].iter_mut().chain(side.t[r].iter_mut()) {
        *x = -x.clone();
    }
    for row in side.inv.iter_mut() {
        row[r] = -row[r].clone();
    }
}

fn is_diagonal(s: &Mat) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
}

/// Size-reduces rows `kernel` of `side.t` among themselves, then the other
/// rows against them. Only valid when the matching rows of `s` are zero.
fn reduce_against_kernel(side: &mut Side, kernel: std::ops::Range<usize>) {
    let n = side.t.len();
    let improve = |side: &mut Side, i: usize, j: usize| -> bool {
        let nj = dot(&side.t[j], &side.t[j]);
        if nj.is_zero() {
            return false;
        }
        let c = round_div(&dot(&side.t[i], &side.t[j]), &nj);
        if c.is_zero() {
            return false;
        }
        let before = dot(&side.t[i], &side.t[i]);
        let cand: Vec<BigInt> = side.t[i].iter().zip(&side.t[j]).map(|(x, y)| x - &c * y).collect();
        if dot(&cand, &cand) < before {
            side.add(i, j, &-c);
            true
        } else {
            false
        }
    };
    let mut changed = true;
    while changed {
        changed = false;
        for i in kernel.clone() {
            for j in kernel.clone() {
                if i != j && improve(side, i, j) {
                    changed = true;
                }
            }
        }
    }
    for i in (0..n).filter(|i| !kernel.contains(i)) {
        let mut changed = true;
        while changed {
            changed = false;
            for j in kernel.clone() {
                if improve(side, i, j) {
                    changed = true;
                }
            }
        }
    }
}

/// For equal invariant factors `d_i = d_j`, `row_i(U) += c row_j(U)`
/// together with `col_j(V) -= c col_i(V)` leaves `S` unchanged; pick `c`
/// to shrink both transforms at once.
fn reduce_jointly(s: &Mat, left: &mut Side, right: &mut Side) {
    let k = left.t.len().min(right.t.len());
    let d: Vec<BigInt> = (0..k).map(|i| s[i][i].clone()).collect();
    for _ in 0..200 {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                if i == j || d[i] != d[j] || d[i].is_zero() {
                    continue;
                }
                let den = dot(&left.t[j], &left.t[j]) + dot(&right.t[i], &right.t[i]);
                if den.is_zero() {
                    continue;
                }
                let num = dot(&right.t[j], &right.t[i]) - dot(&left.t[i], &left.t[j]);
                let c = round_div(&num, &den);
                if c.is_zero() {
                    continue;
                }
                let nu: Vec<BigInt> = left.t[i].iter().zip(&left.t[j]).map(|(x, y)| x + &c * y).collect();
                let nv: Vec<BigInt> = right.t[j].iter().zip(&right.t[i]).map(|(x, y)| x - &c * y).collect();
                let before = dot(&left.t[i], &left.t[i]) + dot(&right.t[j], &right.t[j]);
                if dot(&nu, &nu) + dot(&nv, &nv) < before {
                    left.add(i, j, &c);
                    right.add(j, i, &-c);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

struct BigSmith {
    s: Mat,
    left: Side,
    /// acts on rows of `A^T`, so `V = right.t^T`
    right: Side,
}

fn reduce(a: &IntMatrix) -> BigSmith {
    let (m, n) = (a.rows(), a.cols());
    let mut s: Mat = (0..m)
        .map(|i| (0..n).map(|j| BigInt::from(a[(i, j)])).collect())
        .collect();
    let mut left = Side::new(m);
    let mut right = Side::new(n);
    loop {
        hermite_rows(&mut s, &mut left);
        if is_diagonal(&s) {
            break;
        }
        let mut st = transpose(&s, n);
        hermite_rows(&mut st, &mut right);
        s = transpose(&st, m);
        if is_diagonal(&s) {
            break;
        }
    }

    // divisibility chain; zeros move to the end
    let k = m.min(n);
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (s[i][i].clone(), s[j][j].clone());
                if b.is_zero() || (!a.is_zero() && (&b % &a).is_zero()) {
                    continue;
                }
                if a.is_zero() {
                    let swap = [[BigInt::zero(), BigInt::one()], [BigInt::one(), BigInt::zero()]];
                    left.combine(&mut s, i, j, swap.clone());
                    let mut st = transpose(&s, n);
                    right.combine(&mut st, i, j, swap);
                    s = transpose(&st, m);
                    changed = true;
                    continue;
                }
                let e = a.extended_gcd(&b);
                let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
                left.combine(&mut s, i, j, [[e.x.clone(), e.y.clone()], [-bg.clone(), ag.clone()]]);
                let mut st = transpose(&s, n);
                // V2 = [[1, -y b/g], [1, x a/g]] on columns, i.e. its transpose on rows of V^T
                right.combine(&mut st, i, j, [[BigInt::one(), BigInt::one()], [-(&e.y * &bg), &e.x * &ag]]);
                s = transpose(&st, m);
                if s[j][j].is_negative() {
                    negate_single(&mut s, &mut left, j);
                }
                changed = true;
            }
        }
    }
    debug_assert!(is_diagonal(&s));

    let rank = (0..k).filter(|&i| !s[i][i].is_zero()).count();
    reduce_against_kernel(&mut left, rank..m);
    reduce_against_kernel(&mut right, rank..n);
    reduce_jointly(&s, &mut left, &mut right);
    BigSmith { s, left, right }
}

fn to_int(m: &Mat, cols: usize) -> Option<IntMatrix> {
    let rows: Option<Vec<Vec<i64>>> = m.iter().map(|r| r.iter().map(BigInt::to_i64).collect()).collect();
    let rows = rows?;
    if rows.is_empty() {
        return Some(IntMatrix::zeros(0, cols));
    }
    IntMatrix::from_rows(&rows).ok()
}

/// Every transform of one reduction, in `i64`.
struct Transforms {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Transforms {
    fn smith(self) -> Smith {
        Smith {
            s: self.s,
            u: self.u,
            v: self.v,
            v_inv: self.v_inv,
        }
    }
}

fn attempt(a: &IntMatrix) -> Option<Transforms> {
    let (m, n) = (a.rows(), a.cols());
    let b = reduce(a);
    Some(Transforms {
        s: to_int(&b.s, n)?,
        u: to_int(&b.left.t, m)?,
        u_inv: to_int(&b.left.inv, m)?,
        v: to_int(&transpose(&b.right.t, n), n)?,
        v_inv: to_int(&transpose(&b.right.inv, n), n)?,
    })
}

fn reversal(n: usize) -> IntMatrix {
    let mut p = IntMatrix::zeros(n, n);
    for i in 0..n {
        p[(i, n - 1 - i)] = 1;
    }
    p
}

/// Smith normal form `u * a * v = s` with unimodular `u`, `v`.
///
/// Fails with [`Error::Overflow`] only when no transform found fits in `i64`.
pub fn smith_normal_form(a: &IntMatrix) -> Result<Smith> {
    let (m, n) = (a.rows(), a.cols());
    if m == 0 || n == 0 {
        return Ok(Smith {
            s: a.clone(),
            u: IntMatrix::identity(m),
            v: IntMatrix::identity(n),
            v_inv: IntMatrix::identity(n),
        });
    }
    if let Some(r) = attempt(a) {
        return Ok(r.smith());
    }
    // U' A^T V' = S^T  gives  V'^T A U'^T = S
    if let Some(r) = attempt(&a.transpose()) {
        return Ok(Smith {
            s: r.s.transpose(),
            u: r.v.transpose(),
            v: r.u.transpose(),
            v_inv: r.u_inv.transpose(),
        });
    }
    // U' (P A) V' = S  gives  U = U' P
    let p = reversal(m);
    if let Some(r) = attempt(&p.checked_mul(a)?) {
        if let Ok(u) = r.u.checked_mul(&p) {
            return Ok(Smith { u, ..r.smith() });
        }
    }
    // U (A Q) V' = S  gives  V = Q V', V^{-1} = V'^{-1} Q
    let q = reversal(n);
    if let Some(r) = attempt(&a.checked_mul(&q)?) {
        if let (Ok(v), Ok(v_inv)) = (q.checked_mul(&r.v), r.v_inv.checked_mul(&q)) {
            return Ok(Smith { v, v_inv, ..r.smith() });
        }
    }
    Err(Error::Overflow("Smith normal form transforms"))
}
