//! Dense exact linear algebra over arbitrary-precision rationals.
//!
//! Pivoting is deterministic: columns are scanned left to right and the first
//! row with a nonzero entry wins. Kernel vectors come out in primitive integer
//! form with a positive first nonzero entry, so equal subspaces produce equal
//! bases.

// Elimination loops read one row while writing another; indices beat
// split_at_mut here.
#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Rat = BigRational;
pub type QVec = Vec<Rat>;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as an exact rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn qvec(entries: &[i64]) -> QVec {
    entries.iter().map(|&n| rint(n)).collect()
}

/// Scales `v` by the positive rational that makes all entries integers with
/// gcd 1. The sign pattern of `v` is preserved. Fails on the zero vector.
pub fn normalize_primitive(v: &[Rat]) -> Result<QVec> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    Ok(ints
        .into_iter()
        .map(|i| Rat::from_integer(i / &g))
        .collect())
}

/// Primitive integer form with the first nonzero entry positive: the canonical
/// representative of a projective coordinate vector or hyperplane covector.
pub fn normalize_canonical(v: &[Rat]) -> Result<QVec> {
    let mut w = normalize_primitive(v)?;
    if let Some(first) = w.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut w {
                let neg = -&*x;
                *x = neg;
            }
        }
    }
    Ok(w)
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<QVec>) -> Result<QMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| qvec(r)).collect()).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> QVec {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rat::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<QVec> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * vec{}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = rref(self.to_rows());
        pivots.len()
    }

    /// Basis of the right kernel, one canonical vector per free column, in
    /// ascending free-column order. Empty when the matrix has full column rank.
    pub fn kernel_basis(&self) -> Vec<QVec> {
        let (m, pivots) = rref(self.to_rows());
        let mut basis = Vec::new();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rat::zero(); self.cols];
            vec[free] = Rat::one();
            for (r, &c) in pivots.iter().enumerate() {
                vec[c] = -m[r][free].clone();
            }
            basis.push(normalize_canonical(&vec).expect("kernel vector is nonzero"));
        }
        basis
    }

    /// One particular solution of `self * x = rhs`, or `None` if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, rhs: &[Rat]) -> Result<Option<QVec>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs rhs {}",
                self.rows,
                rhs.len()
            )));
        }
        let mut aug = self.to_rows();
        for (row, b) in aug.iter_mut().zip(rhs) {
            row.push(b.clone());
        }
        let (m, pivots) = rref_partial(aug, self.cols);
        for row in m.iter().skip(pivots.len()) {
            if !row[self.cols].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = m[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn determinant(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            let inv = m[c][c].clone();
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &inv;
                for j in c..n {
                    let t = &m[c][j] * &f;
                    m[r][j] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        let n = self.rows;
        let mut aug = self.to_rows();
        for (i, row) in aug.iter_mut().enumerate() {
            for j in 0..n {
                row.push(if i == j { Rat::one() } else { Rat::zero() });
            }
        }
        let (m, pivots) = rref_partial(aug, n);
        if pivots.len() < n {
            return Err(Error::SingularMatrix);
        }
        let mut out = QMatrix::zero(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, m[r][n + c].clone());
            }
        }
        Ok(out)
    }

    fn to_rows(&self) -> Vec<QVec> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

/// Reduced row echelon form with unit pivots. Returns the reduced rows and the
/// pivot column of each pivot row.
fn rref(m: Vec<QVec>) -> (Vec<QVec>, Vec<usize>) {
    let cols = m.first().map_or(0, |r| r.len());
    rref_partial(m, cols)
}

/// Like `rref` but only the first `pivot_cols` columns are eligible as pivots;
/// trailing columns ride along (used for augmented systems).
fn rref_partial(mut m: Vec<QVec>, pivot_cols: usize) -> (Vec<QVec>, Vec<usize>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols.min(cols) {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        // Keep rows primitive during forward elimination so entries stay small.
        for i in r + 1..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let t = &m[r][j] * &f;
                m[i][j] -= t;
            }
            if let Ok(p) = normalize_primitive(&m[i]) {
                m[i] = p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for (k, &c) in pivots.iter().enumerate().rev() {
        let inv = m[k][c].clone();
        for x in &mut m[k] {
            let q = &*x / &inv;
            *x = q;
        }
        for i in 0..k {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                let t = &m[k][j] * &f;
                m[i][j] -= t;
            }
        }
    }
    (m, pivots)
}
