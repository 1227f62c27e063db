use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use num_traits::{One, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
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
            m.set(i, i, 1);
        }
        m
    }

    pub fn scalar(n: usize, c: i128) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    /// Square matrix; an empty list gives the 0x0 matrix.
    pub fn square(rows: &[Vec<i128>]) -> Result<Self> {
        let m = Self::from_rows(rows)?;
        if m.rows != m.cols {
            return Err(Error::Dimension(format!(
                "expected square matrix, got {}x{}",
                m.rows, m.cols
            )));
        }
        Ok(m)
    }

    pub fn from_columns(cols: &[Vec<i128>], n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != n {
                return Err(Error::Dimension("column length".into()));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, *x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<i128> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a
                        .checked_mul(other.get(k, j))
                        .and_then(|x| x.checked_add(out.get(i, j)))
                        .ok_or(Error::Overflow("matrix product"))?;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(i128, i128) -> i128) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        })
    }

    pub fn scale(&self, c: i128) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// self - I, for square matrices.
    pub fn minus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, m.get(i, i) - 1);
        }
        m
    }

    /// Vertical concatenation.
    pub fn vstack(parts: &[IntMatrix], cols: usize) -> Result<Self> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::Dimension("vstack column mismatch".into()));
            }
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Horizontal concatenation.
    pub fn hstack(parts: &[IntMatrix], rows: usize) -> Result<Self> {
        let ts: Vec<_> = parts.iter().map(|p| p.transpose()).collect();
        Ok(Self::vstack(&ts, rows)?.transpose())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += c * row[b]
    pub fn add_row(&mut self, a: usize, b: usize, c: i128) {
        for j in 0..self.cols {
            let v = self.get(a, j) + c * self.get(b, j);
            self.set(a, j, v);
        }
    }

    /// col[a] += c * col[b]
    pub fn add_col(&mut self, a: usize, b: usize, c: i128) {
        for i in 0..self.rows {
            let v = self.get(i, a) + c * self.get(i, b);
            self.set(i, a, v);
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self.get(a, j);
            self.set(a, j, v);
        }
    }

    pub fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, a);
            self.set(i, a, v);
        }
    }

    /// Fraction-free Bareiss determinant. The 0x0 determinant is 1.
    pub fn det(&self) -> Result<i128> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a.get(k, k) == 0 {
                match (k + 1..n).find(|&i| a.get(i, k) != 0) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a
                        .get(i, j)
                        .checked_mul(a.get(k, k))
                        .and_then(|x| x.checked_sub(a.get(i, k).checked_mul(a.get(k, j))?))
                        .ok_or(Error::Overflow("determinant"))?;
                    a.set(i, j, v / prev);
                }
            }
            prev = a.get(k, k);
        }
        Ok(if n == 0 { 1 } else { sign * a.get(n - 1, n - 1) })
    }

    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| int(self.get(i, j))).collect())
            .collect()
    }

    /// Inverse over Z; fails unless det = +-1.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.det()?;
        if d != 1 && d != -1 {
            return Err(Error::Invalid(format!("matrix is not unimodular (det {d})")));
        }
        let inv = rational_inverse(&self.to_rational()).ok_or_else(|| Error::SingularDeterminant("inverse".into()))?;
        let mut out = Self::zeros(self.rows, self.cols);
        for (i, row) in inv.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out.set(i, j, x.to_integer());
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }

    pub fn max_abs(&self) -> i128 {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

/// Gauss-Jordan inverse of a square rational matrix.
pub fn rational_inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant of a rational matrix by elimination.
pub fn rational_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if piv != c {
            m.swap(c, piv);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            if f.is_zero() {
                continue;
            }
            let pivot_row = m[c].clone();
            for (x, y) in m[r].iter_mut().zip(pivot_row) {
                *x -= f * y;
            }
        }
    }
    det
}

/// Rank over Q.
pub fn rank_of_vectors(vs: &[Vec<i128>], n: usize) -> usize {
    let mut m: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|x| int(*x)).collect()).collect();
    let mut rank = 0;
    for c in 0..n {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c] / m[rank][c];
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}
