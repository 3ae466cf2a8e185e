//! Small dense matrices over a [`Field`] and maximal-minor (MDS) tests.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Advances `c` to the next `c.len()`-subset of `0..n` in lexicographic
/// order. Returns false after the last subset.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Binomial coefficient saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::LengthMismatch { expected: c, actual: row.len() });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Elem>]) -> Matrix {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Element indices, row by row.
    pub fn to_index_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.index()).collect()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch { expected: self.cols, actual: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, f: &Field, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch { expected: self.cols, actual: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(Elem::ZERO, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j]))))
            .collect())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn with_column(&self, v: &[Elem]) -> Matrix {
        assert_eq!(v.len(), self.rows, "column length");
        let mut m = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            m.set(i, self.cols, v[i]);
        }
        m
    }

    pub fn scale_column(&mut self, j: usize, f: &Field, c: Elem) {
        for i in 0..self.rows {
            let v = f.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Row echelon form in place; returns the rank and the determinant
    /// factor accumulated from the pivots (meaningful for square input).
    fn eliminate(&mut self, f: &Field) -> (usize, Elem) {
        let mut rank = 0;
        let mut det = Elem::ONE;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                det = Elem::ZERO;
                continue;
            };
            if piv != rank {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, rank * self.cols + j);
                }
                det = f.neg(det);
            }
            let pv = self.get(rank, col);
            det = f.mul(det, pv);
            let inv = f.inv(pv);
            for r in rank + 1..self.rows {
                let factor = f.mul(self.get(r, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.sub(self.get(r, j), f.mul(factor, self.get(rank, j)));
                    self.set(r, j, v);
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().eliminate(f).0
    }

    pub fn det(&self, f: &Field) -> Result<Elem> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch { expected: self.rows, actual: self.cols });
        }
        let (rank, det) = self.clone().eliminate(f);
        Ok(if rank < self.rows { Elem::ZERO } else { det })
    }

    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return Err(Error::LengthMismatch { expected: n, actual: self.cols });
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Elem::ONE);
        }
        for col in 0..n {
            let piv = (col..n).find(|&r| !aug.get(r, col).is_zero()).ok_or(Error::Singular)?;
            if piv != col {
                for j in 0..2 * n {
                    aug.data.swap(piv * 2 * n + j, col * 2 * n + j);
                }
            }
            let inv = f.inv(aug.get(col, col));
            for j in 0..2 * n {
                let v = f.mul(aug.get(col, j), inv);
                aug.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = aug.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let v = f.sub(aug.get(r, j), f.mul(factor, aug.get(col, j)));
                    aug.set(r, j, v);
                }
            }
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(out)
    }

    /// Solves `self * x = b` for square invertible `self`.
    pub fn solve(&self, f: &Field, b: &[Elem]) -> Result<Vec<Elem>> {
        self.inverse(f)?.mul_vec(f, b)
    }

    /// First (lexicographic) set of `rows` columns whose minor vanishes, or
    /// `None` when every maximal minor is nonzero.
    pub fn singular_minor(&self, f: &Field) -> Option<Vec<usize>> {
        let r = self.rows;
        if r > self.cols {
            return Some((0..self.cols).collect());
        }
        if r == 0 {
            return None;
        }
        let mut subset: Vec<usize> = (0..r).collect();
        loop {
            if self.select_columns(&subset).eliminate(f).0 < r {
                return Some(subset);
            }
            if !next_combination(&mut subset, self.cols) {
                return None;
            }
        }
    }

    /// True iff every maximal minor is nonzero.
    pub fn is_mds(&self, f: &Field) -> bool {
        self.singular_minor(f).is_none()
    }
}
