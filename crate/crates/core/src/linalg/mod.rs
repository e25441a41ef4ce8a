//! Dense exact matrices over the Laurent ring and its fraction field.

mod det;
mod echelon;
pub mod integer;

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, RingFrac, Scalar};

pub use det::{det, det_field, minors_gcd, ord_of_presentation};
pub use echelon::{kernel, rank, rref, solve, solve_many, Subspace};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat<T> {
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatR = Mat<LaurentPoly>;
pub type MatQ = Mat<RingFrac>;

impl<T: Scalar> Mat<T> {
    pub fn zeros(nvars: usize, rows: usize, cols: usize) -> Self {
        Mat { nvars, rows, cols, data: vec![T::zero(nvars); rows * cols] }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(nvars, n, n);
        for i in 0..n {
            m[(i, i)] = T::one(nvars);
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for x in row {
                if x.nvars() != nvars {
                    return Err(Error::VarCount { left: x.nvars(), right: nvars });
                }
                data.push(x);
            }
        }
        Ok(Mat { nvars, rows: r, cols: c, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(nvars: usize, rows: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(nvars, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { nvars: self.nvars, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Entrywise involution.
    pub fn involute(&self) -> Self {
        self.map(|x| x.involute())
    }

    /// Involution followed by transposition.
    pub fn conj_transpose(&self) -> Self {
        self.transpose().involute()
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = Self::zeros(self.nvars, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    m[(i, j)] = m[(i, j)].add(&a.mul(b));
                }
            }
        }
        Ok(m)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("matrix dimensions")
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero(self.nvars);
                for (j, x) in v.iter().enumerate() {
                    let a = &self[(i, j)];
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shapes");
        Mat { nvars: self.nvars, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix shapes");
        Mat { nvars: self.nvars, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows, "hstack row counts");
        let mut m = Self::zeros(self.nvars, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..o.cols {
                m[(i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.cols, "vstack column counts");
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { nvars: self.nvars, rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.nvars, self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                m[(self.rows + i, self.cols + j)] = o[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.nvars, idx.len(), self.cols);
        for (a, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(a, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.nvars, self.rows, idx.len());
        for i in 0..self.rows {
            for (b, &j) in idx.iter().enumerate() {
                m[(i, b)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    /// Entries as strings in ring syntax, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl MatR {
    pub fn to_q(&self) -> MatQ {
        self.map(|x| RingFrac::from_poly(x.clone()))
    }
}

impl MatQ {
    /// The matrix over `R` when every entry has denominator one.
    pub fn to_r(&self) -> Option<MatR> {
        if self.data.iter().all(|x| x.den().is_one()) {
            Some(self.map(|x| x.num().clone()))
        } else {
            None
        }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let mut width = vec![0; self.cols];
        for row in &cells {
            for (j, c) in row.iter().enumerate() {
                width[j] = width[j].max(c.chars().count());
            }
        }
        for row in &cells {
            let line: Vec<String> = row.iter().enumerate().map(|(j, c)| format!("{:>w$}", c, w = width[j])).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat {}x{}\n{}", self.rows, self.cols, self)
    }
}
