//! Small dense matrices over an exact field (rationals, quadratic field
//! elements) or over `f64` for the numeric layers. Everything is row-major
//! and sized for Lie algebras of dimension at most a dozen or so.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Error;
use crate::scalar::{rational_to_f64, Scalar};

/// Entry trait for [`Mat`]: a field with exact (or floating) division.
pub trait Entry:
    Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn try_inv(&self) -> Option<Self>;
    /// Pivot preference during elimination; exact fields only need nonzero.
    fn pivot_score(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Entry for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Entry for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv()
    }
}

impl Entry for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn try_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / *self)
        }
    }
    fn pivot_score(&self) -> f64 {
        self.abs()
    }
}

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMat = Mat<BigRational>;
pub type SMat = Mat<Scalar>;
pub type FMat = Mat<f64>;

impl<T: Entry> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
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

    pub fn map<U: Entry>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[T]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self[(i, j)] = v[i].clone();
        }
    }

    pub fn from_cols(n: usize, cols: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            m.set_col(j, c);
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Entry::is_zero)
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                acc = acc + self[(i, k)].clone() * rhs[(k, j)].clone();
            }
            acc
        })
    }

    pub fn matvec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc + self[(i, k)].clone() * v[k].clone();
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.matmul(self);
        }
        acc
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = T::zero();
        for i in 0..self.rows {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn commutes_with(&self, rhs: &Self) -> bool {
        self.matmul(rhs) == rhs.matmul(self)
    }

    /// In-place Gauss–Jordan; returns (rank, det of the square part).
    fn eliminate(&mut self) -> (usize, T) {
        let mut det = T::one();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let best = (pivot_row..self.rows)
                .max_by(|&a, &b| {
                    self[(a, col)]
                        .pivot_score()
                        .partial_cmp(&self[(b, col)].pivot_score())
                        .unwrap()
                })
                .unwrap();
            if self[(best, col)].is_zero() {
                det = T::zero();
                continue;
            }
            if best != pivot_row {
                for j in 0..self.cols {
                    self.data.swap(best * self.cols + j, pivot_row * self.cols + j);
                }
                det = -det;
            }
            let p = self[(pivot_row, col)].clone();
            det = det * p.clone();
            let pinv = p.try_inv().unwrap();
            for j in 0..self.cols {
                self[(pivot_row, j)] = self[(pivot_row, j)].clone() * pinv.clone();
            }
            for i in 0..self.rows {
                if i != pivot_row && !self[(i, col)].is_zero() {
                    let f = self[(i, col)].clone();
                    for j in 0..self.cols {
                        let sub = f.clone() * self[(pivot_row, j)].clone();
                        self[(i, j)] = self[(i, j)].clone() - sub;
                    }
                }
            }
            pivot_row += 1;
        }
        (pivot_row, det)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate().0
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let (rank, det) = m.eliminate();
        if rank < self.rows {
            T::zero()
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (rank, _) = aug.eliminate();
        if rank < n {
            return Err(Error::Singular("matrix is singular".into()));
        }
        Ok(Mat::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Solve `A x = b` when a unique solution exists.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>, Error> {
        assert_eq!(self.rows, b.len());
        let n = self.cols;
        let mut aug = Mat::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (_, _) = aug.eliminate();
        // read off: every row must be either 0=0 or have a pivot in x-columns
        let mut x = vec![T::zero(); n];
        let mut pivots = vec![false; n];
        for i in 0..self.rows {
            let lead = (0..n).find(|&j| !aug[(i, j)].is_zero());
            match lead {
                Some(j) => {
                    x[j] = aug[(i, n)].clone();
                    pivots[j] = true;
                }
                None => {
                    if !aug[(i, n)].is_zero() {
                        return Err(Error::Singular("inconsistent linear system".into()));
                    }
                }
            }
        }
        if pivots.iter().any(|p| !p) {
            return Err(Error::Singular("underdetermined linear system".into()));
        }
        Ok(x)
    }

    /// A basis of the right kernel, as columns.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let (rank, _) = m.eliminate();
        let n = self.cols;
        let mut pivot_cols = Vec::new();
        for i in 0..rank {
            if let Some(j) = (0..n).find(|&j| !m[(i, j)].is_zero()) {
                pivot_cols.push(j);
            }
        }
        let free: Vec<usize> = (0..n).filter(|j| !pivot_cols.contains(j)).collect();
        free.iter()
            .map(|&fj| {
                let mut v = vec![T::zero(); n];
                v[fj] = T::one();
                for (i, &pj) in pivot_cols.iter().enumerate() {
                    v[pj] = -m[(i, fj)].clone();
                }
                v
            })
            .collect()
    }

    /// Canonical echelon basis of the row space.
    pub fn row_echelon_basis(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let (rank, _) = m.eliminate();
        (0..rank).map(|i| m.row(i)).collect()
    }
}

impl Mat<f64> {
    pub fn inf_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl QMat {
    pub fn to_f64(&self) -> FMat {
        self.map(rational_to_f64)
    }

    pub fn to_scalar(&self) -> SMat {
        self.map(|q| Scalar::Rational(q.clone()))
    }

    pub fn from_i64(rows: &[&[i64]]) -> QMat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::scalar::big(x)).collect())
                .collect(),
        )
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|q| q.is_integer())
    }

    pub fn max_abs(&self) -> BigRational {
        let mut best = <BigRational as Zero>::zero();
        for q in &self.data {
            let a = q.abs();
            if a > best {
                best = a;
            }
        }
        best
    }
}

impl SMat {
    pub fn to_f64(&self) -> FMat {
        self.map(Scalar::to_f64)
    }

    /// All entries rational: view as a rational matrix.
    pub fn to_rational(&self) -> Result<QMat, Error> {
        let mut out = QMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                match self[(i, j)].as_rational() {
                    Some(q) => out[(i, j)] = q.clone(),
                    None => {
                        return Err(Error::NotRational(format!(
                            "entry ({i},{j}) = {} is irrational",
                            self[(i, j)]
                        )))
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn from_i64(rows: &[&[i64]]) -> SMat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::int(x)).collect())
                .collect(),
        )
    }
}

impl<T> std::ops::Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Entry> Add for &Mat<T> {
    type Output = Mat<T>;
    fn add(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + rhs[(i, j)].clone())
    }
}

impl<T: Entry> Sub for &Mat<T> {
    type Output = Mat<T>;
    fn sub(self, rhs: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - rhs[(i, j)].clone())
    }
}

impl<T: fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::big;

    #[test]
    fn inverse_and_det_rational() {
        let m = QMat::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.det(), big(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), QMat::identity(2));
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let m = QMat::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.matvec(v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn solve_unique() {
        let m = QMat::from_i64(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[big(3), big(1)]).unwrap();
        assert_eq!(x, vec![big(2), big(1)]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = QMat::from_i64(&[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[big(1), big(3)]).is_err());
    }

    #[test]
    fn scalar_matrix_quadratic_inverse() {
        use crate::scalar::Scalar;
        let u = Scalar::quadratic(crate::scalar::bigratio(3, 2), crate::scalar::bigratio(1, 2), 5);
        let m = Mat::from_rows(vec![
            vec![u.clone(), Scalar::zero()],
            vec![Scalar::one(), u.inv().unwrap()],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(2));
    }
}
