use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Matrix;
use crate::error::{Error, Result};

/// Dense real symmetric matrix.
///
/// Symmetry is exact: construction stores `(M + Mᵗ)/2`, and every
/// arithmetic operation below preserves bitwise symmetry.
#[derive(Clone, PartialEq)]
pub struct SymMat {
    m: Matrix,
}

impl SymMat {
    pub fn new(n: usize, row_major: Vec<f64>) -> Result<Self> {
        SymMat::from_matrix(&Matrix::from_row_major(n, n, row_major)?)
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        SymMat::from_matrix(&Matrix::from_rows(rows)?)
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() == 0 {
            return Err(Error::BadParameter("dimension must be at least 1".into()));
        }
        if m.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = m.rows();
        let mut s = Matrix::zeros(n, n);
        for i in 0..n {
            s.set(i, i, m.get(i, i));
            for j in i + 1..n {
                let v = 0.5 * (m.get(i, j) + m.get(j, i));
                s.set(i, j, v);
                s.set(j, i, v);
            }
        }
        Ok(SymMat { m: s })
    }

    /// Largest absolute difference between `m` and its transpose.
    pub fn asymmetry(m: &Matrix) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..m.rows() {
            for j in i + 1..m.cols().min(m.rows()) {
                worst = worst.max((m.get(i, j) - m.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn zeros(n: usize) -> Self {
        SymMat {
            m: Matrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        SymMat {
            m: Matrix::identity(n),
        }
    }

    pub fn from_diag(d: &[f64]) -> Self {
        SymMat {
            m: Matrix::from_diag(d),
        }
    }

    /// `x xᵗ` (not normalized).
    pub fn outer(x: &[f64]) -> Self {
        let mut m = Matrix::outer(x, x);
        let n = x.len();
        for i in 0..n {
            for j in i + 1..n {
                let v = m.get(i, j);
                m.set(j, i, v);
            }
        }
        SymMat { m }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.m.rows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m.get(i, j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    pub fn row_major(&self) -> &[f64] {
        self.m.as_slice()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.frobenius_norm()
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    pub fn scale(&self, s: f64) -> SymMat {
        SymMat { m: self.m.scale(s) }
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j).abs() <= tol))
    }

    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        super::dot(&self.m.mul_vec(x), x)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.m.mul_vec(x)
    }

    /// Congruence `T X Tᵗ`; `t` may be rectangular.
    pub fn congruence(&self, t: &Matrix) -> Result<SymMat> {
        let tx = t.checked_mul(&self.m)?;
        SymMat::from_matrix(&tx.checked_mul(&t.transpose())?)
    }

    pub fn checked_sub(&self, rhs: &SymMat) -> Result<SymMat> {
        self.same_dim(rhs)?;
        Ok(self - rhs)
    }

    pub fn checked_add(&self, rhs: &SymMat) -> Result<SymMat> {
        self.same_dim(rhs)?;
        Ok(self + rhs)
    }

    pub fn same_dim(&self, rhs: &SymMat) -> Result<()> {
        if self.n() != rhs.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: rhs.n(),
            });
        }
        Ok(())
    }

    /// Distance in Frobenius norm.
    pub fn distance(&self, rhs: &SymMat) -> f64 {
        (&self.m - &rhs.m).frobenius_norm()
    }
}

impl fmt::Debug for SymMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMat {} [", self.n())?;
        for i in 0..self.n() {
            writeln!(f, "  {:?}", self.m.row(i))?;
        }
        write!(f, "]")
    }
}

impl Add<&SymMat> for &SymMat {
    type Output = SymMat;
    fn add(self, rhs: &SymMat) -> SymMat {
        SymMat { m: &self.m + &rhs.m }
    }
}

impl Sub<&SymMat> for &SymMat {
    type Output = SymMat;
    fn sub(self, rhs: &SymMat) -> SymMat {
        SymMat { m: &self.m - &rhs.m }
    }
}

impl Mul<f64> for &SymMat {
    type Output = SymMat;
    fn mul(self, rhs: f64) -> SymMat {
        self.scale(rhs)
    }
}

impl Neg for &SymMat {
    type Output = SymMat;
    fn neg(self) -> SymMat {
        self.scale(-1.0)
    }
}

impl AsRef<SymMat> for SymMat {
    fn as_ref(&self) -> &SymMat {
        self
    }
}
