use super::Matrix;
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `PA = LU`, packed in one matrix.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn factor(a: &Matrix) -> Result<Lu> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        let scale = a.as_slice().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let floor = f64::EPSILON * scale * n as f64;

        for k in 0..n {
            let (p, pivot) = (k..n)
                .map(|i| (i, lu.get(i, k).abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot <= floor || pivot == 0.0 {
                return Err(Error::Singular);
            }
            if p != k {
                let d = lu.data_mut();
                for j in 0..n {
                    d.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pkk = lu.get(k, k);
            for i in k + 1..n {
                let f = lu.get(i, k) / pkk;
                lu.set(i, k, f);
                if f == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    let v = lu.get(i, j) - f * lu.get(k, j);
                    lu.set(i, j, v);
                }
            }
        }
        Ok(Lu { lu, perm, swaps })
    }

    pub fn determinant(&self) -> f64 {
        let n = self.lu.rows();
        let d: f64 = (0..n).map(|i| self.lu.get(i, i)).product();
        if self.swaps.is_multiple_of(2) {
            d
        } else {
            -d
        }
    }

    pub fn solve_vec(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|j| self.lu.get(i, j) * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| self.lu.get(i, j) * x[j]).sum();
            x[i] = (x[i] - s) / self.lu.get(i, i);
        }
        x
    }

    /// Solves `A X = B` column by column.
    pub fn solve(&self, b: &Matrix) -> Result<Matrix> {
        let n = self.lu.rows();
        if b.rows() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: b.rows(),
            });
        }
        let cols: Vec<Vec<f64>> = (0..b.cols())
            .map(|j| self.solve_vec(&b.column(j)))
            .collect();
        let out = Matrix::from_columns(&cols)?;
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.solve(&Matrix::identity(self.lu.rows()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = Matrix::from_rows(&[[0.0, 2.0], [1.0, 1.0]]).unwrap();
        let lu = Lu::factor(&a).unwrap();
        let x = lu.solve_vec(&[4.0, 3.0]);
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
        assert!((lu.determinant() + 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_singular() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]).unwrap();
        assert_eq!(Lu::factor(&a).unwrap_err(), Error::Singular);
        assert_eq!(a.determinant().unwrap(), 0.0);
    }

    #[test]
    fn inverse_of_permuted_matrix() {
        let a = Matrix::from_rows(&[[0.0, 0.0, 3.0], [2.0, 0.0, 0.0], [0.0, 5.0, 0.0]]).unwrap();
        let inv = a.inverse().unwrap();
        let id = &a * &inv;
        assert!((&id - &Matrix::identity(3)).frobenius_norm() < 1e-14);
    }
}
