use super::{canonical_sign, Matrix, SymMat};
use crate::error::{Error, Result};

/// Off-diagonal Frobenius mass at which a Jacobi sweep loop stops,
/// relative to `‖A‖_F`.
pub const JACOBI_TOL: f64 = 1e-14;
/// Maximum number of cyclic sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `A = V Λ Vᵗ` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: Matrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// Orthonormal eigenvectors stored as columns.
    pub fn eigenvectors(&self) -> &Matrix {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Largest absolute eigenvalue, i.e. the spectral norm.
    pub fn norm(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// Index of the first eigenvector (in stable ascending order) whose
    /// eigenvalue ties with the maximum to within `tie`.
    pub fn top_index(&self, tie: f64) -> usize {
        let top = self.max();
        self.values
            .iter()
            .position(|&v| v >= top - tie)
            .unwrap_or(self.values.len() - 1)
    }

    /// `V diag(f(λ)) Vᵗ`.
    pub fn map<F: Fn(f64) -> f64>(&self, f: F) -> SymMat {
        let d: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        self.recombine(&d)
    }

    pub fn reconstruct(&self) -> SymMat {
        self.recombine(&self.values)
    }

    pub(crate) fn recombine(&self, d: &[f64]) -> SymMat {
        let n = self.values.len();
        let v = &self.vectors;
        let mut out = Matrix::zeros(n, n);
        for (k, &dk) in d.iter().enumerate() {
            if dk == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v.get(i, k) * dk;
                if vik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + vik * v.get(j, k));
                }
            }
        }
        SymMat::from_matrix(&out).expect("finite spectral recombination")
    }
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m.get(i, j) * m.get(i, j);
            }
        }
    }
    s.sqrt()
}

/// Symmetric eigen-decomposition by cyclic Jacobi rotations.
pub fn eigh(a: &SymMat) -> Result<Spectrum> {
    let n = a.n();
    let mut m = a.as_matrix().clone();
    let mut v = Matrix::identity(n);
    let scale = m.frobenius_norm();
    let target = JACOBI_TOL * scale;

    let mut converged = false;
    let mut off = off_diagonal_norm(&m);
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m.get(k, p);
                    let akq = m.get(k, q);
                    let nkp = c * akp - s * akq;
                    let nkq = s * akp + c * akq;
                    m.set(k, p, nkp);
                    m.set(p, k, nkp);
                    m.set(k, q, nkq);
                    m.set(q, k, nkq);
                }
                m.set(p, p, app - t * apq);
                m.set(q, q, aqq + t * apq);
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);

                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
        off = off_diagonal_norm(&m);
    }
    if !converged && off > target {
        return Err(Error::NonConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).total_cmp(&m.get(j, j)));
    let values: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let mut columns = Vec::with_capacity(n);
    for &i in &order {
        let mut col = v.column(i);
        canonical_sign(&mut col, 1e-10);
        columns.push(col);
    }
    Ok(Spectrum {
        values,
        vectors: Matrix::from_columns(&columns)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_spectrum() {
        let s = eigh(&SymMat::identity(3)).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0, 1.0]);
        assert_eq!(s.eigenvectors(), &Matrix::identity(3));
    }

    #[test]
    fn diagonal_input() {
        let s = eigh(&SymMat::from_diag(&[1.0, 1.0 / 3.0])).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0 / 3.0, 1.0]);
    }

    #[test]
    fn two_by_two_roots() {
        // (1 - λ)² - 1/4 = 0
        let a = SymMat::from_rows(&[[1.0, 0.5], [0.5, 1.0]]).unwrap();
        let s = eigh(&a).unwrap();
        assert!((s.eigenvalues()[0] - 0.5).abs() < 1e-15);
        assert!((s.eigenvalues()[1] - 1.5).abs() < 1e-15);
        assert!(s.reconstruct().distance(&a) < 1e-15);
    }

    #[test]
    fn zero_matrix() {
        let s = eigh(&SymMat::zeros(4)).unwrap();
        assert!(s.eigenvalues().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn ties_keep_index_order() {
        let s = eigh(&SymMat::from_diag(&[0.5, 0.5])).unwrap();
        assert_eq!(s.top_index(1e-12), 0);
        assert_eq!(s.vector(0), vec![1.0, 0.0]);
    }
}
