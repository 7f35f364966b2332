//! Dense symmetric-matrix kernel: spectral decomposition, Loewner-order
//! predicates, PSD square root, inverse and pseudoinverse, and scalar
//! functional calculus.
//!
//! Everything here is a pure function over immutable values.

mod eigen;
mod lu;
mod matrix;
mod sym;

pub use eigen::{eigh, Spectrum, JACOBI_MAX_SWEEPS, JACOBI_TOL};
pub use lu::Lu;
pub use matrix::{canonical_sign, dot, norm2, normalize, Matrix};
pub use sym::SymMat;

use crate::error::{Error, Result};

/// Numerical tolerances shared by every order-theoretic predicate.
///
/// `psd_tol` and `rank_tol` are relative: comparisons are scaled by
/// `max(1, ‖·‖)` of the operands involved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Jacobi stopping threshold (relative off-diagonal mass).
    pub eig_tol: f64,
    /// Slack allowed below zero when testing positive semidefiniteness.
    pub psd_tol: f64,
    /// Relative eigenvalue cutoff used for rank, range and invertibility.
    pub rank_tol: f64,
    /// Relative Frobenius threshold for matrix equality.
    pub equality_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eig_tol: JACOBI_TOL,
            psd_tol: 1e-9,
            rank_tol: 1e-9,
            equality_tol: 1e-8,
        }
    }
}

impl Tolerances {
    /// Default tolerances with `psd_tol` replaced.
    pub fn with_psd(psd_tol: f64) -> Self {
        Tolerances {
            psd_tol,
            ..Tolerances::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.eig_tol, self.psd_tol, self.rank_tol, self.equality_tol];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(Error::BadParameter(
                "tolerances must be finite and strictly positive".into(),
            ))
        }
    }
}

fn order_scale(a: &SymMat, b: &SymMat) -> f64 {
    1.0_f64.max(a.frobenius_norm()).max(b.frobenius_norm())
}

/// Smallest eigenvalue of `B - A`.
pub fn min_gap(a: &SymMat, b: &SymMat) -> Result<f64> {
    a.same_dim(b)?;
    Ok(eigh(&(b - a))?.min())
}

/// `A ≤ B` in the Loewner order: `λ_min(B - A) ≥ -psd_tol · s` with
/// `s = max(1, ‖A‖_F, ‖B‖_F)`.
pub fn loewner_le(a: &SymMat, b: &SymMat, tol: &Tolerances) -> Result<bool> {
    Ok(min_gap(a, b)? >= -tol.psd_tol * order_scale(a, b))
}

/// `A < B`: `λ_min(B - A) > psd_tol · s`, same scale as [`loewner_le`].
pub fn loewner_lt(a: &SymMat, b: &SymMat, tol: &Tolerances) -> Result<bool> {
    Ok(min_gap(a, b)? > tol.psd_tol * order_scale(a, b))
}

pub fn is_psd(a: &SymMat, tol: &Tolerances) -> Result<bool> {
    let s = eigh(a)?;
    Ok(s.min() >= -tol.psd_tol * 1.0_f64.max(s.norm()))
}

fn checked_psd_spectrum(a: &SymMat, tol: &Tolerances) -> Result<Spectrum> {
    let s = eigh(a)?;
    if s.min() < -tol.psd_tol * 1.0_f64.max(s.norm()) {
        return Err(Error::NotPsd {
            min_eigenvalue: s.min(),
        });
    }
    Ok(s)
}

/// Positive square root. Eigenvalues in `[-psd_tol · max(1, ‖A‖₂), 0)` are
/// clamped to zero.
pub fn sqrt_psd(a: &SymMat, tol: &Tolerances) -> Result<SymMat> {
    let s = checked_psd_spectrum(a, tol)?;
    Ok(s.map(|l| l.max(0.0).sqrt()))
}

/// Inverse through the spectrum; fails when the smallest eigenvalue in
/// magnitude is below `rank_tol · ‖A‖₂`.
pub fn inv(a: &SymMat, tol: &Tolerances) -> Result<SymMat> {
    let s = eigh(a)?;
    let smallest = s
        .eigenvalues()
        .iter()
        .fold(f64::INFINITY, |m, v| m.min(v.abs()));
    if smallest <= tol.rank_tol * s.norm() || smallest == 0.0 {
        return Err(Error::Singular);
    }
    Ok(s.map(|l| 1.0 / l))
}

/// `V diag(f(λᵢ)) Vᵗ`. `f` returns `None` where it is undefined.
pub fn apply_fn<F>(a: &SymMat, f: F) -> Result<SymMat>
where
    F: Fn(f64) -> Option<f64>,
{
    let s = eigh(a)?;
    let mut d = Vec::with_capacity(s.len());
    for &l in s.eigenvalues() {
        match f(l) {
            Some(v) if v.is_finite() => d.push(v),
            _ => return Err(Error::DomainError { eigenvalue: l }),
        }
    }
    Ok(s.recombine(&d))
}

/// Moore–Penrose pseudoinverse of a PSD matrix together with an
/// orthonormal basis of its range.
#[derive(Debug, Clone)]
pub struct PseudoInverse {
    pub pinv: SymMat,
    pub range_basis: Vec<Vec<f64>>,
    rank_tol: f64,
}

impl PseudoInverse {
    pub fn rank(&self) -> usize {
        self.range_basis.len()
    }

    /// Distance from `x` to the range, relative to `‖x‖`.
    pub fn range_residual(&self, x: &[f64]) -> f64 {
        let nx = norm2(x);
        if nx == 0.0 {
            return 0.0;
        }
        let mut r = x.to_vec();
        for u in &self.range_basis {
            let c = dot(u, x);
            r.iter_mut().zip(u).for_each(|(ri, ui)| *ri -= c * ui);
        }
        norm2(&r) / nx
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.range_residual(x) <= self.rank_tol
    }
}

/// Pseudoinverse by spectral truncation at `rank_tol · λ_max`.
pub fn pinv_and_range(a: &SymMat, tol: &Tolerances) -> Result<PseudoInverse> {
    let s = checked_psd_spectrum(a, tol)?;
    let cutoff = tol.rank_tol * s.max().max(0.0);
    let mut d = Vec::with_capacity(s.len());
    let mut range_basis = Vec::new();
    for (i, &l) in s.eigenvalues().iter().enumerate() {
        if l > cutoff && l > 0.0 {
            d.push(1.0 / l);
            range_basis.push(s.vector(i));
        } else {
            d.push(0.0);
        }
    }
    Ok(PseudoInverse {
        pinv: s.recombine(&d),
        range_basis,
        rank_tol: tol.rank_tol,
    })
}

/// Modified Gram–Schmidt (two passes); vectors whose residual falls below
/// `tol` relative to their norm are dropped.
pub fn orthonormalize(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let nv = norm2(v);
        if nv == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &basis {
                let c = dot(u, &w);
                w.iter_mut().zip(u).for_each(|(wi, ui)| *wi -= c * ui);
            }
        }
        if norm2(&w) > tol * nv {
            basis.push(normalize(&w).expect("nonzero residual"));
        }
    }
    basis
}

/// Extends an orthonormal set to an orthonormal basis of `ℝⁿ`, drawing from
/// standard basis vectors in index order. Returns only the added vectors.
pub fn orthonormal_complement(basis: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut all = basis.to_vec();
    let start = all.len();
    for k in 0..n {
        if all.len() == n {
            break;
        }
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        let mut candidate = all.clone();
        candidate.push(e);
        let ortho = orthonormalize(&candidate, 1e-8);
        if ortho.len() > all.len() {
            all.push(ortho[ortho.len() - 1].clone());
        }
    }
    all.split_off(start)
}

/// Orthogonal projector onto the span of `vectors`.
pub fn projector(vectors: &[Vec<f64>], n: usize) -> SymMat {
    let mut p = SymMat::zeros(n);
    for u in orthonormalize(vectors, 1e-10) {
        p = &p + &SymMat::outer(&u);
    }
    p
}

/// Largest principal angle between two subspaces of equal dimension,
/// given by their orthogonal projectors: `asin ‖P₁ - P₂‖₂`.
pub fn principal_angle(p1: &SymMat, p2: &SymMat) -> Result<f64> {
    let gap = eigh(&p1.checked_sub(p2)?)?.norm();
    Ok(gap.min(1.0).asin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn m(rows: &[[f64; 2]]) -> SymMat {
        SymMat::from_rows(rows).unwrap()
    }

    #[test]
    fn loewner_le_examples() {
        let a = m(&[[1.0, 0.5], [0.5, 1.0]]);
        assert!(loewner_le(&a, &a, &tol()).unwrap());
        assert!(loewner_le(&SymMat::zeros(2), &SymMat::identity(2), &tol()).unwrap());
        // B - A has eigenvalues ±1/2
        assert!(!loewner_le(&a, &SymMat::identity(2), &tol()).unwrap());
    }

    #[test]
    fn loewner_lt_examples() {
        let zero = SymMat::zeros(2);
        assert!(loewner_lt(&zero, &SymMat::identity(2), &tol()).unwrap());
        assert!(!loewner_lt(&zero, &SymMat::from_diag(&[1.0, 0.0]), &tol()).unwrap());
        assert!(loewner_lt(&zero, &SymMat::from_diag(&[1.0, 2.0]), &tol()).unwrap());
    }

    #[test]
    fn order_rejects_dimension_mismatch() {
        let err = loewner_le(&SymMat::zeros(2), &SymMat::zeros(3), &tol()).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 2, right: 3 });
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(
            sqrt_psd(&SymMat::identity(3), &tol()).unwrap(),
            SymMat::identity(3)
        );
        let r = sqrt_psd(&SymMat::from_diag(&[4.0, 9.0]), &tol()).unwrap();
        assert!(r.distance(&SymMat::from_diag(&[2.0, 3.0])) < 1e-15);
        let a = m(&[[2.0, 1.0], [1.0, 2.0]]);
        let r = sqrt_psd(&a, &tol()).unwrap();
        let sq = SymMat::from_matrix(&(r.as_matrix() * r.as_matrix())).unwrap();
        assert!(sq.distance(&a) < 1e-14);
        let ev = eigh(&r).unwrap();
        assert!((ev.eigenvalues()[0] - 1.0).abs() < 1e-14);
        assert!((ev.eigenvalues()[1] - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn sqrt_clamps_tiny_negative_and_rejects_negative() {
        let r = sqrt_psd(&SymMat::from_diag(&[1.0, -1e-12]), &tol()).unwrap();
        assert_eq!(r.get(1, 1), 0.0);
        assert!(matches!(
            sqrt_psd(&SymMat::from_diag(&[1.0, -1e-3]), &tol()),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            inv(&SymMat::identity(2), &tol()).unwrap(),
            SymMat::identity(2)
        );
        let d = inv(&SymMat::from_diag(&[2.0, 1.0]), &tol()).unwrap();
        assert!(d.distance(&SymMat::from_diag(&[0.5, 1.0])) < 1e-15);
        // adjugate formula
        let r = inv(&m(&[[2.0, 1.0], [1.0, 2.0]]), &tol()).unwrap();
        let expect = m(&[[2.0 / 3.0, -1.0 / 3.0], [-1.0 / 3.0, 2.0 / 3.0]]);
        assert!(r.distance(&expect) < 1e-15);
        assert_eq!(
            inv(&SymMat::from_diag(&[1.0, 0.0]), &tol()).unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn apply_fn_examples() {
        let a = m(&[[0.3, 0.1], [0.1, 0.7]]);
        assert!(apply_fn(&a, Some).unwrap().distance(&a) < 1e-15);
        let sq = apply_fn(&SymMat::from_diag(&[0.25, 1.0]), |x| Some(x * x)).unwrap();
        assert!(sq.distance(&SymMat::from_diag(&[1.0 / 16.0, 1.0])) < 1e-16);
        let half = apply_fn(&SymMat::identity(2), |x| Some(x / (0.5 * x + 0.5))).unwrap();
        assert!(half.distance(&SymMat::identity(2)) < 1e-16);
        let err = apply_fn(&SymMat::from_diag(&[-1.0, 1.0]), |x| {
            (x >= 0.0).then(|| x.sqrt())
        })
        .unwrap_err();
        assert_eq!(err, Error::DomainError { eigenvalue: -1.0 });
    }

    #[test]
    fn pinv_examples() {
        let p = pinv_and_range(&SymMat::identity(2), &tol()).unwrap();
        assert_eq!(p.pinv, SymMat::identity(2));
        assert!(p.contains(&[0.6, 0.8]));

        let e1 = SymMat::from_diag(&[1.0, 0.0]);
        let p = pinv_and_range(&e1, &tol()).unwrap();
        assert_eq!(p.pinv, e1);
        assert!(!p.contains(&[0.0, 1.0]));
        assert_eq!(p.rank(), 1);

        let p = pinv_and_range(&SymMat::from_diag(&[2.0, 0.0]), &tol()).unwrap();
        assert_eq!(p.pinv, SymMat::from_diag(&[0.5, 0.0]));
        assert!(p.contains(&[1.0, 0.0]));

        assert!(matches!(
            pinv_and_range(&SymMat::from_diag(&[1.0, -1.0]), &tol()),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn complement_and_angles() {
        let basis = vec![vec![1.0, 1.0, 0.0]];
        let basis = orthonormalize(&basis, 1e-12);
        let comp = orthonormal_complement(&basis, 3);
        assert_eq!(comp.len(), 2);
        for c in &comp {
            assert!(dot(c, &basis[0]).abs() < 1e-14);
        }
        let p1 = projector(&[vec![1.0, 0.0]], 2);
        let p2 = projector(&[vec![1.0, 1.0]], 2);
        let angle = principal_angle(&p1, &p2).unwrap();
        assert!((angle - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn tolerances_validate() {
        assert!(tol().validate().is_ok());
        let bad = Tolerances {
            psd_tol: 0.0,
            ..tol()
        };
        assert!(bad.validate().is_err());
    }
}
