//! The effect algebra `[0, I]`: membership, rank-one projections, the
//! strength function and the small-dimensional constructions used to
//! characterize its order automorphisms.

use crate::error::{Error, Result};
use crate::linalg::{
    canonical_sign, dot, eigh, loewner_le, normalize, orthonormal_complement,
    orthonormalize, pinv_and_range, Matrix, SymMat, Tolerances,
};

/// A symmetric matrix certified to satisfy `0 ≤ A ≤ I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Effect {
    mat: SymMat,
}

impl Effect {
    pub fn new(mat: SymMat, tol: &Tolerances) -> Result<Effect> {
        let s = eigh(&mat)?;
        let slack = tol.psd_tol * 1.0_f64.max(s.norm());
        if s.min() < -slack {
            return Err(Error::OutOfInterval {
                eigenvalue: s.min(),
            });
        }
        if s.max() > 1.0 + slack {
            return Err(Error::OutOfInterval {
                eigenvalue: s.max(),
            });
        }
        Ok(Effect { mat })
    }

    pub fn zero(n: usize) -> Effect {
        Effect {
            mat: SymMat::zeros(n),
        }
    }

    pub fn identity(n: usize) -> Effect {
        Effect {
            mat: SymMat::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn mat(&self) -> &SymMat {
        &self.mat
    }

    pub fn into_mat(self) -> SymMat {
        self.mat
    }
}

impl AsRef<SymMat> for Effect {
    fn as_ref(&self) -> &SymMat {
        &self.mat
    }
}

pub fn make_effect(a: &SymMat, tol: &Tolerances) -> Result<Effect> {
    Effect::new(a.clone(), tol)
}

/// Orthogonal projection `x xᵗ` onto the line spanned by a unit vector.
///
/// The spanning vector is normalized and sign-fixed (first significant
/// entry positive), so two projections onto the same line compare equal.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneProjection {
    x: Vec<f64>,
    mat: SymMat,
}

impl RankOneProjection {
    pub fn new(x: &[f64]) -> Result<RankOneProjection> {
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut u = normalize(x)
            .ok_or_else(|| Error::BadParameter("cannot project onto the zero vector".into()))?;
        canonical_sign(&mut u, 1e-12);
        let mat = SymMat::outer(&u);
        Ok(RankOneProjection { x: u, mat })
    }

    /// Projection onto the `i`-th standard basis vector of `ℝⁿ`.
    pub fn basis(n: usize, i: usize) -> RankOneProjection {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        RankOneProjection::new(&e).expect("unit vector")
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn vector(&self) -> &[f64] {
        &self.x
    }

    pub fn mat(&self) -> &SymMat {
        &self.mat
    }

    pub fn as_effect(&self) -> Effect {
        Effect {
            mat: self.mat.clone(),
        }
    }
}

/// `α(A, P) = max { t : tP ≤ A }` for PSD `A`.
///
/// Closed form: zero when the spanning vector `x` leaves the range of `A`,
/// otherwise `1 / ⟨A⁺x, x⟩`. When `⟨A⁺x, x⟩` is too small to trust the
/// reciprocal, the supremum is bracketed by bisection instead.
pub fn strength(a: &SymMat, p: &RankOneProjection, tol: &Tolerances) -> Result<f64> {
    a.same_dim(p.mat())?;
    let pinv = pinv_and_range(a, tol)?;
    let x = p.vector();
    if !pinv.contains(x) {
        return Ok(0.0);
    }
    let q = pinv.pinv.quadratic_form(x);
    if q.abs() < 10.0 * tol.rank_tol {
        return strength_by_bisection(a, p, tol);
    }
    Ok(1.0 / q)
}

fn strength_by_bisection(a: &SymMat, p: &RankOneProjection, tol: &Tolerances) -> Result<f64> {
    let mut lo = 0.0;
    let mut hi = eigh(a)?.norm() + 1.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if loewner_le(&p.mat().scale(mid), a, tol)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// A rank-one lower bound of `A` that is not below `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrengthWitness {
    pub projection: RankOneProjection,
    pub t: f64,
}

fn require_psd(a: &SymMat, tol: &Tolerances) -> Result<()> {
    let s = eigh(a)?;
    if s.min() < -tol.psd_tol * 1.0_f64.max(s.norm()) {
        return Err(Error::NotPsd {
            min_eigenvalue: s.min(),
        });
    }
    Ok(())
}

/// When `A ≰ B`, produces `(Q, t)` with `tQ ≤ A` and `tQ ≰ B`.
///
/// `x` is a top eigenvector of `A - B` (so `⟨(A - B)x, x⟩ > 0`), `Q`
/// projects onto `Ax` and `t = ‖Ax‖² / ⟨Ax, x⟩`.
pub fn strength_witness(
    a: &SymMat,
    b: &SymMat,
    tol: &Tolerances,
) -> Result<Option<StrengthWitness>> {
    a.same_dim(b)?;
    require_psd(a, tol)?;
    require_psd(b, tol)?;
    if loewner_le(a, b, tol)? {
        return Ok(None);
    }
    let diff = eigh(&(a - b))?;
    let x = diff.vector(diff.top_index(1e-12 * 1.0_f64.max(diff.norm())));
    let ax = a.mul_vec(&x);
    let q = dot(&ax, &x);
    if q <= 0.0 {
        // ⟨Ax,x⟩ ≥ ⟨(A-B)x,x⟩ > 0 whenever B is PSD
        return Err(Error::NotPsd {
            min_eigenvalue: eigh(b)?.min(),
        });
    }
    let t = dot(&ax, &ax) / q;
    Ok(Some(StrengthWitness {
        projection: RankOneProjection::new(&ax)?,
        t,
    }))
}

/// If `B - A = tP` for a rank-one projection `P` (with `t ≥ 0`), returns
/// `(t, P)`. A zero difference yields `(0, e₁e₁ᵗ)`.
pub fn rank_one_segment(
    a: &Effect,
    b: &Effect,
    tol: &Tolerances,
) -> Result<Option<(f64, RankOneProjection)>> {
    a.mat().same_dim(b.mat())?;
    if !loewner_le(a.mat(), b.mat(), tol)? {
        return Err(Error::NotComparable);
    }
    let n = a.n();
    let d = eigh(&(b.mat() - a.mat()))?;
    let thresh = tol.rank_tol * (1.0 + d.norm());
    if n >= 2 && d.eigenvalues()[n - 2] > thresh {
        return Ok(None);
    }
    let t = d.max().max(0.0);
    if t <= thresh {
        return Ok(Some((0.0, RankOneProjection::basis(n, 0))));
    }
    Ok(Some((t, RankOneProjection::new(&d.vector(n - 1))?)))
}

/// Two distinct rank-one lower bounds `t₁P₁, t₂P₂ ≤ A` of a PSD matrix of
/// rank at least two, taken from its two dominant eigenpairs.
pub fn distinct_rank_one_lower_bounds(
    a: &SymMat,
    tol: &Tolerances,
) -> Result<Option<[(f64, RankOneProjection); 2]>> {
    require_psd(a, tol)?;
    let s = eigh(a)?;
    let n = s.len();
    if n < 2 {
        return Ok(None);
    }
    let cutoff = tol.rank_tol * 1.0_f64.max(s.norm());
    let (l1, l2) = (s.eigenvalues()[n - 1], s.eigenvalues()[n - 2]);
    if l2 <= cutoff {
        return Ok(None);
    }
    Ok(Some([
        (l1, RankOneProjection::new(&s.vector(n - 1))?),
        (l2, RankOneProjection::new(&s.vector(n - 2))?),
    ]))
}

/// Block form `A = I_K ⊕ B` for `K = span(Im P, Im Q)`.
#[derive(Debug, Clone)]
pub struct IdentityBlock {
    /// Orthonormal basis of `K`.
    pub k_basis: [Vec<f64>; 2],
    /// Orthonormal basis of `K⊥` (empty when `n = 2`).
    pub complement_basis: Vec<Vec<f64>>,
    /// Compression of `A` to `K⊥`, or `None` when `K⊥ = {0}`.
    pub block: Option<SymMat>,
    /// Largest deviation of the `K`-block from `I_K` and of the
    /// off-diagonal block from zero.
    pub residual: f64,
}

pub fn identity_block(
    a: &Effect,
    p: &RankOneProjection,
    q: &RankOneProjection,
    tol: &Tolerances,
) -> Result<IdentityBlock> {
    let n = a.n();
    a.mat().same_dim(p.mat())?;
    a.mat().same_dim(q.mat())?;
    if p.mat().distance(q.mat()) <= tol.equality_tol {
        return Err(Error::PreconditionViolated("P and Q coincide".into()));
    }
    if !loewner_le(p.mat(), a.mat(), tol)? {
        return Err(Error::PreconditionViolated("P <= A fails".into()));
    }
    if !loewner_le(q.mat(), a.mat(), tol)? {
        return Err(Error::PreconditionViolated("Q <= A fails".into()));
    }
    if !loewner_le(a.mat(), &SymMat::identity(n), tol)? {
        return Err(Error::PreconditionViolated("A <= I fails".into()));
    }

    let k = orthonormalize(&[p.vector().to_vec(), q.vector().to_vec()], 1e-12);
    if k.len() != 2 {
        return Err(Error::PreconditionViolated("P and Q coincide".into()));
    }
    let comp = orthonormal_complement(&k, n);
    let u = Matrix::from_columns(&k)?;
    let am = a.mat().as_matrix();

    let kk = &(&u.transpose() * am) * &u;
    let mut residual = (&kk - &Matrix::identity(2)).frobenius_norm();

    let block = if comp.is_empty() {
        None
    } else {
        let w = Matrix::from_columns(&comp)?;
        let off = &(&u.transpose() * am) * &w;
        residual = residual.max(off.frobenius_norm());
        Some(SymMat::from_matrix(&(&(&w.transpose() * am) * &w))?)
    };

    // Tolerance-level slack in P ≤ A ≤ I only bounds ‖(I - A)x‖ by its
    // square root.
    let certify = 10.0 * tol.psd_tol.sqrt();
    if residual > certify {
        return Err(Error::PreconditionViolated(format!(
            "block decomposition residual {residual:e} exceeds {certify:e}"
        )));
    }
    Ok(IdentityBlock {
        k_basis: [k[0].clone(), k[1].clone()],
        complement_basis: comp,
        block,
        residual,
    })
}

/// For `1/2 < s < 1`, builds orthogonal rank-one projections `P, Q` with
/// `pR ≤ P/2 + Q ⟺ p ≤ s`, i.e. `α(P/2 + Q, R) = s`.
///
/// Works in the plane spanned by `Im R` and the first standard basis
/// vector not parallel to it; `x` is chosen there with `⟨Rx, x⟩ = (1-s)/s`.
pub fn orthogonal_pair_for_strength(
    r: &RankOneProjection,
    s: f64,
) -> Result<(RankOneProjection, RankOneProjection)> {
    if !(s > 0.5 && s < 1.0) {
        return Err(Error::BadParameter(format!(
            "strength {s} must lie strictly between 1/2 and 1"
        )));
    }
    let n = r.n();
    if n < 2 {
        return Err(Error::BadParameter("dimension must be at least 2".into()));
    }
    let rv = r.vector();
    let w = (0..n)
        .find_map(|k| {
            let c = rv[k];
            if c.abs() >= 1.0 - 1e-12 {
                return None;
            }
            let mut e: Vec<f64> = rv.iter().map(|v| -c * v).collect();
            e[k] += 1.0;
            normalize(&e)
        })
        .expect("some basis vector is not parallel to a unit vector when n >= 2");

    let c = (1.0 - s) / s;
    let (a, b) = (c.sqrt(), (1.0 - c).sqrt());
    let x: Vec<f64> = rv.iter().zip(&w).map(|(ri, wi)| a * ri + b * wi).collect();
    let y: Vec<f64> = rv.iter().zip(&w).map(|(ri, wi)| -b * ri + a * wi).collect();
    Ok((RankOneProjection::new(&x)?, RankOneProjection::new(&y)?))
}

fn psd_rank_at_most_one(m: &SymMat, tol: &Tolerances) -> Result<bool> {
    let s = eigh(m)?;
    let scale = 1.0_f64.max(s.norm());
    let n = s.len();
    let second = if n >= 2 { s.eigenvalues()[n - 2] } else { 0.0 };
    Ok(s.min() >= -tol.psd_tol * scale && second <= tol.rank_tol * scale)
}

/// In dimension two: finds the rank-one projection `Q` with
/// `A = Q/3 + (I - Q)` and `tr(PQ) = 1/2`, if there is one.
///
/// Such a `Q` exists exactly when `A - P/2`, `A - (I - P)/2` and `I - A`
/// are all positive of rank at most one; `Q` is then `(3/2)(I - A)`.
pub fn third_decomposition(
    a: &SymMat,
    p: &RankOneProjection,
    tol: &Tolerances,
) -> Result<Option<RankOneProjection>> {
    if a.n() != 2 || p.n() != 2 {
        return Err(Error::PreconditionViolated(
            "decomposition is defined in dimension 2".into(),
        ));
    }
    let id = SymMat::identity(2);
    let half_p = p.mat().scale(0.5);
    let half_comp = (&id - p.mat()).scale(0.5);
    let rest = &id - a;
    if !(psd_rank_at_most_one(&(a - &half_p), tol)?
        && psd_rank_at_most_one(&(a - &half_comp), tol)?
        && psd_rank_at_most_one(&rest, tol)?)
    {
        return Ok(None);
    }
    let s = eigh(&rest)?;
    let q = RankOneProjection::new(&s.vector(1))?;

    let slack = tol.rank_tol.sqrt();
    let rebuilt = &q.mat().scale(1.0 / 3.0) + &(&id - q.mat());
    let overlap = dot(p.vector(), q.vector()).powi(2);
    if rebuilt.distance(a) > slack || (overlap - 0.5).abs() > slack {
        return Ok(None);
    }
    Ok(Some(q))
}

/// Maximal elements of `{ X diagonal effect : X ≤ A }` for a 2×2 effect.
#[derive(Debug, Clone, PartialEq)]
pub enum MaxDiagonalSet {
    /// `A` is itself diagonal.
    Singleton(SymMat),
    /// `A` has rank one with nonzero off-diagonal entry, so only `0 ≤ A`.
    ZeroOnly,
    /// `A = [[t, u], [u, s]]` invertible with `u ≠ 0`: the maximal
    /// elements are `diag(p, q)` with `0 ≤ p ≤ t`, `0 ≤ q ≤ s` and
    /// `(t - p)(s - q) = u²`.
    Curve { t: f64, s: f64, u: f64 },
}

impl MaxDiagonalSet {
    /// Whether `diag(p, q)` is a maximal element.
    pub fn is_maximal(&self, p: f64, q: f64, tol: f64) -> bool {
        match self {
            MaxDiagonalSet::Singleton(d) => {
                (d.get(0, 0) - p).abs() <= tol && (d.get(1, 1) - q).abs() <= tol
            }
            MaxDiagonalSet::ZeroOnly => p.abs() <= tol && q.abs() <= tol,
            MaxDiagonalSet::Curve { t, s, u } => {
                (-tol..=t + tol).contains(&p)
                    && (-tol..=s + tol).contains(&q)
                    && ((t - p) * (s - q) - u * u).abs() <= tol
            }
        }
    }

    /// Equality of the underlying maximal sets; curves differing only in
    /// the sign of `u` coincide.
    pub fn same_set(&self, other: &MaxDiagonalSet, tol: f64) -> bool {
        match (self, other) {
            (MaxDiagonalSet::Singleton(a), MaxDiagonalSet::Singleton(b)) => a.distance(b) <= tol,
            (MaxDiagonalSet::ZeroOnly, MaxDiagonalSet::ZeroOnly) => true,
            (
                MaxDiagonalSet::Curve { t, s, u },
                MaxDiagonalSet::Curve {
                    t: t2,
                    s: s2,
                    u: u2,
                },
            ) => (t - t2).abs() <= tol && (s - s2).abs() <= tol && (u.abs() - u2.abs()).abs() <= tol,
            // the zero matrix is diagonal but its lower set is {0}
            (MaxDiagonalSet::Singleton(a), MaxDiagonalSet::ZeroOnly)
            | (MaxDiagonalSet::ZeroOnly, MaxDiagonalSet::Singleton(a)) => {
                a.frobenius_norm() <= tol
            }
            _ => false,
        }
    }
}

/// Accepts any positive 2×2 matrix; effects are the usual input.
pub fn maximal_diagonals<A: AsRef<SymMat>>(a: A, tol: &Tolerances) -> Result<MaxDiagonalSet> {
    let m = a.as_ref();
    if m.n() != 2 {
        return Err(Error::PreconditionViolated(
            "maximal diagonals are defined in dimension 2".into(),
        ));
    }
    require_psd(m, tol)?;
    let (t, s, u) = (m.get(0, 0), m.get(1, 1), m.get(0, 1));
    if u.abs() <= tol.equality_tol {
        return Ok(MaxDiagonalSet::Singleton(SymMat::from_diag(&[t, s])));
    }
    if t * s - u * u <= tol.rank_tol {
        return Ok(MaxDiagonalSet::ZeroOnly);
    }
    Ok(MaxDiagonalSet::Curve { t, s, u })
}

/// The fixed 2×2 matrices used by the sharp map.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoByTwoConstants {
    /// `diag(1, -1)`.
    pub j: SymMat,
    /// `basis_p - basis_m = [[0, 1], [1, 0]]`.
    pub j_sharp: SymMat,
    /// Projection onto `(1, 1)/√2`.
    pub basis_p: SymMat,
    /// Projection onto `(1, -1)/√2`.
    pub basis_m: SymMat,
}

impl Default for TwoByTwoConstants {
    fn default() -> Self {
        let sym = |r: [[f64; 2]; 2]| SymMat::from_rows(&r).expect("finite constant");
        TwoByTwoConstants {
            j: sym([[1.0, 0.0], [0.0, -1.0]]),
            j_sharp: sym([[0.0, 1.0], [1.0, 0.0]]),
            basis_p: sym([[0.5, 0.5], [0.5, 0.5]]),
            basis_m: sym([[0.5, -0.5], [-0.5, 0.5]]),
        }
    }
}

/// `diag(s, t) ↦ s·basis_p + t·basis_m`.
pub fn sharp(x: &SymMat) -> Result<Effect> {
    if x.n() != 2 {
        return Err(Error::DimensionMismatch {
            left: x.n(),
            right: 2,
        });
    }
    if x.get(0, 1) != 0.0 {
        return Err(Error::NotDiagonal);
    }
    let (s, t) = (x.get(0, 0), x.get(1, 1));
    for v in [s, t] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::OutOfInterval { eigenvalue: v });
        }
    }
    let mat = SymMat::from_rows(&[[0.5 * (s + t), 0.5 * (s - t)], [0.5 * (s - t), 0.5 * (s + t)]])?;
    Ok(Effect { mat })
}

/// Unit vector spanning the image of a rank-one effect's top eigenspace.
pub(crate) fn dominant_direction(a: &SymMat) -> Result<Vec<f64>> {
    let s = eigh(a)?;
    Ok(s.vector(s.len() - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::norm2;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn sym2(r: [[f64; 2]; 2]) -> SymMat {
        SymMat::from_rows(&r).unwrap()
    }

    #[test]
    fn make_effect_examples() {
        assert!(make_effect(&SymMat::identity(2), &tol()).is_ok());
        assert!(make_effect(&SymMat::from_diag(&[1.0 / 3.0, 1.0]), &tol()).is_ok());
        assert_eq!(
            make_effect(&SymMat::from_diag(&[2.0, 0.0]), &tol()).unwrap_err(),
            Error::OutOfInterval { eigenvalue: 2.0 }
        );
        assert!(matches!(
            make_effect(&SymMat::from_diag(&[-0.5, 0.5]), &tol()),
            Err(Error::OutOfInterval { .. })
        ));
    }

    #[test]
    fn projection_normalizes_and_fixes_sign() {
        let p = RankOneProjection::new(&[-3.0, -4.0]).unwrap();
        assert_eq!(p.vector(), &[0.6, 0.8]);
        let m = p.mat().as_matrix();
        assert!((&(m * m) - m).frobenius_norm() < 1e-15);
        assert!(RankOneProjection::new(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn strength_examples() {
        let p = RankOneProjection::new(&[0.3, -0.7, 0.2]).unwrap();
        assert!((strength(&SymMat::identity(3), &p, &tol()).unwrap() - 1.0).abs() < 1e-12);
        let tp = p.mat().scale(0.37);
        assert!((strength(&tp, &p, &tol()).unwrap() - 0.37).abs() < 1e-12);

        let r = sym2([
            [1.0 / 3.0, 2f64.sqrt() / 3.0],
            [2f64.sqrt() / 3.0, 2.0 / 3.0],
        ]);
        let x = dominant_direction(&r).unwrap();
        let rp = RankOneProjection::new(&x).unwrap();
        let a = SymMat::from_diag(&[0.5, 1.0]);
        assert!((strength(&a, &rp, &tol()).unwrap() - 0.75).abs() < 1e-12);

        let a = SymMat::from_diag(&[2.0, 1.0]);
        let e1 = RankOneProjection::basis(2, 0);
        assert!((strength(&a, &e1, &tol()).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn strength_out_of_range_is_zero() {
        let a = SymMat::from_diag(&[1.0, 0.0]);
        let e2 = RankOneProjection::basis(2, 1);
        assert_eq!(strength(&a, &e2, &tol()).unwrap(), 0.0);
        assert!(matches!(
            strength(&SymMat::from_diag(&[1.0, -1.0]), &e2, &tol()),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn strength_bisection_fallback_on_huge_scale() {
        let a = SymMat::from_diag(&[1e10, 1.0]);
        let e1 = RankOneProjection::basis(2, 0);
        let s = strength(&a, &e1, &tol()).unwrap();
        assert!((s - 1e10).abs() / 1e10 < 1e-6);
    }

    #[test]
    fn witness_examples() {
        let id = SymMat::identity(2);
        assert!(strength_witness(&SymMat::zeros(2), &id, &tol())
            .unwrap()
            .is_none());

        let w = strength_witness(&id, &id.scale(0.5), &tol()).unwrap().unwrap();
        assert_eq!(w.projection.vector(), &[1.0, 0.0]);
        assert!((w.t - 1.0).abs() < 1e-15);

        let a = SymMat::from_diag(&[1.0, 0.0]);
        let b = SymMat::from_diag(&[0.0, 1.0]);
        let w = strength_witness(&a, &b, &tol()).unwrap().unwrap();
        assert_eq!(w.projection.vector(), &[1.0, 0.0]);
        assert!((w.t - 1.0).abs() < 1e-15);
        let tq = w.projection.mat().scale(w.t);
        assert!(loewner_le(&tq, &a, &tol()).unwrap());
        assert!(!loewner_le(&tq, &b, &tol()).unwrap());
    }

    #[test]
    fn rank_one_segment_examples() {
        let a = Effect::new(sym2([[0.3, 0.1], [0.1, 0.4]]), &tol()).unwrap();
        let (t, p) = rank_one_segment(&a, &a, &tol()).unwrap().unwrap();
        assert_eq!(t, 0.0);
        assert_eq!(p, RankOneProjection::basis(2, 0));

        let b = Effect::new(SymMat::from_diag(&[0.5, 0.0]), &tol()).unwrap();
        let (t, p) = rank_one_segment(&Effect::zero(2), &b, &tol()).unwrap().unwrap();
        assert!((t - 0.5).abs() < 1e-15);
        assert_eq!(p, RankOneProjection::basis(2, 0));

        let c = Effect::new(SymMat::from_diag(&[0.5, 0.5]), &tol()).unwrap();
        assert!(rank_one_segment(&Effect::zero(2), &c, &tol()).unwrap().is_none());
        assert_eq!(
            rank_one_segment(&c, &Effect::zero(2), &tol()).unwrap_err(),
            Error::NotComparable
        );
    }

    #[test]
    fn identity_block_examples() {
        let e = |i| RankOneProjection::basis(3, i);
        let blk = identity_block(&Effect::identity(3), &e(0), &e(1), &tol()).unwrap();
        assert!((blk.block.unwrap().get(0, 0) - 1.0).abs() < 1e-15);

        let a = Effect::new(SymMat::from_diag(&[1.0, 1.0, 0.5]), &tol()).unwrap();
        let blk = identity_block(&a, &e(0), &e(1), &tol()).unwrap();
        assert_eq!(blk.k_basis, [vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        assert_eq!(blk.complement_basis, vec![vec![0.0, 0.0, 1.0]]);
        assert!((blk.block.unwrap().get(0, 0) - 0.5).abs() < 1e-15);
        assert!(blk.residual < 1e-15);

        let bad = Effect::new(SymMat::from_diag(&[1.0, 0.5, 0.5]), &tol()).unwrap();
        assert_eq!(
            identity_block(&bad, &e(0), &e(1), &tol()).unwrap_err(),
            Error::PreconditionViolated("Q <= A fails".into())
        );
        assert!(matches!(
            identity_block(&a, &e(0), &e(0), &tol()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn identity_block_two_dimensional() {
        let p = RankOneProjection::new(&[1.0, 0.0]).unwrap();
        let q = RankOneProjection::new(&[1.0, 1.0]).unwrap();
        let blk = identity_block(&Effect::identity(2), &p, &q, &tol()).unwrap();
        assert!(blk.block.is_none());
        assert!(blk.complement_basis.is_empty());
    }

    #[test]
    fn orthogonal_pair_explicit_frame() {
        let r = RankOneProjection::basis(2, 0);
        let (p, q) = orthogonal_pair_for_strength(&r, 0.75).unwrap();
        assert!(dot(p.vector(), q.vector()).abs() < 1e-15);
        let a = &p.mat().scale(0.5) + q.mat();
        assert!((strength(&a, &r, &tol()).unwrap() - 0.75).abs() < 1e-12);
        assert!((dot(p.vector(), r.vector()).powi(2) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_pair_rejects_boundary() {
        let r = RankOneProjection::basis(2, 0);
        for s in [0.5, 1.0, 0.2, f64::NAN] {
            assert!(matches!(
                orthogonal_pair_for_strength(&r, s),
                Err(Error::BadParameter(_))
            ));
        }
    }

    #[test]
    fn third_decomposition_fixtures() {
        let a = sym2([[2.0 / 3.0, 1.0 / 3.0], [1.0 / 3.0, 2.0 / 3.0]]);
        let p = RankOneProjection::basis(2, 0);
        let q = third_decomposition(&a, &p, &tol()).unwrap().unwrap();
        let expect = sym2([[0.5, -0.5], [-0.5, 0.5]]);
        assert!(q.mat().distance(&expect) < 1e-15);

        let a = SymMat::from_diag(&[1.0 / 3.0, 1.0]);
        let p = RankOneProjection::new(&[1.0, 1.0]).unwrap();
        let q = third_decomposition(&a, &p, &tol()).unwrap().unwrap();
        assert!(q.mat().distance(&SymMat::from_diag(&[1.0, 0.0])) < 1e-15);

        let p = RankOneProjection::new(&[0.6, 0.8]).unwrap();
        assert!(third_decomposition(&SymMat::identity(2), &p, &tol())
            .unwrap()
            .is_none());
    }

    #[test]
    fn maximal_diagonal_cases() {
        let d = Effect::new(SymMat::from_diag(&[0.5, 1.0 / 3.0]), &tol()).unwrap();
        assert_eq!(
            maximal_diagonals(&d, &tol()).unwrap(),
            MaxDiagonalSet::Singleton(SymMat::from_diag(&[0.5, 1.0 / 3.0]))
        );
        let r = Effect::new(sym2([[0.5, 0.5], [0.5, 0.5]]), &tol()).unwrap();
        assert_eq!(maximal_diagonals(&r, &tol()).unwrap(), MaxDiagonalSet::ZeroOnly);
        let set = maximal_diagonals(sym2([[1.0, 0.5], [0.5, 1.0]]), &tol()).unwrap();
        assert_eq!(
            set,
            MaxDiagonalSet::Curve {
                t: 1.0,
                s: 1.0,
                u: 0.5
            }
        );
        // (1 - 1/2)(1 - 1/2) = 1/4 = u²
        assert!(set.is_maximal(0.5, 0.5, 1e-15));
        assert!(!set.is_maximal(0.25, 0.25, 1e-15));

        let c = Effect::new(sym2([[0.6, 0.2], [0.2, 0.5]]), &tol()).unwrap();
        let set = maximal_diagonals(&c, &tol()).unwrap();
        assert_eq!(
            set,
            MaxDiagonalSet::Curve {
                t: 0.6,
                s: 0.5,
                u: 0.2
            }
        );
        // (0.6 - 0.2)(0.5 - 0.4) = 0.04
        assert!(set.is_maximal(0.2, 0.4, 1e-12));
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp(&SymMat::identity(2)).unwrap().mat(), &SymMat::identity(2));
        assert_eq!(sharp(&SymMat::zeros(2)).unwrap().mat(), &SymMat::zeros(2));
        assert_eq!(
            sharp(&SymMat::from_diag(&[1.0, 0.0])).unwrap().mat(),
            &sym2([[0.5, 0.5], [0.5, 0.5]])
        );
        assert_eq!(
            sharp(&sym2([[0.5, 0.1], [0.1, 0.5]])).unwrap_err(),
            Error::NotDiagonal
        );
    }

    #[test]
    fn two_by_two_constants() {
        let c = TwoByTwoConstants::default();
        let j = c.j.as_matrix();
        assert_eq!(&(j * j), &Matrix::identity(2));
        assert_eq!(&c.basis_p + &c.basis_m, SymMat::identity(2));
        assert_eq!(
            &(c.basis_p.as_matrix() * c.basis_m.as_matrix()),
            &Matrix::zeros(2, 2)
        );
        assert_eq!(&c.basis_p - &c.basis_m, c.j_sharp);
    }

    #[test]
    fn norm_of_projection_vector() {
        let p = RankOneProjection::new(&[1.0, 2.0, 2.0]).unwrap();
        assert!((norm2(p.vector()) - 1.0).abs() < 1e-15);
    }
}
