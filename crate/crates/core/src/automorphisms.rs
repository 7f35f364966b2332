//! Order automorphisms of the effect algebra `[0, I]`.
//!
//! Every automorphism has the form
//!
//! ```text
//! φ_T(X) = T (X (TᵗT - I) + I)⁻¹ X Tᵗ
//! ```
//!
//! for an invertible generator `T`, unique up to sign. Composition and
//! inversion act on generators: `φ_S ∘ φ_R = φ_{SR}` and `φ_T⁻¹ = φ_{T⁻¹}`.
//! This module also evaluates the older parametrization through the
//! rational functions `f_p` and converts it to generator form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::effects::{dominant_direction, Effect, RankOneProjection};
use crate::error::{Error, Result};
use crate::linalg::{
    apply_fn, dot, eigh, inv, loewner_lt, normalize, principal_angle, sqrt_psd, Matrix, SymMat,
    Tolerances,
};

/// Shrink factor keeping the extension bound strictly inside `TᵗT > δI`.
const EXTENSION_SHRINK: f64 = 1e-12;
/// Frobenius residual accepted when comparing a recovered automorphism
/// with the map it was recovered from.
pub const RECOVERY_RESIDUAL: f64 = 1e-6;
const RECOVERY_PROBES: usize = 10;
const BRIDGE_PROBES: usize = 20;

/// `φ_T` with `T` stored in canonical sign.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectAutomorphism {
    generator: Matrix,
    extension: Option<f64>,
}

/// Flips `t` so that its first entry above `thresh` (row-major) is positive.
fn canonicalize(mut t: Matrix, thresh: f64) -> Matrix {
    if let Some(&v) = t.as_slice().iter().find(|v| v.abs() > thresh) {
        if v < 0.0 {
            t = t.scale(-1.0);
        }
    }
    t
}

fn gram(t: &Matrix) -> Result<SymMat> {
    SymMat::from_matrix(&(&t.transpose() * t))
}

impl EffectAutomorphism {
    pub fn new(t: Matrix, tol: &Tolerances) -> Result<EffectAutomorphism> {
        if !t.is_square() {
            return Err(Error::NotSquare {
                rows: t.rows(),
                cols: t.cols(),
            });
        }
        if t.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let det = t.determinant()?;
        if det.abs() <= tol.rank_tol {
            return Err(Error::Singular);
        }
        let norm = t.spectral_norm()?;
        let generator = canonicalize(t, tol.equality_tol * norm);

        let delta = eigh(&gram(&generator)?)?.min();
        let extension = if delta >= 1.0 {
            None
        } else {
            let d = delta * (1.0 - EXTENSION_SHRINK);
            Some(d / (1.0 - d))
        };
        let phi = EffectAutomorphism {
            generator,
            extension,
        };
        phi.certify_well_defined()?;
        Ok(phi)
    }

    pub fn identity(n: usize) -> EffectAutomorphism {
        EffectAutomorphism {
            generator: Matrix::identity(n),
            extension: None,
        }
    }

    pub fn n(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// `ε` such that the defining formula stays well defined on
    /// `[0, (1 + ε)I)`; `None` means every `ε > 0` works (`TᵗT ≥ I`).
    pub fn extension_bound(&self) -> Option<f64> {
        self.extension
    }

    /// `X (TᵗT - I) + I`.
    pub fn denominator(&self, x: &SymMat) -> Result<Matrix> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: x.n(),
            });
        }
        let shift = &gram(&self.generator)?.into_matrix() - &Matrix::identity(self.n());
        Ok(&(x.as_matrix() * &shift) + &Matrix::identity(self.n()))
    }

    fn certify_well_defined(&self) -> Result<()> {
        let n = self.n();
        let probes = [
            SymMat::zeros(n),
            SymMat::identity(n),
            SymMat::identity(n).scale(0.5),
            SymMat::from_diag(&{
                let mut d = vec![0.0; n];
                d[0] = 1.0;
                d
            }),
        ];
        for x in &probes {
            self.denominator(x)?
                .lu()
                .map_err(|_| Error::InternalInversionFailure)?;
        }
        Ok(())
    }

    /// The defining formula on any symmetric `X` where the denominator is
    /// invertible (in particular on `[0, (1 + ε)I)`), without certifying
    /// the image.
    pub fn evaluate(&self, x: &SymMat) -> Result<SymMat> {
        let lu = self
            .denominator(x)?
            .lu()
            .map_err(|_| Error::InternalInversionFailure)?;
        let z = lu.solve(x.as_matrix())?;
        let t = &self.generator;
        SymMat::from_matrix(&(&(t * &z) * &t.transpose()))
    }

    pub fn apply(&self, x: &Effect, tol: &Tolerances) -> Result<Effect> {
        let image = self.evaluate(x.mat())?;
        Effect::new(image, tol)
    }

    /// Like [`apply`](Self::apply) but validates a raw matrix first.
    pub fn apply_matrix(&self, x: &SymMat, tol: &Tolerances) -> Result<Effect> {
        let x = Effect::new(x.clone(), tol).map_err(|e| Error::NotAnEffect(Box::new(e)))?;
        self.apply(&x, tol)
    }

    /// `φ_self ∘ φ_other = φ_{T_self T_other}`.
    pub fn compose(&self, other: &EffectAutomorphism, tol: &Tolerances) -> Result<EffectAutomorphism> {
        let t = self.generator.checked_mul(&other.generator)?;
        EffectAutomorphism::new(t, tol)
    }

    pub fn inverse(&self, tol: &Tolerances) -> Result<EffectAutomorphism> {
        EffectAutomorphism::new(self.generator.inverse()?, tol)
    }

    /// Generators agree up to sign within `equality_tol` (relative).
    pub fn equals(&self, other: &EffectAutomorphism, tol: &Tolerances) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        let (a, b) = (&self.generator, &other.generator);
        let gap = (a - b).frobenius_norm().min((a + b).frobenius_norm());
        Ok(gap <= tol.equality_tol * a.frobenius_norm())
    }

    /// Projection onto `T(Im P)`, checked against the dominant eigenspace
    /// of `φ_T(P)`.
    pub fn project_image(&self, p: &RankOneProjection, tol: &Tolerances) -> Result<RankOneProjection> {
        let image = RankOneProjection::new(&self.generator.mul_vec(p.vector()))?;
        let mapped = self.evaluate(p.mat())?;
        let dominant = RankOneProjection::new(&dominant_direction(&mapped)?)?;
        if principal_angle(image.mat(), dominant.mat())? > RECOVERY_RESIDUAL.max(tol.equality_tol) {
            return Err(Error::InternalInversionFailure);
        }
        Ok(image)
    }
}

/// Deterministic pseudo-random effects for residual checks.
fn probe_effects(n: usize, count: usize, seed: u64) -> Vec<Effect> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let data: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
            let basis = eigh(&SymMat::new(n, data).expect("finite"))
                .expect("Jacobi converges on Gaussian input");
            let d: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let v = basis.eigenvectors();
            let x = SymMat::from_diag(&d)
                .congruence(v)
                .expect("square");
            Effect::new(x, &Tolerances::default()).expect("spectrum in [0, 1]")
        })
        .collect()
}

fn max_residual<F>(phi: &EffectAutomorphism, oracle: &mut F, probes: &[Effect]) -> Result<f64>
where
    F: FnMut(&Effect) -> Result<Effect>,
{
    let mut worst = 0.0_f64;
    for x in probes {
        let expect = oracle(x)?;
        let got = phi.evaluate(x.mat())?;
        worst = worst.max(got.distance(expect.mat()));
    }
    Ok(worst)
}

fn not_auto<E: std::fmt::Display>(what: &str) -> impl Fn(E) -> Error + '_ {
    move |e| Error::NotAutomorphism(format!("{what}: {e}"))
}

/// Every input [`recover_generator`] queries, in order: `I/2`, the basis
/// projections `eᵢeᵢᵗ`, the projections onto `(e₁ + e_j)/√2`, then
/// fixed pseudo-random effects for the residual check.
pub fn recovery_probes(n: usize) -> Vec<Effect> {
    let mut probes = vec![Effect::new(SymMat::identity(n).scale(0.5), &Tolerances::default())
        .expect("I/2 is an effect")];
    probes.extend((0..n).map(|i| RankOneProjection::basis(n, i).as_effect()));
    for j in 1..n {
        let mut mix = vec![0.0; n];
        mix[0] = 1.0;
        mix[j] = 1.0;
        probes.push(RankOneProjection::new(&mix).expect("nonzero").as_effect());
    }
    probes.extend(probe_effects(n, RECOVERY_PROBES, 0x5eed));
    probes
}

/// [`recover_generator`] driven by recorded `(input, image)` pairs that
/// must cover [`recovery_probes`].
pub fn recover_from_pairs(pairs: &[(Effect, Effect)], n: usize, tol: &Tolerances) -> Result<EffectAutomorphism> {
    let lookup = |x: &Effect| -> Result<Effect> {
        pairs
            .iter()
            .find(|(input, _)| input.n() == x.n() && input.mat().distance(x.mat()) <= 1e-12)
            .map(|(_, image)| image.clone())
            .ok_or_else(|| Error::NotAutomorphism("no image recorded for a required probe".into()))
    };
    recover_generator(lookup, n, tol)
}

/// Reconstructs the generator of a black-box automorphism of `[0, I]`.
///
/// `φ(I/2) = (I + (TTᵗ)⁻¹)⁻¹` fixes `TTᵗ`, hence `M = (TTᵗ)^{1/2}` and
/// `T = M O` with `O` orthogonal. Images of the basis projections give
/// the columns of `O` up to sign; images of the projections onto
/// `(e₁ + e_j)/√2` fix the relative signs.
///
/// The oracle is called sequentially and must be deterministic.
pub fn recover_generator<F>(mut oracle: F, n: usize, tol: &Tolerances) -> Result<EffectAutomorphism>
where
    F: FnMut(&Effect) -> Result<Effect>,
{
    if n == 0 {
        return Err(Error::BadParameter("dimension must be positive".into()));
    }
    let probes = recovery_probes(n);
    let id = SymMat::identity(n);
    let c = oracle(&probes[0])?;
    if c.n() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: c.n(),
        });
    }
    if !(loewner_lt(&SymMat::zeros(n), c.mat(), tol)? && loewner_lt(c.mat(), &id, tol)?) {
        return Err(Error::NotAutomorphism(
            "image of I/2 is not inside (0, I)".into(),
        ));
    }
    let s = &inv(c.mat(), tol).map_err(not_auto("image of I/2"))? - &id;
    let tt = inv(&s, tol).map_err(not_auto("(TTᵗ)⁻¹"))?;
    let m = sqrt_psd(&tt, tol).map_err(not_auto("TTᵗ"))?;
    let m_inv = m.as_matrix().inverse().map_err(not_auto("(TTᵗ)^1/2"))?;

    let direction = |img: &Effect| -> Result<Vec<f64>> {
        let v = dominant_direction(img.mat())?;
        normalize(&m_inv.mul_vec(&v))
            .ok_or_else(|| Error::NotAutomorphism("degenerate projection image".into()))
    };

    let mut columns = Vec::with_capacity(n);
    for probe in &probes[1..=n] {
        let img = oracle(probe)?;
        columns.push(direction(&img)?);
    }
    for j in 1..n {
        let img = oracle(&probes[n + j])?;
        let w = direction(&img)?;
        let plus: Vec<f64> = columns[0].iter().zip(&columns[j]).map(|(a, b)| a + b).collect();
        let minus: Vec<f64> = columns[0].iter().zip(&columns[j]).map(|(a, b)| a - b).collect();
        let align = |v: &[f64]| normalize(v).map_or(0.0, |u| dot(&u, &w).abs());
        if align(&minus) > align(&plus) {
            columns[j].iter_mut().for_each(|v| *v = -*v);
        }
    }

    let o = Matrix::from_columns(&columns)?;
    let defect = (&(&o.transpose() * &o) - &Matrix::identity(n)).frobenius_norm();
    if defect > RECOVERY_RESIDUAL {
        return Err(Error::NotAutomorphism(format!(
            "recovered orthogonal factor deviates by {defect:e}"
        )));
    }

    let phi = EffectAutomorphism::new(m.as_matrix() * &o, tol).map_err(not_auto("generator"))?;
    let residual = max_residual(&phi, &mut oracle, &probes[2 * n..])?;
    if residual > RECOVERY_RESIDUAL {
        return Err(Error::NotAutomorphism(format!(
            "recovered map misses the oracle by {residual:e}"
        )));
    }
    Ok(phi)
}

/// `f_p(x) = x / (px + 1 - p)`, an increasing bijection of `[0, 1]` for
/// every `p < 1`.
pub fn fp(p: f64, x: f64) -> Result<f64> {
    if !p.is_finite() || p >= 1.0 {
        return Err(Error::BadParameter(format!("p = {p} must be below 1")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::BadParameter(format!("x = {x} must lie in [0, 1]")));
    }
    Ok(x / (p * x + (1.0 - p)))
}

/// Parameters `(p, q, T)` of the map
///
/// ```text
/// X ↦ f_q( f_p(TTᵗ)^{-1/2} f_p(TXTᵗ) f_p(TTᵗ)^{-1/2} )
/// ```
///
/// with `p, q < 1` and `T` an invertible contraction.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusForm {
    p: f64,
    q: f64,
    t: Matrix,
}

impl MobiusForm {
    pub fn new(p: f64, q: f64, t: Matrix, tol: &Tolerances) -> Result<MobiusForm> {
        for (name, v) in [("p", p), ("q", q)] {
            if !v.is_finite() || v >= 1.0 {
                return Err(Error::BadParameter(format!("{name} = {v} must be below 1")));
            }
        }
        if !t.is_square() {
            return Err(Error::NotSquare {
                rows: t.rows(),
                cols: t.cols(),
            });
        }
        let smax = t.spectral_norm()?;
        if smax > 1.0 + tol.equality_tol {
            return Err(Error::BadParameter(format!(
                "‖T‖ = {smax} exceeds 1"
            )));
        }
        if t.min_singular_value()? <= tol.rank_tol {
            return Err(Error::Singular);
        }
        Ok(MobiusForm { p, q, t })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn t(&self) -> &Matrix {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.t.rows()
    }

    fn fp_matrix(p: f64, a: &SymMat, tol: &Tolerances) -> Result<SymMat> {
        let slack = tol.psd_tol;
        apply_fn(a, |l| {
            if l < -slack || l > 1.0 + slack {
                return None;
            }
            fp(p, l.clamp(0.0, 1.0)).ok()
        })
    }

    pub fn apply(&self, x: &Effect, tol: &Tolerances) -> Result<Effect> {
        if x.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: x.n(),
            });
        }
        let ttt = SymMat::identity(self.n()).congruence(&self.t)?;
        let txt = x.mat().congruence(&self.t)?;
        let outer = Self::fp_matrix(self.p, &ttt, tol)?;
        let floor = tol.rank_tol;
        let inv_sqrt = apply_fn(&outer, |l| Some(1.0 / l.max(floor).sqrt()))?;
        let inner = Self::fp_matrix(self.p, &txt, tol)?;
        let middle = inner.congruence(inv_sqrt.as_matrix())?;
        let image = Self::fp_matrix(self.q, &middle, tol)?;
        Effect::new(image, tol)
    }

    /// Generator form of the same automorphism, verified on
    /// deterministic probe effects.
    pub fn to_canonical(&self, tol: &Tolerances) -> Result<EffectAutomorphism> {
        let n = self.n();
        let phi = recover_generator(|x| self.apply(x, tol), n, tol)?;
        let mut oracle = |x: &Effect| self.apply(x, tol);
        let residual = max_residual(&phi, &mut oracle, &probe_effects(n, BRIDGE_PROBES, 0xb41d9e))?;
        if residual > RECOVERY_RESIDUAL {
            return Err(Error::NotAutomorphism(format!(
                "generator form misses the rational form by {residual:e}"
            )));
        }
        Ok(phi)
    }
}
