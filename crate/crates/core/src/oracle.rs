//! Seeded samplers and brute-force reference computations used by the
//! property tests and the self-test command.
//!
//! The random source is ChaCha8 (`rand_chacha`), whose output stream is
//! fixed for a given seed and stream id across platforms and releases.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::effects::{strength, Effect, RankOneProjection};
use crate::error::{Error, Result};
use crate::intervals::{build_chain, classify, invert_chain, CanonicalClass, IntervalSpec};
use crate::linalg::{eigh, loewner_le, normalize, Matrix, SymMat, Tolerances};

const BISECTION_STEPS: usize = 60;

/// A single-owner stream of random matrices.
///
/// Cloning copies the stream position; [`Sampler::derive`] instead opens an
/// independent stream for a parallel shard.
#[derive(Debug, Clone)]
pub struct Sampler {
    seed: u64,
    rng: ChaCha8Rng,
    dims: RangeInclusive<usize>,
    condition_cap: f64,
}

impl Sampler {
    /// Dimensions default to `2..=6` and the condition cap to `10`.
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            dims: 2..=6,
            condition_cap: 10.0,
        }
    }

    pub fn with_dims(mut self, dims: RangeInclusive<usize>) -> Sampler {
        assert!(*dims.start() >= 1 && dims.start() <= dims.end());
        self.dims = dims;
        self
    }

    /// Upper bound on the condition number of sampled invertible matrices.
    pub fn with_condition_cap(mut self, cap: f64) -> Sampler {
        assert!(cap >= 1.0);
        self.condition_cap = cap;
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent sampler for shard `k`: same seed, different ChaCha
    /// stream, same dimension range and cap.
    pub fn derive(&self, k: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(k + 1);
        Sampler {
            seed: self.seed,
            rng,
            dims: self.dims.clone(),
            condition_cap: self.condition_cap,
        }
    }

    pub fn dim(&mut self) -> usize {
        self.rng.random_range(self.dims.clone())
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.rng.random::<f64>()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    pub fn gaussian_vector(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.normal()).collect()
    }

    pub fn unit_vector(&mut self, n: usize) -> Vec<f64> {
        loop {
            if let Some(u) = normalize(&self.gaussian_vector(n)) {
                return u;
            }
        }
    }

    /// `(G + Gᵗ)/2` with standard normal `G`.
    pub fn symmetric(&mut self, n: usize) -> SymMat {
        let data = (0..n * n).map(|_| self.normal()).collect();
        SymMat::from_matrix(&Matrix::from_row_major(n, n, data).expect("n*n entries"))
            .expect("finite")
    }

    /// Product of plane rotations through uniform angles, one per
    /// coordinate pair.
    pub fn orthogonal(&mut self, n: usize) -> Matrix {
        let mut q = Matrix::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                let theta = self.uniform(0.0, std::f64::consts::TAU);
                let (s, c) = theta.sin_cos();
                for r in 0..n {
                    let (a, b) = (q.get(r, i), q.get(r, j));
                    q.set(r, i, c * a - s * b);
                    q.set(r, j, s * a + c * b);
                }
            }
        }
        q
    }

    /// `U diag(σ) V` with singular values log-uniform in
    /// `[cap^{-1/2}, cap^{1/2}]` and a random determinant sign.
    pub fn invertible(&mut self, n: usize) -> Matrix {
        let half = 0.5 * self.condition_cap.ln();
        let sigma: Vec<f64> = (0..n).map(|_| self.uniform(-half, half).exp()).collect();
        let mut u = self.orthogonal(n);
        if self.coin(0.5) {
            for r in 0..n {
                let v = u.get(r, 0);
                u.set(r, 0, -v);
            }
        }
        let v = self.orthogonal(n);
        &(&u * &Matrix::from_diag(&sigma)) * &v
    }

    /// Invertible matrix rescaled to spectral norm uniform in `[1/2, 1]`.
    pub fn contraction(&mut self, n: usize) -> Matrix {
        let t = self.invertible(n);
        let norm = t.spectral_norm().expect("Jacobi converges on small matrices");
        let target = self.uniform(0.5, 1.0);
        t.scale(target / norm)
    }

    /// Symmetric matrix with prescribed eigenvalues in a random basis.
    pub fn with_spectrum(&mut self, eigenvalues: &[f64]) -> SymMat {
        let q = self.orthogonal(eigenvalues.len());
        SymMat::from_diag(eigenvalues)
            .congruence(&q)
            .expect("square rotation")
    }

    /// PSD matrix of the given rank, `Σ gₖgₖᵗ` over Gaussian `gₖ`.
    pub fn psd(&mut self, n: usize, rank: usize) -> SymMat {
        let mut acc = SymMat::zeros(n);
        for _ in 0..rank {
            acc = &acc + &SymMat::outer(&self.gaussian_vector(n));
        }
        acc
    }

    /// PSD matrix of the given rank whose nonzero eigenvalues lie in
    /// `[1, cap]`.
    pub fn conditioned_psd(&mut self, n: usize, rank: usize) -> SymMat {
        let cap = self.condition_cap;
        let mut d: Vec<f64> = (0..n)
            .map(|i| if i < rank { self.uniform(1.0, cap) } else { 0.0 })
            .collect();
        d.rotate_right(self.rng.random_range(0..n));
        self.with_spectrum(&d)
    }

    /// A random symmetric matrix whose spectrum is mapped affinely onto
    /// `[lo, hi] ⊂ [0, 1]`; each end is pinned to the boundary with
    /// probability 1/4.
    pub fn effect(&mut self, n: usize) -> Effect {
        let mut lo = self.uniform(0.0, 1.0);
        let mut hi = self.uniform(0.0, 1.0);
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
        }
        if self.coin(0.25) {
            lo = 0.0;
        }
        if self.coin(0.25) {
            hi = 1.0;
        }
        self.effect_in(n, lo, hi)
    }

    /// Effect with spectrum inside `[margin, 1 - margin]`.
    pub fn interior_effect(&mut self, n: usize, margin: f64) -> Effect {
        let lo = self.uniform(margin, 1.0 - margin);
        let hi = self.uniform(lo, 1.0 - margin);
        self.effect_in(n, lo, hi)
    }

    fn effect_in(&mut self, n: usize, lo: f64, hi: f64) -> Effect {
        let s = eigh(&self.symmetric(n)).expect("Jacobi converges on small matrices");
        let (a, b) = (s.min(), s.max());
        let span = b - a;
        let m = s.map(|l| {
            let u = if span > 0.0 { (l - a) / span } else { 0.5 };
            (lo + (hi - lo) * u).clamp(0.0, 1.0)
        });
        Effect::new(m, &Tolerances::default()).expect("spectrum inside [0, 1]")
    }

    pub fn rank_one(&mut self, n: usize) -> RankOneProjection {
        RankOneProjection::new(&self.unit_vector(n)).expect("unit vector")
    }

    /// Orthogonal projection of rank `k` onto a random subspace.
    pub fn projection(&mut self, n: usize, k: usize) -> SymMat {
        let q = self.orthogonal(n);
        let cols: Vec<Vec<f64>> = (0..k).map(|i| q.column(i)).collect();
        crate::linalg::projector(&cols, n)
    }

    /// Removes up to three rank-one pieces from `y`, each a random fraction
    /// in `[0.1, 0.9]` of the strength of the current remainder along a
    /// random direction of its range.
    pub fn lower_than(&mut self, y: &SymMat) -> SymMat {
        let tol = Tolerances::default();
        let n = y.n();
        let mut z = y.clone();
        for _ in 0..self.rng.random_range(1..=3) {
            let dir = z.mul_vec(&self.gaussian_vector(n));
            let Ok(p) = RankOneProjection::new(&dir) else {
                break;
            };
            let alpha = strength(&z, &p, &tol).unwrap_or(0.0);
            let t = self.uniform(0.1, 0.9) * alpha;
            z = &z - &p.mat().scale(t);
        }
        z
    }

    /// A pair `X ≤ Y` of effects with `X = Y - Σ tᵢPᵢ`.
    pub fn comparable_effects(&mut self, n: usize) -> (Effect, Effect) {
        let tol = Tolerances::default();
        let y = self.effect(n);
        let x = self.lower_than(y.mat());
        let x = Effect::new(x, &tol).unwrap_or_else(|_| Effect::zero(n));
        (x, y)
    }

    /// A comparable pair `X ≤ Y` (distinct whenever possible) inside the
    /// representative interval of `class`.
    pub fn comparable_in_class(&mut self, class: CanonicalClass, n: usize) -> (SymMat, SymMat) {
        match class {
            CanonicalClass::UnitInterval => {
                let (x, y) = self.comparable_effects(n);
                (x.into_mat(), y.into_mat())
            }
            CanonicalClass::PositiveClosed => {
                let rank = self.rng.random_range(0..=n);
                let x = self.conditioned_psd(n, rank);
                let k = self.rng.random_range(1..=n);
                let bump = self.psd(n, k);
                let y = &x + &bump;
                (x, y)
            }
            CanonicalClass::NegativeClosed => {
                let (x, y) = self.comparable_in_class(CanonicalClass::PositiveClosed, n);
                (-&y, -&x)
            }
            CanonicalClass::PositiveOpen => {
                let x = self.conditioned_psd(n, n).scale(self.uniform(0.1, 1.0));
                let k = self.rng.random_range(1..=n);
                let bump = self.psd(n, k);
                let y = &x + &bump;
                (x, y)
            }
            CanonicalClass::Whole => {
                let x = self.symmetric(n);
                let k = self.rng.random_range(1..=n);
                let bump = self.psd(n, k);
                let y = &x + &bump;
                (x, y)
            }
        }
    }

    /// A comparable pair inside `domain`, obtained by sampling in the
    /// canonical representative and pulling back through the inverse of
    /// [`build_chain`].
    pub fn comparable_in(&mut self, domain: &IntervalSpec, tol: &Tolerances) -> Result<(SymMat, SymMat)> {
        let back = invert_chain(&build_chain(domain, tol)?);
        let (x, y) = self.comparable_in_class(classify(domain), domain.n());
        Ok((back.evaluate(&x)?, back.evaluate(&y)?))
    }
}

/// Free-function forms of the sampler methods.
pub fn sample_effect(s: &mut Sampler) -> Effect {
    let n = s.dim();
    s.effect(n)
}

pub fn sample_invertible(s: &mut Sampler) -> Matrix {
    let n = s.dim();
    s.invertible(n)
}

pub fn sample_orthogonal(s: &mut Sampler) -> Matrix {
    let n = s.dim();
    s.orthogonal(n)
}

pub fn sample_comparable_pair(s: &mut Sampler) -> (Effect, Effect) {
    let n = s.dim();
    s.comparable_effects(n)
}

/// `sup { t : tP ≤ A }` by bisection on `[0, ‖A‖₂ + 1]` against
/// [`loewner_le`].
pub fn strength_bisection(a: &SymMat, p: &RankOneProjection, tol: &Tolerances) -> Result<f64> {
    a.same_dim(p.mat())?;
    let s = eigh(a)?;
    if s.min() < -tol.psd_tol * 1.0_f64.max(s.norm()) {
        return Err(Error::NotPsd {
            min_eigenvalue: s.min(),
        });
    }
    let (mut lo, mut hi) = (0.0, s.norm() + 1.0);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if loewner_le(&p.mat().scale(mid), a, tol)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Tally of how a map treats sampled comparable pairs `X ≤ Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MonotonicityReport {
    pub trials: usize,
    /// `f(X) ≤ f(Y)`.
    pub preserved: usize,
    /// `f(Y) ≤ f(X)` but not `f(X) ≤ f(Y)`.
    pub reversed: usize,
    /// Neither comparison holds.
    pub violated: usize,
    /// The map or the sampler returned an error.
    pub errors: usize,
}

impl MonotonicityReport {
    pub fn is_monotone(&self) -> bool {
        self.violated == 0 && self.errors == 0 && self.reversed == 0
    }

    pub fn is_antitone(&self) -> bool {
        self.violated == 0 && self.errors == 0 && self.preserved == 0
    }
}

/// Samples `trials` comparable pairs in `domain` and checks how `map`
/// orders their images.
pub fn monotonicity_report<F>(
    mut map: F,
    domain: &IntervalSpec,
    trials: usize,
    sampler: &mut Sampler,
    tol: &Tolerances,
) -> MonotonicityReport
where
    F: FnMut(&SymMat) -> Result<SymMat>,
{
    let mut report = MonotonicityReport {
        trials,
        ..MonotonicityReport::default()
    };
    for _ in 0..trials {
        let outcome = (|| -> Result<(bool, bool)> {
            let (x, y) = sampler.comparable_in(domain, tol)?;
            let (fx, fy) = (map(&x)?, map(&y)?);
            Ok((loewner_le(&fx, &fy, tol)?, loewner_le(&fy, &fx, tol)?))
        })();
        match outcome {
            Ok((true, _)) => report.preserved += 1,
            Ok((false, true)) => report.reversed += 1,
            Ok((false, false)) => report.violated += 1,
            Err(_) => report.errors += 1,
        }
    }
    report
}
