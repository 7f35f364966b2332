//! Randomized invariant checks behind `loewner selftest`.
//!
//! Each check draws from its own [`Sampler`] stream, so the suite is
//! reproducible for a given seed regardless of how checks are scheduled.

use std::time::{Duration, Instant};

use loewner_core::automorphisms::{recover_generator, EffectAutomorphism, MobiusForm};
use loewner_core::effects::{
    sharp, strength, strength_witness, third_decomposition, Effect, RankOneProjection,
};
use loewner_core::intervals::{
    build_chain, classify, conjugated_congruence_chain, iso_between, CanonicalClass, Endpoint,
    IntervalSpec,
};
use loewner_core::linalg::{eigh, loewner_le, principal_angle, projector};
use loewner_core::oracle::{monotonicity_report, strength_bisection, Sampler};
use loewner_core::{Error, Matrix, Result, SymMat, Tolerances};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Check {
    pub fn line(&self) -> String {
        format!(
            "{} {} ({}; {:.2} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn tol() -> Tolerances {
    Tolerances::default()
}

/// Frobenius-norm tolerances for the three accuracy tiers.
const FIXED_POINT_TOL: f64 = 1e-10;
const POINTWISE_TOL: f64 = 1e-8;
const ORACLE_GAP: f64 = 1e-6;

/// `per_dim` triples `(T, X ≤ Y)` for each `n` in `dims`; images compared
/// with `psd_tol = 1e-8`.
pub fn order_preservation(s: &mut Sampler, per_dim: usize, dims: std::ops::RangeInclusive<usize>) -> Check {
    timed("order_preservation", || {
        let check_tol = Tolerances::with_psd(1e-8);
        let (mut total, mut bad) = (0, 0);
        for n in dims {
            for _ in 0..per_dim {
                total += 1;
                let phi = EffectAutomorphism::new(s.invertible(n), &tol())?;
                let (x, y) = s.comparable_effects(n);
                let ok = match (phi.apply(&x, &tol()), phi.apply(&y, &tol())) {
                    (Ok(fx), Ok(fy)) => loewner_le(fx.mat(), fy.mat(), &check_tol)?,
                    _ => false,
                };
                bad += usize::from(!ok);
            }
        }
        Ok((bad == 0, format!("{bad} violations in {total} triples")))
    })
}

/// `φ_S ∘ φ_R` from composed generators against nested evaluation.
pub fn group_law(s: &mut Sampler, count: usize) -> Check {
    timed("group_law", || {
        let mut worst = 0.0_f64;
        for _ in 0..count {
            let n = s.dim();
            let phi_s = EffectAutomorphism::new(s.invertible(n), &tol())?;
            let phi_r = EffectAutomorphism::new(s.invertible(n), &tol())?;
            let both = phi_s.compose(&phi_r, &tol())?;
            let x = s.effect(n);
            let nested = phi_s.evaluate(&phi_r.evaluate(x.mat())?)?;
            worst = worst.max(both.evaluate(x.mat())?.distance(&nested));
        }
        Ok((worst <= POINTWISE_TOL, format!("max gap {worst:.2e} over {count}")))
    })
}

pub fn fixed_points(s: &mut Sampler, count: usize) -> Check {
    timed("fixed_points", || {
        let mut worst = 0.0_f64;
        for _ in 0..count {
            let n = s.dim();
            let phi = EffectAutomorphism::new(s.invertible(n), &tol())?;
            let zero = SymMat::zeros(n);
            let id = SymMat::identity(n);
            worst = worst
                .max(phi.evaluate(&zero)?.distance(&zero))
                .max(phi.evaluate(&id)?.distance(&id));
        }
        Ok((worst <= FIXED_POINT_TOL, format!("max drift {worst:.2e} over {count}")))
    })
}

/// Images of rank-one and rank-two projections are projections onto
/// `T(Im P)`.
pub fn projection_law(s: &mut Sampler, count: usize) -> Check {
    timed("projection_law", || {
        let (mut idem, mut angle) = (0.0_f64, 0.0_f64);
        for i in 0..count {
            let n = s.dim();
            let k = 1 + i % 2;
            let phi = EffectAutomorphism::new(s.invertible(n), &tol())?;
            let p = s.projection(n, k);
            let img = phi.evaluate(&p)?;
            let sq = SymMat::from_matrix(&(img.as_matrix() * img.as_matrix()))?;
            idem = idem.max(sq.distance(&img));
            let basis = eigh(&p)?;
            let cols: Vec<Vec<f64>> = (n - k..n)
                .map(|j| phi.generator().mul_vec(&basis.vector(j)))
                .collect();
            let spec = eigh(&img)?;
            let top: Vec<Vec<f64>> = (n - k..n).map(|j| spec.vector(j)).collect();
            angle = angle.max(principal_angle(&projector(&top, n), &projector(&cols, n))?);
        }
        let ok = idem <= POINTWISE_TOL && angle <= ORACLE_GAP;
        Ok((ok, format!("max |P²-P| {idem:.2e}, max angle {angle:.2e} over {count}")))
    })
}

/// Direction of the form `A g + c · (null part)`; `c = 0` keeps it in range.
fn direction_for(s: &mut Sampler, a: &SymMat, out_of_range: bool) -> Result<Vec<f64>> {
    let n = a.n();
    let spec = eigh(a)?;
    let cutoff = 1e-9 * spec.max().max(1.0);
    let mut v = vec![0.0; n];
    for i in 0..n {
        let w = if spec.eigenvalues()[i] > cutoff {
            s.normal()
        } else if out_of_range {
            s.uniform(0.5, 1.5)
        } else {
            0.0
        };
        v.iter_mut().zip(spec.vector(i)).for_each(|(vi, ui)| *vi += w * ui);
    }
    Ok(v)
}

/// Closed-form strength against the bisection oracle on PSD matrices of
/// every rank, with directions inside and outside the range.
pub fn strength_oracle(s: &mut Sampler, count: usize) -> Check {
    timed("strength_oracle", || {
        let oracle_tol = Tolerances::with_psd(1e-13);
        let (mut worst, mut singular, mut outside) = (0.0_f64, 0, 0);
        for _ in 0..count {
            let n = s.dim();
            let rank = 1 + s.dim() % n;
            let a = s.conditioned_psd(n, rank);
            let leave_range = rank < n && s.coin(0.5);
            let p = RankOneProjection::new(&direction_for(s, &a, leave_range)?)?;
            let closed = strength(&a, &p, &tol())?;
            let brute = strength_bisection(&a, &p, &oracle_tol)?;
            worst = worst.max((closed - brute).abs());
            singular += usize::from(rank < n);
            outside += usize::from(leave_range);
        }
        Ok((
            worst <= ORACLE_GAP,
            format!("max |Δ| {worst:.2e} over {count} ({singular} singular, {outside} out of range)"),
        ))
    })
}

/// `A ≤ B` exactly when no witness exists; every witness `(Q, t)` has
/// `tQ ≤ A` and `tQ ≰ B`.
pub fn witness_biconditional(s: &mut Sampler, count: usize) -> Check {
    timed("witness_biconditional", || {
        let (mut bad, mut found) = (0, 0);
        for i in 0..count {
            let n = s.dim();
            let (a, b) = if i % 2 == 0 {
                s.comparable_effects(n)
            } else {
                (s.effect(n), s.effect(n))
            };
            let le = loewner_le(a.mat(), b.mat(), &tol())?;
            match strength_witness(a.mat(), b.mat(), &tol())? {
                None => bad += usize::from(!le),
                Some(w) => {
                    found += 1;
                    let tq = w.projection.mat().scale(w.t);
                    let ok = !le
                        && loewner_le(&tq, a.mat(), &tol())?
                        && !loewner_le(&tq, b.mat(), &tol())?;
                    bad += usize::from(!ok);
                }
            }
        }
        Ok((bad == 0, format!("{bad} mismatches, {found} witnesses in {count} pairs")))
    })
}

/// Generators recovered from black-box evaluation match up to sign.
pub fn recovery_round_trip(s: &mut Sampler, count: usize) -> Check {
    timed("recovery_round_trip", || {
        let (mut bad, mut worst) = (0, 0.0_f64);
        for _ in 0..count {
            let n = 2 + s.dim() % 4;
            let phi = EffectAutomorphism::new(s.invertible(n), &tol())?;
            let got = recover_generator(|x| phi.apply(x, &tol()), n, &tol())?;
            bad += usize::from(!got.equals(&phi, &tol())?);
            for _ in 0..5 {
                let x = s.effect(n);
                worst = worst.max(got.evaluate(x.mat())?.distance(&phi.evaluate(x.mat())?));
            }
        }
        Ok((
            bad == 0 && worst <= ORACLE_GAP,
            format!("{bad} mismatched generators, max residual {worst:.2e} over {count}"),
        ))
    })
}

/// The rational `f_p`/`f_q` form is an automorphism and agrees with its
/// generator form.
pub fn mobius_bridge(s: &mut Sampler, count: usize, pairs: usize) -> Check {
    timed("mobius_bridge", || {
        let (mut violations, mut worst, mut escapes) = (0, 0.0_f64, 0);
        for _ in 0..count {
            let n = 2 + s.dim() % 3;
            let (p, q) = (s.uniform(-2.0, 0.9), s.uniform(-2.0, 0.9));
            let form = MobiusForm::new(p, q, s.contraction(n), &tol())?;
            let unit = CanonicalClass::UnitInterval.representative(n);
            let report = monotonicity_report(
                |x| Ok(form.apply(&Effect::new(x.clone(), &tol())?, &tol())?.into_mat()),
                &unit,
                pairs,
                s,
                &tol(),
            );
            violations += report.violated + report.reversed;
            escapes += report.errors;
            let phi = form.to_canonical(&tol())?;
            for _ in 0..5 {
                let x = s.effect(n);
                let direct = form.apply(&x, &tol())?;
                worst = worst.max(direct.mat().distance(phi.apply(&x, &tol())?.mat()));
            }
        }
        Ok((
            violations == 0 && escapes == 0 && worst <= ORACLE_GAP,
            format!("{violations} order violations, {escapes} images outside [0,I], max gap {worst:.2e} over {count}"),
        ))
    })
}

/// Hand-computed 2×2 values.
pub fn exact_fixtures() -> Check {
    timed("exact_fixtures", || {
        let sym = |r: [[f64; 2]; 2]| SymMat::from_rows(&r);
        let a = sym([[2.0 / 3.0, 1.0 / 3.0], [1.0 / 3.0, 2.0 / 3.0]])?;
        let q = third_decomposition(&a, &RankOneProjection::basis(2, 0), &tol())?
            .ok_or(Error::PreconditionViolated("no decomposition found".into()))?;
        let q_gap = q.mat().distance(&sym([[0.5, -0.5], [-0.5, 0.5]])?);

        let a2 = SymMat::from_diag(&[1.0 / 3.0, 1.0]);
        let p2 = RankOneProjection::new(&[1.0, 1.0])?;
        let rest = &a2 - &p2.mat().scale(0.5);
        let rest_gap = rest.distance(&sym([[1.0 / 12.0, -0.25], [-0.25, 0.75]])?);
        let low = eigh(&rest)?.eigenvalues()[0];

        let sharp_ok = sharp(&SymMat::from_diag(&[1.0, 0.0]))?.mat() == &sym([[0.5, 0.5], [0.5, 0.5]])?;
        let eps = f64::EPSILON;
        let ok = q_gap <= 4.0 * eps && rest_gap <= 4.0 * eps && low.abs() <= 4.0 * eps && sharp_ok;
        Ok((
            ok,
            format!("|Q - Q*| {q_gap:.1e}, |A - P/2 - R| {rest_gap:.1e}, λmin {low:.1e}, sharp exact {sharp_ok}"),
        ))
    })
}

/// The nine interval shapes over endpoints `A < B`.
pub fn interval_shapes(a: &SymMat, b: &SymMat) -> Vec<(Endpoint, Endpoint)> {
    use Endpoint::{MinusInfinity as Lo, PlusInfinity as Hi};
    let (c, o) = (Endpoint::closed, Endpoint::open);
    vec![
        (c(a.clone()), c(b.clone())),
        (c(a.clone()), o(b.clone())),
        (o(a.clone()), c(b.clone())),
        (o(a.clone()), o(b.clone())),
        (c(a.clone()), Hi),
        (o(a.clone()), Hi),
        (Lo, c(b.clone())),
        (Lo, o(b.clone())),
        (Lo, Hi),
    ]
}

fn random_endpoints(s: &mut Sampler, n: usize) -> (SymMat, SymMat) {
    let a = s.symmetric(n);
    let b = &a + &s.conditioned_psd(n, n);
    (a, b)
}

/// Closed finite endpoints of the canonical representatives.
fn canonical_endpoint(class: CanonicalClass, upper: bool, n: usize) -> Option<SymMat> {
    let rep = class.representative(n);
    let e = if upper { rep.upper() } else { rep.lower() };
    e.is_closed().then(|| e.value().expect("closed is finite").clone())
}

/// Every interval shape normalizes with even parity, exact closed
/// endpoints, preserved order and round-tripping isomorphisms.
pub fn interval_atlas(s: &mut Sampler, per_shape: usize, pairs: usize) -> Check {
    timed("interval_atlas", || {
        let mut failures: Vec<String> = Vec::new();
        let (mut endpoint_gap, mut trip_gap) = (0.0_f64, 0.0_f64);
        for _ in 0..per_shape {
            let n = s.dim();
            let (a1, b1) = random_endpoints(s, n);
            let (a2, b2) = random_endpoints(s, n);
            let shapes = interval_shapes(&a1, &b1).into_iter().zip(interval_shapes(&a2, &b2));
            for ((l1, u1), (l2, u2)) in shapes {
                let s1 = IntervalSpec::new(l1, u1, n, &tol())?;
                let s2 = IntervalSpec::new(l2, u2, n, &tol())?;
                let class = classify(&s1);
                let chain = build_chain(&s1, &tol())?;
                if !chain.is_order_preserving() {
                    failures.push(format!("{class}: odd parity"));
                }
                for (upper, end) in [(false, s1.lower()), (true, s1.upper())] {
                    if let (true, Some(v)) = (end.is_closed(), end.value()) {
                        let want = canonical_endpoint(class, upper, n)
                            .ok_or(Error::InvalidSpec("closed endpoint without canonical image".into()))?;
                        endpoint_gap = endpoint_gap.max(chain.evaluate(v)?.distance(&want));
                    }
                }
                let report = monotonicity_report(|x| chain.evaluate(x), &s1, pairs, s, &tol());
                if !report.is_monotone() {
                    failures.push(format!("{class}: {report:?}"));
                }
                let there = iso_between(&s1, &s2, &tol())?;
                let back = iso_between(&s2, &s1, &tol())?;
                let (x, _) = s.comparable_in(&s1, &tol())?;
                let y = there.evaluate(&x)?;
                if !s2.contains(&y, &tol())? {
                    failures.push(format!("{class}: image left the target interval"));
                }
                trip_gap = trip_gap.max(back.evaluate(&y)?.distance(&x));
            }
        }
        let pos = CanonicalClass::PositiveClosed.representative(2);
        let neg = CanonicalClass::NegativeClosed.representative(2);
        if !matches!(iso_between(&pos, &neg, &tol()), Err(Error::NotIsomorphic { .. })) {
            failures.push("[0,∞) and (-∞,0] were treated as isomorphic".into());
        }
        let ok = failures.is_empty() && endpoint_gap <= FIXED_POINT_TOL && trip_gap <= POINTWISE_TOL;
        let mut detail = format!(
            "9 shapes x {per_shape}, endpoint gap {endpoint_gap:.2e}, round trip {trip_gap:.2e}"
        );
        if let Some(first) = failures.first() {
            detail.push_str(&format!(", {} failures, first: {first}", failures.len()));
        }
        Ok((ok, detail))
    })
}

/// `ψ ∘ ξ ∘ ψ⁻¹` through interval chains against the generator formula.
pub fn conjugation_identity(s: &mut Sampler, count: usize) -> Check {
    timed("conjugation_identity", || {
        let mut worst = 0.0_f64;
        for _ in 0..count {
            let n = s.dim();
            let t: Matrix = s.invertible(n);
            let phi = EffectAutomorphism::new(t.clone(), &tol())?;
            let x = s.interior_effect(n, 0.01);
            let via_chain = conjugated_congruence_chain(&t)?.evaluate(x.mat())?;
            worst = worst.max(via_chain.distance(&phi.evaluate(x.mat())?));
        }
        Ok((worst <= POINTWISE_TOL, format!("max gap {worst:.2e} over {count}")))
    })
}

/// The full suite with counts scaled by `trials` (200 is the reference
/// size). Checks run on parallel threads, each with its own sampler stream.
pub fn run_suite(seed: u64, trials: usize) -> Vec<Check> {
    let scaled = |base: usize| (base * trials).div_ceil(200).max(1);
    let root = Sampler::new(seed);
    type Job<'a> = Box<dyn FnOnce(&mut Sampler) -> Check + Send + 'a>;
    let jobs: Vec<Job> = vec![
        Box::new(|s| order_preservation(s, scaled(200), 2..=6)),
        Box::new(|s| group_law(s, scaled(200))),
        Box::new(|s| fixed_points(s, scaled(100))),
        Box::new(|s| projection_law(s, scaled(200))),
        Box::new(|s| strength_oracle(s, scaled(500))),
        Box::new(|s| witness_biconditional(s, scaled(200))),
        Box::new(|s| recovery_round_trip(s, scaled(50))),
        Box::new(|s| mobius_bridge(s, scaled(30), 20)),
        Box::new(|_| exact_fixtures()),
        Box::new(|s| interval_atlas(s, scaled(10), 10)),
        Box::new(|s| conjugation_identity(s, scaled(100))),
    ];
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .into_iter()
            .enumerate()
            .map(|(k, job)| {
                let mut sampler = root.derive(k as u64);
                scope.spawn(move || job(&mut sampler))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    })
}
