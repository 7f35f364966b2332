//! Matrix intervals in the Loewner order, their five canonical classes,
//! and explicit order isomorphisms built from primitive maps.
//!
//! Every interval with at least one finite endpoint (or the whole space) is
//! order isomorphic to exactly one of `[0,I]`, `[0,∞)`, `(-∞,0]`, `(0,∞)`
//! and `(-∞,∞)`. [`build_chain`] returns such an isomorphism as a
//! [`MapChain`] of translations, congruences, inversions and negations.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{inv, loewner_le, loewner_lt, sqrt_psd, Matrix, SymMat, Tolerances};

#[derive(Debug, Clone, PartialEq)]
pub enum Endpoint {
    Finite { value: SymMat, closed: bool },
    PlusInfinity,
    MinusInfinity,
}

impl Endpoint {
    pub fn closed(value: SymMat) -> Endpoint {
        Endpoint::Finite {
            value,
            closed: true,
        }
    }

    pub fn open(value: SymMat) -> Endpoint {
        Endpoint::Finite {
            value,
            closed: false,
        }
    }

    pub fn value(&self) -> Option<&SymMat> {
        match self {
            Endpoint::Finite { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Infinite endpoints always count as open.
    pub fn is_closed(&self) -> bool {
        matches!(self, Endpoint::Finite { closed: true, .. })
    }
}

/// A validated interval `{X : lower ≤/< X ≤/< upper}` of `n × n`
/// symmetric matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSpec {
    lower: Endpoint,
    upper: Endpoint,
    n: usize,
}

impl IntervalSpec {
    pub fn new(lower: Endpoint, upper: Endpoint, n: usize, tol: &Tolerances) -> Result<IntervalSpec> {
        if n == 0 {
            return Err(Error::InvalidSpec("dimension must be at least 1".into()));
        }
        if lower == Endpoint::PlusInfinity {
            return Err(Error::InvalidSpec("lower endpoint cannot be +inf".into()));
        }
        if upper == Endpoint::MinusInfinity {
            return Err(Error::InvalidSpec("upper endpoint cannot be -inf".into()));
        }
        for e in [&lower, &upper] {
            if let Some(v) = e.value() {
                if v.n() != n {
                    return Err(Error::InvalidSpec(format!(
                        "endpoint has dimension {}, expected {n}",
                        v.n()
                    )));
                }
            }
        }
        if let (Some(a), Some(b)) = (lower.value(), upper.value()) {
            if !loewner_lt(a, b, tol)? {
                return Err(Error::InvalidSpec("finite endpoints must satisfy A < B".into()));
            }
        }
        Ok(IntervalSpec { lower, upper, n })
    }

    pub fn lower(&self) -> &Endpoint {
        &self.lower
    }

    pub fn upper(&self) -> &Endpoint {
        &self.upper
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Membership with strict inequalities at open endpoints.
    pub fn contains(&self, x: &SymMat, tol: &Tolerances) -> Result<bool> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.n(),
            });
        }
        let above = match &self.lower {
            Endpoint::Finite { value, closed: true } => loewner_le(value, x, tol)?,
            Endpoint::Finite { value, closed: false } => loewner_lt(value, x, tol)?,
            _ => true,
        };
        let below = match &self.upper {
            Endpoint::Finite { value, closed: true } => loewner_le(x, value, tol)?,
            Endpoint::Finite { value, closed: false } => loewner_lt(x, value, tol)?,
            _ => true,
        };
        Ok(above && below)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CanonicalClass {
    /// `[0, I]`
    UnitInterval,
    /// `[0, ∞)`
    PositiveClosed,
    /// `(-∞, 0]`
    NegativeClosed,
    /// `(0, ∞)`
    PositiveOpen,
    /// `(-∞, ∞)`
    Whole,
}

impl CanonicalClass {
    pub const ALL: [CanonicalClass; 5] = [
        CanonicalClass::UnitInterval,
        CanonicalClass::PositiveClosed,
        CanonicalClass::NegativeClosed,
        CanonicalClass::PositiveOpen,
        CanonicalClass::Whole,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CanonicalClass::UnitInterval => "unit_interval",
            CanonicalClass::PositiveClosed => "positive_closed",
            CanonicalClass::NegativeClosed => "negative_closed",
            CanonicalClass::PositiveOpen => "positive_open",
            CanonicalClass::Whole => "whole",
        }
    }

    pub fn from_name(name: &str) -> Option<CanonicalClass> {
        CanonicalClass::ALL.into_iter().find(|c| c.name() == name)
    }

    /// The representative interval of this class in dimension `n`.
    pub fn representative(self, n: usize) -> IntervalSpec {
        let zero = || SymMat::zeros(n);
        let (lower, upper) = match self {
            CanonicalClass::UnitInterval => {
                (Endpoint::closed(zero()), Endpoint::closed(SymMat::identity(n)))
            }
            CanonicalClass::PositiveClosed => (Endpoint::closed(zero()), Endpoint::PlusInfinity),
            CanonicalClass::NegativeClosed => (Endpoint::MinusInfinity, Endpoint::closed(zero())),
            CanonicalClass::PositiveOpen => (Endpoint::open(zero()), Endpoint::PlusInfinity),
            CanonicalClass::Whole => (Endpoint::MinusInfinity, Endpoint::PlusInfinity),
        };
        IntervalSpec { lower, upper, n }
    }
}

impl fmt::Display for CanonicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify(spec: &IntervalSpec) -> CanonicalClass {
    use Endpoint::*;
    match (&spec.lower, &spec.upper) {
        (MinusInfinity, PlusInfinity) => CanonicalClass::Whole,
        (l, Finite { closed: true, .. }) if l.is_closed() => CanonicalClass::UnitInterval,
        (l, _) if l.is_closed() => CanonicalClass::PositiveClosed,
        (_, u) if u.is_closed() => CanonicalClass::NegativeClosed,
        _ => CanonicalClass::PositiveOpen,
    }
}

/// `X ↦ T X Tᵗ` with the inverse generator cached, so inverting a chain
/// never fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Congruence {
    t: Matrix,
    t_inv: Matrix,
}

impl Congruence {
    pub fn new(t: Matrix) -> Result<Congruence> {
        if !t.is_square() {
            return Err(Error::NotSquare {
                rows: t.rows(),
                cols: t.cols(),
            });
        }
        let t_inv = t.inverse()?;
        Ok(Congruence { t, t_inv })
    }

    pub fn generator(&self) -> &Matrix {
        &self.t
    }

    pub fn inverse(&self) -> Congruence {
        Congruence {
            t: self.t_inv.clone(),
            t_inv: self.t.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PrimitiveMap {
    /// `X ↦ X + S`
    Translate(SymMat),
    Congruence(Congruence),
    /// `X ↦ X⁻¹`, order reversing on each definite cone.
    Invert,
    /// `X ↦ -X`, order reversing.
    Negate,
}

impl PrimitiveMap {
    pub fn is_reversing(&self) -> bool {
        matches!(self, PrimitiveMap::Invert | PrimitiveMap::Negate)
    }

    pub fn inverse(&self) -> PrimitiveMap {
        match self {
            PrimitiveMap::Translate(s) => PrimitiveMap::Translate(-s),
            PrimitiveMap::Congruence(c) => PrimitiveMap::Congruence(c.inverse()),
            PrimitiveMap::Invert => PrimitiveMap::Invert,
            PrimitiveMap::Negate => PrimitiveMap::Negate,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PrimitiveMap::Translate(_) => "translate",
            PrimitiveMap::Congruence(_) => "congruence",
            PrimitiveMap::Invert => "invert",
            PrimitiveMap::Negate => "negate",
        }
    }

    fn eval(&self, x: &SymMat) -> Result<SymMat> {
        match self {
            PrimitiveMap::Translate(s) => x.checked_add(s),
            PrimitiveMap::Congruence(c) => x.congruence(&c.t),
            PrimitiveMap::Invert => SymMat::from_matrix(&x.as_matrix().inverse()?),
            PrimitiveMap::Negate => Ok(-x),
        }
    }
}

/// A composition of primitive maps, applied first to last.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MapChain {
    steps: Vec<PrimitiveMap>,
}

impl MapChain {
    pub fn new(steps: Vec<PrimitiveMap>) -> MapChain {
        MapChain { steps }
    }

    pub fn empty() -> MapChain {
        MapChain::default()
    }

    pub fn steps(&self) -> &[PrimitiveMap] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `true` when the chain reverses the order (odd number of reversing
    /// steps).
    pub fn parity(&self) -> bool {
        self.steps.iter().fold(false, |p, s| p ^ s.is_reversing())
    }

    pub fn is_order_preserving(&self) -> bool {
        !self.parity()
    }

    /// Evaluates the chain without a domain check.
    pub fn evaluate(&self, x: &SymMat) -> Result<SymMat> {
        let mut cur = x.clone();
        for (step, map) in self.steps.iter().enumerate() {
            cur = map.eval(&cur).map_err(|e| match e {
                Error::Singular => Error::IntermediateSingular { step },
                other => other,
            })?;
        }
        Ok(cur)
    }
}

pub fn invert_chain(chain: &MapChain) -> MapChain {
    MapChain::new(chain.steps.iter().rev().map(PrimitiveMap::inverse).collect())
}

/// `outer ∘ inner`: runs `inner` first.
pub fn compose_chains(outer: &MapChain, inner: &MapChain) -> MapChain {
    let mut steps = inner.steps.clone();
    steps.extend(outer.steps.iter().cloned());
    MapChain::new(steps)
}

fn translate_to_zero(a: &SymMat, steps: &mut Vec<PrimitiveMap>) {
    if a.frobenius_norm() != 0.0 {
        steps.push(PrimitiveMap::Translate(-a));
    }
}

/// Steps sending `[A, B]` onto `[0, I]`: `X ↦ (B-A)^{-1/2} (X - A) (B-A)^{-1/2}`.
fn normalize_bounded(a: &SymMat, b: &SymMat, tol: &Tolerances) -> Result<Vec<PrimitiveMap>> {
    let mut steps = Vec::new();
    translate_to_zero(a, &mut steps);
    let width = b - a;
    if width != SymMat::identity(a.n()) {
        let c = inv(&sqrt_psd(&width, tol)?, tol)?;
        steps.push(PrimitiveMap::Congruence(Congruence::new(c.into_matrix())?));
    }
    Ok(steps)
}

/// Order isomorphism from `spec` onto the representative of its class.
///
/// Routes, after normalizing any bounded interval to the unit box:
/// `[0,I) → [0,∞)` and `(0,I) → (0,∞)` by `X ↦ (I-X)⁻¹ - I`,
/// `(0,I] → (-∞,0]` by `X ↦ I - X⁻¹`,
/// `(-∞,0) → (0,∞)` by `X ↦ (-X)⁻¹`.
pub fn build_chain(spec: &IntervalSpec, tol: &Tolerances) -> Result<MapChain> {
    use Endpoint::*;
    let n = spec.n;
    let id = SymMat::identity(n);
    let mut steps = Vec::new();
    match (&spec.lower, &spec.upper) {
        (MinusInfinity, PlusInfinity) => {}
        (Finite { value: a, .. }, PlusInfinity) => translate_to_zero(a, &mut steps),
        (MinusInfinity, Finite { value: b, closed }) => {
            translate_to_zero(b, &mut steps);
            if !closed {
                steps.extend([PrimitiveMap::Negate, PrimitiveMap::Invert]);
            }
        }
        (Finite { value: a, closed: ca }, Finite { value: b, closed: cb }) => {
            steps = normalize_bounded(a, b, tol)?;
            match (ca, cb) {
                (true, true) => {}
                (_, false) => steps.extend([
                    PrimitiveMap::Negate,
                    PrimitiveMap::Translate(id.clone()),
                    PrimitiveMap::Invert,
                    PrimitiveMap::Translate(-&id),
                ]),
                (false, true) => steps.extend([
                    PrimitiveMap::Invert,
                    PrimitiveMap::Negate,
                    PrimitiveMap::Translate(id),
                ]),
            }
        }
        _ => return Err(Error::InvalidSpec("unreachable endpoint combination".into())),
    }
    Ok(MapChain::new(steps))
}

/// Evaluates `chain` at `x` after checking `x ∈ domain`.
pub fn apply_chain(
    chain: &MapChain,
    x: &SymMat,
    domain: &IntervalSpec,
    tol: &Tolerances,
) -> Result<SymMat> {
    if !domain.contains(x, tol)? {
        return Err(Error::OutOfDomain);
    }
    chain.evaluate(x)
}

/// Order isomorphism `from → to`, routed through the shared canonical class.
pub fn iso_between(from: &IntervalSpec, to: &IntervalSpec, tol: &Tolerances) -> Result<MapChain> {
    let (cf, ct) = (classify(from), classify(to));
    if cf != ct || from.n != to.n {
        return Err(Error::NotIsomorphic {
            from: format!("{cf} (n={})", from.n),
            to: format!("{ct} (n={})", to.n),
        });
    }
    Ok(compose_chains(
        &invert_chain(&build_chain(to, tol)?),
        &build_chain(from, tol)?,
    ))
}

/// The order anti-isomorphism `X ↦ (I + X)⁻¹` of `(0,∞)` onto `(0,I)`.
pub fn anti_isomorphism_chain(n: usize) -> MapChain {
    MapChain::new(vec![
        PrimitiveMap::Translate(SymMat::identity(n)),
        PrimitiveMap::Invert,
    ])
}

/// `ψ ∘ ξ ∘ ψ⁻¹` where `ψ(X) = (I + X)⁻¹` and `ξ(X) = T' X T'ᵗ` with
/// `T' = (Tᵗ)⁻¹`. On `(0, I)` this realizes the effect automorphism with
/// generator `T`.
pub fn conjugated_congruence_chain(t: &Matrix) -> Result<MapChain> {
    let psi = anti_isomorphism_chain(t.rows());
    let xi = MapChain::new(vec![PrimitiveMap::Congruence(Congruence::new(
        t.transpose().inverse()?,
    )?)]);
    Ok(compose_chains(&psi, &compose_chains(&xi, &invert_chain(&psi))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cone {
    /// `X ≥ 0`
    Closed,
    /// `X > 0`
    Open,
}

/// `X ↦ T X Tᵗ` on the positive cone.
pub fn cone_automorphism_apply(t: &Matrix, x: &SymMat, cone: Cone, tol: &Tolerances) -> Result<SymMat> {
    let c = Congruence::new(t.clone())?;
    if t.rows() != x.n() {
        return Err(Error::DimensionMismatch {
            left: t.rows(),
            right: x.n(),
        });
    }
    let zero = SymMat::zeros(x.n());
    let inside = match cone {
        Cone::Closed => loewner_le(&zero, x, tol)?,
        Cone::Open => loewner_lt(&zero, x, tol)?,
    };
    if !inside {
        return Err(Error::OutOfDomain);
    }
    x.congruence(c.generator())
}

/// `X ↦ T X Tᵗ + S`, an order automorphism of the whole space.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineAutomorphism {
    t: Matrix,
    s: SymMat,
}

impl AffineAutomorphism {
    pub fn new(t: Matrix, s: SymMat) -> Result<AffineAutomorphism> {
        Congruence::new(t.clone())?;
        if t.rows() != s.n() {
            return Err(Error::DimensionMismatch {
                left: t.rows(),
                right: s.n(),
            });
        }
        Ok(AffineAutomorphism { t, s })
    }

    pub fn generator(&self) -> &Matrix {
        &self.t
    }

    pub fn shift(&self) -> &SymMat {
        &self.s
    }

    pub fn apply(&self, x: &SymMat) -> Result<SymMat> {
        x.congruence(&self.t)?.checked_add(&self.s)
    }
}

pub fn affine_automorphism_apply(a: &AffineAutomorphism, x: &SymMat) -> Result<SymMat> {
    a.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn eye(n: usize) -> SymMat {
        SymMat::identity(n)
    }

    fn zero(n: usize) -> SymMat {
        SymMat::zeros(n)
    }

    fn spec(lower: Endpoint, upper: Endpoint) -> IntervalSpec {
        IntervalSpec::new(lower, upper, 2, &tol()).unwrap()
    }

    fn a_b() -> (SymMat, SymMat) {
        let a = SymMat::from_rows(&[[0.5, 0.1], [0.1, -0.2]]).unwrap();
        let b = &a + &SymMat::from_rows(&[[2.0, 0.3], [0.3, 1.0]]).unwrap();
        (a, b)
    }

    #[test]
    fn classify_examples() {
        let (a, b) = a_b();
        use Endpoint::*;
        let cases = [
            (Endpoint::closed(a.clone()), Endpoint::closed(b.clone()), CanonicalClass::UnitInterval),
            (Endpoint::closed(zero(2)), Endpoint::open(eye(2)), CanonicalClass::PositiveClosed),
            (Endpoint::open(zero(2)), Endpoint::open(eye(2)), CanonicalClass::PositiveOpen),
            (MinusInfinity, Endpoint::closed(a.clone()), CanonicalClass::NegativeClosed),
            (MinusInfinity, PlusInfinity, CanonicalClass::Whole),
            (Endpoint::open(a.clone()), Endpoint::closed(b), CanonicalClass::NegativeClosed),
            (MinusInfinity, Endpoint::open(a.clone()), CanonicalClass::PositiveOpen),
            (Endpoint::closed(a), PlusInfinity, CanonicalClass::PositiveClosed),
        ];
        for (l, u, want) in cases {
            assert_eq!(classify(&spec(l, u)), want);
        }
    }

    #[test]
    fn invalid_specs() {
        let t = tol();
        let bad = [
            IntervalSpec::new(Endpoint::PlusInfinity, Endpoint::PlusInfinity, 2, &t),
            IntervalSpec::new(Endpoint::closed(eye(2)), Endpoint::closed(eye(2)), 2, &t),
            IntervalSpec::new(Endpoint::closed(eye(3)), Endpoint::PlusInfinity, 2, &t),
            IntervalSpec::new(Endpoint::MinusInfinity, Endpoint::MinusInfinity, 2, &t),
        ];
        for r in bad {
            assert!(matches!(r, Err(Error::InvalidSpec(_))), "{r:?}");
        }
    }

    #[test]
    fn unit_box_has_empty_chain() {
        let s = spec(Endpoint::closed(zero(2)), Endpoint::closed(eye(2)));
        assert!(build_chain(&s, &tol()).unwrap().is_empty());
    }

    #[test]
    fn bounded_chain_maps_endpoints() {
        let (a, b) = a_b();
        let s = spec(Endpoint::closed(a.clone()), Endpoint::closed(b.clone()));
        let c = build_chain(&s, &tol()).unwrap();
        let names: Vec<_> = c.steps().iter().map(PrimitiveMap::name).collect();
        assert_eq!(names, ["translate", "congruence"]);
        assert!(c.evaluate(&a).unwrap().distance(&zero(2)) < 1e-12);
        assert!(c.evaluate(&b).unwrap().distance(&eye(2)) < 1e-12);
    }

    #[test]
    fn half_open_unit_chain() {
        let s = spec(Endpoint::closed(zero(2)), Endpoint::open(eye(2)));
        let c = build_chain(&s, &tol()).unwrap();
        let names: Vec<_> = c.steps().iter().map(PrimitiveMap::name).collect();
        assert_eq!(names, ["negate", "translate", "invert", "translate"]);
        assert!(c.is_order_preserving());
        assert_eq!(apply_chain(&c, &zero(2), &s, &tol()).unwrap(), zero(2));
        let half = eye(2).scale(0.5);
        assert!(apply_chain(&c, &half, &s, &tol()).unwrap().distance(&eye(2)) < 1e-15);
        assert_eq!(apply_chain(&c, &eye(2), &s, &tol()), Err(Error::OutOfDomain));
    }

    #[test]
    fn every_shape_lands_in_its_representative() {
        let (a, b) = a_b();
        use Endpoint::*;
        let shapes = [
            (Endpoint::closed(a.clone()), Endpoint::closed(b.clone())),
            (Endpoint::closed(a.clone()), Endpoint::open(b.clone())),
            (Endpoint::open(a.clone()), Endpoint::closed(b.clone())),
            (Endpoint::open(a.clone()), Endpoint::open(b.clone())),
            (Endpoint::closed(a.clone()), PlusInfinity),
            (Endpoint::open(a.clone()), PlusInfinity),
            (MinusInfinity, Endpoint::closed(b.clone())),
            (MinusInfinity, Endpoint::open(b.clone())),
            (MinusInfinity, PlusInfinity),
        ];
        let mid = (&a + &b).scale(0.5);
        for (l, u) in shapes {
            let s = spec(l, u);
            let c = build_chain(&s, &tol()).unwrap();
            assert!(c.is_order_preserving());
            let rep = classify(&s).representative(2);
            let y = apply_chain(&c, &mid, &s, &tol()).unwrap();
            assert!(rep.contains(&y, &tol()).unwrap(), "{:?}", classify(&s));
            let back = invert_chain(&c).evaluate(&y).unwrap();
            assert!(back.distance(&mid) < 1e-10);
        }
    }

    #[test]
    fn open_upper_ray_uses_negated_inverse() {
        let s = spec(Endpoint::MinusInfinity, Endpoint::open(zero(2)));
        let c = build_chain(&s, &tol()).unwrap();
        let x = SymMat::from_diag(&[-2.0, -0.5]);
        let y = apply_chain(&c, &x, &s, &tol()).unwrap();
        assert!(y.distance(&SymMat::from_diag(&[0.5, 2.0])) < 1e-15);
    }

    #[test]
    fn inversion_and_composition_parity() {
        assert!(invert_chain(&MapChain::empty()).is_empty());
        let c = MapChain::new(vec![PrimitiveMap::Negate, PrimitiveMap::Translate(eye(2))]);
        assert!(c.parity());
        assert!(!compose_chains(&c, &c).parity());
    }

    #[test]
    fn iso_between_examples() {
        let t = tol();
        let (a, b) = a_b();
        let unit = CanonicalClass::UnitInterval.representative(2);
        let box_ab = spec(Endpoint::closed(a.clone()), Endpoint::closed(b.clone()));
        let c = iso_between(&unit, &box_ab, &t).unwrap();
        assert!(c.evaluate(&zero(2)).unwrap().distance(&a) < 1e-12);
        assert!(c.evaluate(&eye(2)).unwrap().distance(&b) < 1e-12);

        let pos = CanonicalClass::PositiveClosed.representative(2);
        let neg = CanonicalClass::NegativeClosed.representative(2);
        assert!(matches!(iso_between(&pos, &neg, &t), Err(Error::NotIsomorphic { .. })));

        let open_unit = spec(Endpoint::open(zero(2)), Endpoint::open(eye(2)));
        let c = iso_between(&open_unit, &CanonicalClass::PositiveOpen.representative(2), &t).unwrap();
        let y = c.evaluate(&eye(2).scale(0.25)).unwrap();
        assert!(y.distance(&eye(2).scale(1.0 / 3.0)) < 1e-15);
    }

    #[test]
    fn anti_chain_reverses() {
        let c = anti_isomorphism_chain(2);
        assert!(c.parity());
        let small = SymMat::from_diag(&[1.0, 2.0]);
        let big = SymMat::from_diag(&[3.0, 2.5]);
        let (fs, fb) = (c.evaluate(&small).unwrap(), c.evaluate(&big).unwrap());
        assert!(loewner_le(&fb, &fs, &tol()).unwrap());
    }

    #[test]
    fn foreign_chain_reports_singular_step() {
        let c = MapChain::new(vec![PrimitiveMap::Translate(-&eye(2)), PrimitiveMap::Invert]);
        assert_eq!(
            c.evaluate(&eye(2)),
            Err(Error::IntermediateSingular { step: 1 })
        );
    }

    #[test]
    fn cone_examples() {
        let t = tol();
        let x = SymMat::from_diag(&[1.0, 0.0]);
        assert_eq!(cone_automorphism_apply(&Matrix::identity(2), &x, Cone::Closed, &t).unwrap(), x);
        let d = Matrix::from_diag(&[2.0, 1.0]);
        assert_eq!(
            cone_automorphism_apply(&d, &x, Cone::Closed, &t).unwrap(),
            SymMat::from_diag(&[4.0, 0.0])
        );
        assert_eq!(cone_automorphism_apply(&d, &x, Cone::Open, &t), Err(Error::OutOfDomain));
        let pd = SymMat::from_diag(&[1.0, 0.5]);
        let y = cone_automorphism_apply(&d, &pd, Cone::Open, &t).unwrap();
        assert!(loewner_lt(&zero(2), &y, &t).unwrap());
    }

    #[test]
    fn affine_examples() {
        let x = SymMat::from_rows(&[[1.0, 2.0], [2.0, -3.0]]).unwrap();
        let id = AffineAutomorphism::new(Matrix::identity(2), zero(2)).unwrap();
        assert_eq!(affine_automorphism_apply(&id, &x).unwrap(), x);
        let shift = AffineAutomorphism::new(Matrix::identity(2), eye(2)).unwrap();
        assert_eq!(shift.apply(&zero(2)).unwrap(), eye(2));
        assert!(AffineAutomorphism::new(Matrix::zeros(2, 2), eye(2)).is_err());
    }
}
