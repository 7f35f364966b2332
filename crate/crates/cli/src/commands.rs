//! Command implementations. Each returns the JSON document to print.

use loewner_core::automorphisms::{recover_from_pairs, recovery_probes, EffectAutomorphism};
use loewner_core::effects::{strength, strength_witness, Effect, RankOneProjection};
use loewner_core::intervals::{apply_chain, build_chain, classify};
use loewner_core::linalg::{is_psd, loewner_le, loewner_lt};
use loewner_core::Tolerances;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::doc::{
    chain_value, load_matrix, load_sym, load_vector, matrix_value, parse_arg, sym_value,
    IntervalDoc, MatrixDoc,
};
use crate::error::{CliError, CliResult};

/// `{le, lt}` plus, when `A ≰ B` and both are PSD, a witness `{q, t}`
/// with `tQ ≤ A` and `tQ ≰ B` (`Q = qqᵗ`).
pub fn order(a: &str, b: &str, tol: &Tolerances) -> CliResult<Value> {
    let (a, b) = (load_sym(a)?, load_sym(b)?);
    let le = loewner_le(&a, &b, tol)?;
    let mut out = Map::new();
    out.insert("le".into(), le.into());
    out.insert("lt".into(), loewner_lt(&a, &b, tol)?.into());
    if !le {
        let witness = if is_psd(&a, tol)? && is_psd(&b, tol)? {
            strength_witness(&a, &b, tol)?
                .map(|w| json!({"q": w.projection.vector(), "t": w.t}))
                .unwrap_or(Value::Null)
        } else {
            Value::Null
        };
        out.insert("witness".into(), witness);
    }
    Ok(Value::Object(out))
}

pub fn strength_cmd(a: &str, x: &str, tol: &Tolerances) -> CliResult<Value> {
    let a = load_sym(a)?;
    let x = load_vector(x)?;
    if x.len() != a.n() {
        return Err(CliError::Dimension(format!(
            "vector has {} entries, matrix has n = {}",
            x.len(),
            a.n()
        )));
    }
    let p = RankOneProjection::new(&x)?;
    Ok(json!({"alpha": strength(&a, &p, tol)?}))
}

fn automorphism(arg: &str, tol: &Tolerances) -> CliResult<EffectAutomorphism> {
    EffectAutomorphism::new(load_matrix(arg)?, tol).map_err(CliError::automorphism)
}

fn generator_value(phi: &EffectAutomorphism) -> Value {
    json!({"generator": matrix_value(phi.generator())})
}

pub fn phi_apply(t: &str, x: &str, tol: &Tolerances) -> CliResult<Value> {
    let phi = automorphism(t, tol)?;
    let image = phi.apply_matrix(&load_sym(x)?, tol)?;
    Ok(json!({"image": sym_value(image.mat())}))
}

pub fn phi_compose(s: &str, r: &str, tol: &Tolerances) -> CliResult<Value> {
    let (s, r) = (automorphism(s, tol)?, automorphism(r, tol)?);
    Ok(generator_value(&s.compose(&r, tol).map_err(CliError::automorphism)?))
}

pub fn phi_invert(t: &str, tol: &Tolerances) -> CliResult<Value> {
    let phi = automorphism(t, tol)?;
    Ok(generator_value(&phi.inverse(tol).map_err(CliError::automorphism)?))
}

/// The inputs `phi recover` needs images for.
pub fn phi_probes(n: usize) -> CliResult<Value> {
    if n == 0 {
        return Err(CliError::Parse("n must be at least 1".into()));
    }
    let probes: Vec<Value> = recovery_probes(n).iter().map(|e| sym_value(e.mat())).collect();
    Ok(json!({"n": n, "probes": probes}))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbePair {
    input: MatrixDoc,
    output: MatrixDoc,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecoverDoc {
    n: usize,
    pairs: Vec<ProbePair>,
}

/// Payload `{"n": n, "pairs": [{"input": X, "output": φ(X)}, ...]}`
/// covering every probe from `phi probes n`.
pub fn phi_recover(payload: &str, tol: &Tolerances) -> CliResult<Value> {
    let doc: RecoverDoc = parse_arg(payload)?;
    let mut pairs = Vec::with_capacity(doc.pairs.len());
    for p in &doc.pairs {
        let (x, y) = (p.input.to_sym()?, p.output.to_sym()?);
        if x.n() != doc.n || y.n() != doc.n {
            return Err(CliError::Dimension(format!(
                "probe pair of size {}/{} in a payload with n = {}",
                x.n(),
                y.n(),
                doc.n
            )));
        }
        let as_effect = |m| Effect::new(m, tol).map_err(CliError::automorphism);
        pairs.push((as_effect(x)?, as_effect(y)?));
    }
    let phi = recover_from_pairs(&pairs, doc.n, tol).map_err(CliError::automorphism)?;
    Ok(generator_value(&phi))
}

pub fn interval_classify(spec: &str, tol: &Tolerances) -> CliResult<Value> {
    let spec = parse_arg::<IntervalDoc>(spec)?.to_spec(tol)?;
    Ok(json!({"class": classify(&spec).name()}))
}

pub fn interval_chain(spec: &str, tol: &Tolerances) -> CliResult<Value> {
    let spec = parse_arg::<IntervalDoc>(spec)?.to_spec(tol)?;
    let mut out = chain_value(&build_chain(&spec, tol)?);
    out["class"] = classify(&spec).name().into();
    Ok(out)
}

pub fn interval_map(spec: &str, x: &str, tol: &Tolerances) -> CliResult<Value> {
    let spec = parse_arg::<IntervalDoc>(spec)?.to_spec(tol)?;
    let x = load_sym(x)?;
    let chain = build_chain(&spec, tol)?;
    let image = apply_chain(&chain, &x, &spec, tol)?;
    Ok(json!({"class": classify(&spec).name(), "image": sym_value(&image)}))
}
