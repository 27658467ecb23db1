// SPDX-License-Identifier: Apache-2.0
//! JSON encodings of fields, scalars, forms, classes, descriptors and reports.

use crate::algebras::ProductDesc;
use crate::cohomology::{Class, Payload};
use crate::error::{Error, Result};
use crate::fields::{FieldDesc, Scalar};
use crate::hilbert::Place;
use crate::invariants::{Certificate, DivisionVerdict, InvariantReport, Isotopy, QuadOver, RostSpec, TowerQuad};
use crate::qforms::{QuadraticForm, WittClass};
use crate::tkk::GradedProfile;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, BTreeSet};

const MAX_LEN: usize = 4096;

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn obj(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| bad("expected an object"))
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    obj(v)?.get(key).ok_or_else(|| bad(format!("missing key '{key}'")))
}

fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?.as_str().ok_or_else(|| bad(format!("'{key}' must be a string")))
}

fn arr<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    let a = v.as_array().ok_or_else(|| bad(format!("'{what}' must be an array")))?;
    if a.len() > MAX_LEN {
        return Err(bad(format!("'{what}' is too long")));
    }
    Ok(a)
}

fn get_arr<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    arr(get(v, key)?, key)
}

fn get_bool(v: &Value, key: &str) -> Result<bool> {
    match get(v, key)? {
        Value::Bool(b) => Ok(*b),
        Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
        Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
        _ => Err(bad(format!("'{key}' must be a boolean or 0/1"))),
    }
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?
        .as_u64()
        .filter(|n| *n <= 1 << 20)
        .map(|n| n as usize)
        .ok_or_else(|| bad(format!("'{key}' must be a small nonnegative integer")))
}

/// Parses a JSON document, mapping syntax errors to `Error::Parse`.
pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

// fields and scalars

pub fn field_to_json(k: &FieldDesc) -> Value {
    match k {
        FieldDesc::Q => json!({"kind": "Q"}),
        FieldDesc::Fp(p) => json!({"kind": "Fp", "p": p}),
        FieldDesc::Quad(b, d) => json!({"kind": "quad", "base": field_to_json(b), "d": b.fmt_scalar(d)}),
        FieldDesc::Laurent(b, vars) => json!({"kind": "laurent", "base": field_to_json(b), "vars": vars}),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldDesc> {
    match get_str(v, "kind")? {
        "Q" | "q" => Ok(FieldDesc::Q),
        "Fp" | "fp" => {
            let p = get(v, "p")?;
            let p = p.as_u64().or_else(|| p.as_str().and_then(|s| s.parse().ok())).ok_or_else(|| bad("'p' must be a prime"))?;
            FieldDesc::fp(p)
        }
        "quad" => {
            let base = field_from_json(get(v, "base")?)?;
            let d = scalar_from_json(&base, get(v, "d")?)?;
            FieldDesc::quad(base, d)
        }
        "laurent" => {
            let base = field_from_json(get(v, "base")?)?;
            let vars = get_arr(v, "vars")?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("variable names must be strings")))
                .collect::<Result<Vec<_>>>()?;
            if vars.len() > 64 {
                return Err(bad("too many variables"));
            }
            FieldDesc::laurent(base, vars)
        }
        other => Err(bad(format!("unknown field kind '{other}'"))),
    }
}

/// Accepts the shorthands `Q`, `F7`, `Fp7` and `Fp:7` besides full JSON.
pub fn field_from_str(s: &str) -> Result<FieldDesc> {
    let t = s.trim();
    if t.starts_with('{') {
        return field_from_json(&parse(t)?);
    }
    if t == "Q" || t == "q" {
        return Ok(FieldDesc::Q);
    }
    let digits = t.strip_prefix("Fp:").or_else(|| t.strip_prefix("Fp")).or_else(|| t.strip_prefix('F'));
    match digits.and_then(|d| d.parse::<u64>().ok()) {
        Some(p) => FieldDesc::fp(p),
        None => Err(bad(format!("unknown field '{s}'"))),
    }
}

pub fn scalar_to_json(k: &FieldDesc, s: &Scalar) -> Value {
    Value::String(k.fmt_scalar(s))
}

pub fn scalar_from_json(k: &FieldDesc, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => k.parse_scalar(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(k.from_i64(i)),
            None => Err(bad("numeric scalars must be integers")),
        },
        _ => Err(bad("scalars must be strings or integers")),
    }
}

fn scalars_from_json(k: &FieldDesc, v: &Value, what: &str) -> Result<Vec<Scalar>> {
    arr(v, what)?.iter().map(|x| scalar_from_json(k, x)).collect()
}

fn scalars_to_json(k: &FieldDesc, v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| scalar_to_json(k, s)).collect())
}

/// The field of an object: its own `field` key, else the fallback.
fn field_of(v: &Value, fallback: Option<&FieldDesc>) -> Result<FieldDesc> {
    match obj(v)?.get("field") {
        Some(f) => field_from_json(f),
        None => fallback.cloned().ok_or_else(|| bad("missing key 'field' and no --field given")),
    }
}

// quadratic forms

pub fn form_to_json(q: &QuadraticForm) -> Value {
    json!({"field": field_to_json(&q.field), "entries": scalars_to_json(&q.field, &q.entries)})
}

pub fn form_from_json(v: &Value, fallback: Option<&FieldDesc>) -> Result<QuadraticForm> {
    let k = field_of(v, fallback)?;
    let entries = scalars_from_json(&k, get(v, "entries")?, "entries")?;
    QuadraticForm::diagonal(k, entries)
}

pub fn witt_to_json(w: &WittClass) -> Value {
    json!({
        "field": field_to_json(&w.kernel.field),
        "kernel": scalars_to_json(&w.kernel.field, &w.kernel.entries),
        "hyperbolic": w.hyperbolic,
    })
}

pub fn witt_from_json(v: &Value, fallback: Option<&FieldDesc>) -> Result<WittClass> {
    let k = field_of(v, fallback)?;
    let entries = scalars_from_json(&k, get(v, "kernel")?, "kernel")?;
    let kernel = QuadraticForm::diagonal(k, entries)?;
    Ok(WittClass { kernel, hyperbolic: get_usize(v, "hyperbolic")? })
}

// cohomology classes

pub fn class_to_json(c: &Class) -> Value {
    let deg = c.degree;
    match &c.payload {
        Payload::Bit(b) => {
            let backend = if c.field == FieldDesc::Q { "Q" } else { "Fp" };
            json!({"degree": deg, "backend": backend, "bit": u8::from(*b)})
        }
        Payload::Sq(s) => json!({"degree": deg, "backend": "Q", "class": s.to_string()}),
        Payload::Ram(r) => json!({"degree": deg, "backend": "Q", "ramified": r.iter().map(|p| p.to_string()).collect::<Vec<_>>()}),
        Payload::Terms(m) => {
            let names = match &c.field {
                FieldDesc::Laurent(_, v) => v.clone(),
                _ => Vec::new(),
            };
            let terms: Vec<Value> = m
                .iter()
                .map(|(s, b)| json!({"vars": s.iter().map(|i| names[*i].clone()).collect::<Vec<_>>(), "base": class_to_json(b)}))
                .collect();
            json!({"degree": deg, "backend": "laurent", "terms": terms})
        }
    }
}

fn is_squarefree(n: &BigInt) -> bool {
    if n.is_zero() {
        return false;
    }
    let m = n.abs();
    if m.bits() > 40 {
        return false;
    }
    let mut m = num_traits::ToPrimitive::to_u64(&m).unwrap_or(0);
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d * d) {
            return false;
        }
        if m.is_multiple_of(d) {
            m /= d;
        }
        d += 1;
    }
    true
}

/// Decodes a class over `k`, rejecting payloads that are not in canonical form.
pub fn class_from_json(k: &FieldDesc, v: &Value) -> Result<Class> {
    let backend = get_str(v, "backend")?;
    match (k, backend) {
        (FieldDesc::Laurent(base, names), "laurent") => {
            let degree = get_usize(v, "degree")?;
            let mut terms = BTreeMap::new();
            for t in get_arr(v, "terms")? {
                let mut idx = Vec::new();
                for n in get_arr(t, "vars")? {
                    let n = n.as_str().ok_or_else(|| bad("variable names must be strings"))?;
                    idx.push(names.iter().position(|x| x == n).ok_or_else(|| bad(format!("unknown variable '{n}'")))?);
                }
                if idx.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(bad("term variables must be strictly increasing"));
                }
                let b = class_from_json(base, get(t, "base")?)?;
                if idx.len() > degree || b.degree != degree - idx.len() {
                    return Err(bad("term degree mismatch"));
                }
                if b.is_zero() || terms.insert(idx, b).is_some() {
                    return Err(bad("zero or repeated term"));
                }
            }
            Ok(Class { field: k.clone(), degree, payload: Payload::Terms(terms) })
        }
        (FieldDesc::Q, "Q") => {
            let degree = get_usize(v, "degree")?;
            let payload = match degree {
                1 => {
                    let s: BigInt = get_str(v, "class")?.parse().map_err(|_| bad("'class' must be an integer"))?;
                    if !is_squarefree(&s) {
                        return Err(bad("'class' must be a squarefree integer"));
                    }
                    Payload::Sq(s)
                }
                2 => {
                    let mut set = BTreeSet::new();
                    for p in get_arr(v, "ramified")? {
                        let p = p.as_str().and_then(Place::parse).ok_or_else(|| bad("bad place"))?;
                        if !set.insert(p) {
                            return Err(bad("repeated place"));
                        }
                    }
                    if set.len() % 2 == 1 {
                        return Err(bad("a quaternion class ramifies at an even number of places"));
                    }
                    Payload::Ram(set)
                }
                _ => Payload::Bit(get_bool(v, "bit")?),
            };
            Ok(Class { field: k.clone(), degree, payload })
        }
        (FieldDesc::Fp(_), "Fp") => {
            let degree = get_usize(v, "degree")?;
            let bit = get_bool(v, "bit")?;
            if bit && degree >= 2 {
                return Err(bad("a finite field has no cohomology above degree 1"));
            }
            Ok(Class { field: k.clone(), degree, payload: Payload::Bit(bit) })
        }
        _ => Err(bad(format!("backend '{backend}' does not match the field"))),
    }
}

// product descriptors

fn quad_to_json(base: &FieldDesc, s: &Scalar) -> Value {
    match s {
        Scalar::Quad(a, b) => json!([base.fmt_scalar(a), base.fmt_scalar(b)]),
        other => json!([base.fmt_scalar(other), "0"]),
    }
}

fn quad_from_json(layer: &FieldDesc, v: &Value) -> Result<Scalar> {
    let FieldDesc::Quad(base, _) = layer else { unreachable!() };
    match v {
        Value::Array(p) if p.len() == 2 => Ok(Scalar::Quad(Box::new(scalar_from_json(base, &p[0])?), Box::new(scalar_from_json(base, &p[1])?))),
        Value::Array(_) => Err(bad("scalars over E are pairs [a, b] meaning a + b·sqrt(d)")),
        other => match scalar_from_json(layer, other)? {
            q @ Scalar::Quad(..) => Ok(q),
            s => Ok(Scalar::Quad(Box::new(s), Box::new(base.zero()))),
        },
    }
}

pub fn desc_to_json(d: &ProductDesc) -> Value {
    match d {
        ProductDesc::Decomposable { field, mu1, mu2 } => json!({
            "kind": "decomposable",
            "field": field_to_json(field),
            "mu1": scalars_to_json(field, mu1),
            "mu2": scalars_to_json(field, mu2),
        }),
        ProductDesc::Corestriction { field, d, mu } => json!({
            "kind": "corestriction",
            "field": field_to_json(field),
            "d": field.fmt_scalar(d),
            "mu": mu.iter().map(|s| quad_to_json(field, s)).collect::<Vec<_>>(),
        }),
    }
}

pub fn desc_from_json(v: &Value, fallback: Option<&FieldDesc>) -> Result<ProductDesc> {
    let field = field_of(v, fallback)?;
    if !field.is_arith_complete() {
        return Err(Error::UnsupportedField("algebra descriptors need Q or F_p".into()));
    }
    let desc = match get_str(v, "kind")? {
        "decomposable" => {
            let mu1 = scalars_from_json(&field, get(v, "mu1")?, "mu1")?;
            let mu2 = match obj(v)?.get("mu2") {
                Some(m) => scalars_from_json(&field, m, "mu2")?,
                None => Vec::new(),
            };
            ProductDesc::Decomposable { field, mu1, mu2 }
        }
        "corestriction" => {
            let d = scalar_from_json(&field, get(v, "d")?)?;
            let layer = FieldDesc::quad(field.clone(), d.clone())?;
            let mu = get_arr(v, "mu")?.iter().map(|x| quad_from_json(&layer, x)).collect::<Result<Vec<_>>>()?;
            ProductDesc::Corestriction { field, d, mu }
        }
        other => return Err(bad(format!("unknown descriptor kind '{other}'"))),
    };
    let (n1, n2) = match &desc {
        ProductDesc::Decomposable { mu1, mu2, .. } => (mu1.len(), mu2.len()),
        ProductDesc::Corestriction { mu, .. } => (mu.len(), mu.len()),
    };
    if n1 > 3 || n2 > 3 {
        return Err(Error::Invalid("at most three Cayley-Dickson parameters per factor".into()));
    }
    Ok(desc)
}

// Rost constructions

fn tq_to_json(e: &QuadOver, z: &TowerQuad) -> Value {
    json!({"unit": e.layer.fmt_scalar(&z.unit), "exps": z.exps})
}

fn tq_from_json(e: &QuadOver, v: &Value) -> Result<TowerQuad> {
    let unit = match get(v, "unit")? {
        Value::Array(_) => quad_from_json(&e.layer, get(v, "unit")?)?,
        other => scalar_from_json(&e.layer, other)?,
    };
    let exps = match obj(v)?.get("exps") {
        Some(x) => arr(x, "exps")?.iter().map(|n| n.as_i64().filter(|n| n.abs() <= 1 << 20).ok_or_else(|| bad("exponents must be small integers"))).collect::<Result<Vec<_>>>()?,
        None => vec![0; e.base.nvars()],
    };
    e.elem(unit, exps)
}

pub fn rost_spec_to_json(s: &RostSpec) -> Result<Value> {
    Ok(match s {
        RostSpec::TwoPfister { field, c, phi1, phi2 } => json!({
            "kind": "two-pfister",
            "field": field_to_json(field),
            "c": field.fmt_scalar(c),
            "phi1": scalars_to_json(field, phi1),
            "phi2": scalars_to_json(field, phi2),
        }),
        RostSpec::Transfer { field, d, delta, phi } => {
            let e = QuadOver::new(field, d)?;
            json!({
                "kind": "transfer",
                "field": field_to_json(field),
                "d": field.fmt_scalar(d),
                "delta": tq_to_json(&e, delta),
                "phi": phi.iter().map(|z| tq_to_json(&e, z)).collect::<Vec<_>>(),
            })
        }
    })
}

pub fn rost_spec_from_json(v: &Value, fallback: Option<&FieldDesc>) -> Result<RostSpec> {
    let field = field_of(v, fallback)?;
    if matches!(field, FieldDesc::Quad(..)) {
        return Err(Error::UnsupportedField("Rost constructions live over Q, F_p or a Laurent tower".into()));
    }
    let spec = match get_str(v, "kind")? {
        "two-pfister" => RostSpec::TwoPfister {
            c: scalar_from_json(&field, get(v, "c")?)?,
            phi1: scalars_from_json(&field, get(v, "phi1")?, "phi1")?,
            phi2: scalars_from_json(&field, get(v, "phi2")?, "phi2")?,
            field,
        },
        "transfer" => {
            let d = scalar_from_json(&field, get(v, "d")?)?;
            let e = QuadOver::new(&field, &d)?;
            let delta = tq_from_json(&e, get(v, "delta")?)?;
            let phi = get_arr(v, "phi")?.iter().map(|z| tq_from_json(&e, z)).collect::<Result<Vec<_>>>()?;
            RostSpec::Transfer { field, d, delta, phi }
        }
        other => return Err(bad(format!("unknown construction kind '{other}'"))),
    };
    let ok = match &spec {
        RostSpec::TwoPfister { phi1, phi2, .. } => phi1.len() == 3 && phi2.len() == 3,
        RostSpec::Transfer { phi, .. } => phi.len() == 3,
    };
    if !ok {
        return Err(Error::Invalid("Pfister forms of the construction must be 3-fold".into()));
    }
    Ok(spec)
}

// reports

pub fn report_to_json(r: &InvariantReport) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), json!(r.id));
    for (k, c) in &r.invariants {
        m.insert(k.clone(), class_to_json(c));
    }
    m.insert("division".into(), json!(r.division));
    m.insert("decomposable".into(), json!(r.decomposable));
    m.insert("albert_form".into(), r.albert_form.as_ref().map_or(Value::Null, form_to_json));
    Value::Object(m)
}

const REPORT_KEYS: [&str; 4] = ["id", "division", "decomposable", "albert_form"];

pub fn report_from_json(v: &Value, k: &FieldDesc) -> Result<InvariantReport> {
    let o = obj(v)?;
    let opt_bool = |key: &str| match o.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Bool(b)) => Ok(Some(*b)),
        _ => Err(bad(format!("'{key}' must be a boolean or null"))),
    };
    let mut invariants = BTreeMap::new();
    for (key, c) in o {
        if !REPORT_KEYS.contains(&key.as_str()) {
            invariants.insert(key.clone(), class_from_json(k, c)?);
        }
    }
    let albert_form = match o.get("albert_form") {
        None | Some(Value::Null) => None,
        Some(f) => Some(form_from_json(f, Some(k))?),
    };
    Ok(InvariantReport {
        id: o.get("id").and_then(Value::as_str).unwrap_or_default().to_string(),
        invariants,
        division: opt_bool("division")?,
        decomposable: opt_bool("decomposable")?,
        albert_form,
    })
}

pub fn profile_to_json(p: &GradedProfile) -> Value {
    let mut v = json!({"dims": p.dims, "total": p.total, "type": p.type_label});
    if let Some(n) = &p.note {
        v["note"] = json!(n);
    }
    v
}

pub fn profile_from_json(v: &Value) -> Result<GradedProfile> {
    let d = get_arr(v, "dims")?;
    if d.len() != 5 {
        return Err(bad("'dims' must have five entries"));
    }
    let mut dims = [0usize; 5];
    for (slot, x) in dims.iter_mut().zip(d) {
        *slot = x.as_u64().ok_or_else(|| bad("dimensions must be nonnegative integers"))? as usize;
    }
    let total = get_usize(v, "total")?;
    if dims.iter().sum::<usize>() != total {
        return Err(bad("'total' is not the sum of 'dims'"));
    }
    let note = obj(v)?.get("note").and_then(Value::as_str).map(str::to_string);
    Ok(GradedProfile { dims, total, type_label: get_str(v, "type")?.to_string(), note })
}

pub fn verdict_to_json(k: &FieldDesc, v: &DivisionVerdict) -> Value {
    let cert = match &v.certificate {
        Certificate::IsotropicSkew(s) => json!({"kind": "isotropic-skew", "element": scalars_to_json(k, s)}),
        Certificate::IsotropicVector(s) => json!({"kind": "isotropic-vector", "vector": scalars_to_json(k, s)}),
        Certificate::SplitCenter(d) => json!({"kind": "split-center", "disc": k.fmt_scalar(d)}),
        Certificate::Anisotropic { center_d } => json!({"kind": "anisotropic", "center_d": center_d.as_ref().map(|d| k.fmt_scalar(d))}),
    };
    json!({"division": v.division, "certificate": cert})
}

pub fn verdict_from_json(k: &FieldDesc, v: &Value) -> Result<DivisionVerdict> {
    let c = get(v, "certificate")?;
    let certificate = match get_str(c, "kind")? {
        "isotropic-skew" => Certificate::IsotropicSkew(scalars_from_json(k, get(c, "element")?, "element")?),
        "isotropic-vector" => Certificate::IsotropicVector(scalars_from_json(k, get(c, "vector")?, "vector")?),
        "split-center" => Certificate::SplitCenter(scalar_from_json(k, get(c, "disc")?)?),
        "anisotropic" => Certificate::Anisotropic {
            center_d: match obj(c)?.get("center_d") {
                None | Some(Value::Null) => None,
                Some(d) => Some(scalar_from_json(k, d)?),
            },
        },
        other => return Err(bad(format!("unknown certificate '{other}'"))),
    };
    Ok(DivisionVerdict { division: get_bool(v, "division")?, certificate })
}

pub fn isotopy_to_json(k: &FieldDesc, i: &Isotopy) -> Value {
    match i {
        Isotopy::Isotopic(c) => json!({"isotopic": true, "scale": k.fmt_scalar(c)}),
        Isotopy::NotIsotopic => json!({"isotopic": false}),
        Isotopy::Undecided => json!({"isotopic": null, "undecided": true}),
    }
}

pub fn isotopy_from_json(k: &FieldDesc, v: &Value) -> Result<Isotopy> {
    match get(v, "isotopic")? {
        Value::Bool(true) => Ok(Isotopy::Isotopic(scalar_from_json(k, get(v, "scale")?)?)),
        Value::Bool(false) => Ok(Isotopy::NotIsotopic),
        Value::Null => Ok(Isotopy::Undecided),
        _ => Err(bad("'isotopic' must be a boolean or null")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::symbol;

    #[test]
    fn field_shorthands() {
        assert_eq!(field_from_str("Q").unwrap(), FieldDesc::Q);
        assert_eq!(field_from_str("F7").unwrap(), FieldDesc::Fp(7));
        assert_eq!(field_from_str("Fp:5").unwrap(), FieldDesc::Fp(5));
        assert!(field_from_str("F6").is_err());
        let t = field_from_str(r#"{"kind":"laurent","base":{"kind":"Fp","p":5},"vars":["t1","t2"]}"#).unwrap();
        assert_eq!(field_from_json(&field_to_json(&t)).unwrap(), t);
    }

    #[test]
    fn classes_round_trip() {
        let q = FieldDesc::Q;
        for slots in [vec![-1i64], vec![2, 3], vec![-1, -1, -1], vec![-1, -1, -1, -1, -1, -1]] {
            let c = symbol(&q, &slots.iter().map(|&n| q.from_i64(n)).collect::<Vec<_>>()).unwrap();
            assert_eq!(class_from_json(&q, &class_to_json(&c)).unwrap(), c);
        }
        let k = FieldDesc::laurent(FieldDesc::Q, vec!["t1".into(), "t2".into()]).unwrap();
        let c = symbol(&k, &[k.var(0).unwrap(), k.from_i64(-1), k.var(1).unwrap()]).unwrap();
        assert_eq!(class_from_json(&k, &class_to_json(&c)).unwrap(), c);
        let bad = json!({"degree": 2, "backend": "Q", "ramified": ["3"]});
        assert!(class_from_json(&q, &bad).is_err());
    }

    #[test]
    fn descriptors_round_trip() {
        let v = parse(r#"{"kind":"corestriction","d":"-4","mu":["1",[2,1],"3-sqrt"]}"#).unwrap();
        let d = desc_from_json(&v, Some(&FieldDesc::Q)).unwrap();
        assert_eq!(desc_from_json(&desc_to_json(&d), None).unwrap(), d);
        assert!(desc_from_json(&v, None).is_err());
        let v = parse(r#"{"kind":"decomposable","mu1":["-1","-1","-1"],"mu2":[1,1,1,1]}"#).unwrap();
        assert!(matches!(desc_from_json(&v, Some(&FieldDesc::Q)), Err(Error::Invalid(_))));
    }

    #[test]
    fn transfer_spec_round_trip() {
        let v = parse(
            r#"{"kind":"transfer","field":{"kind":"laurent","base":{"kind":"Fp","p":5},"vars":["t1","t2"]},
                "d":"2","delta":{"unit":"sqrt","exps":[0,1]},
                "phi":[{"unit":"1+sqrt","exps":[1,0]},{"unit":[2,3],"exps":[0,0]},{"unit":"4"}]}"#,
        )
        .unwrap();
        let s = rost_spec_from_json(&v, None).unwrap();
        assert_eq!(rost_spec_from_json(&rost_spec_to_json(&s).unwrap(), None).unwrap(), s);
    }

    #[test]
    fn witt_and_profile_round_trip() {
        let q = QuadraticForm::ints(&FieldDesc::Q, &[1, -1, 2, 3]);
        let w = q.witt_decompose().unwrap();
        let back = witt_from_json(&witt_to_json(&w), None).unwrap();
        assert_eq!(back.hyperbolic, w.hyperbolic);
        assert_eq!(back.kernel.entries, w.kernel.entries);
        let p = GradedProfile { dims: [14, 64, 92, 64, 14], total: 248, type_label: "E8".into(), note: None };
        assert_eq!(profile_to_json(&p), json!({"dims":[14,64,92,64,14],"total":248,"type":"E8"}));
        assert_eq!(profile_from_json(&profile_to_json(&p)).unwrap(), p);
    }
}
