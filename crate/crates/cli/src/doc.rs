//! JSON documents: parsing into library types and emitting them back.
//!
//! Integers are JSON numbers when they fit in an `i64`, decimal strings otherwise.

use std::collections::BTreeMap;

use conical::maps::{GroupHom, RationalConeMap, RingMorphism};
use conical::{BigInt, Cone, ConicalRing, Degree, FgAbGroup, GradedPolyRing, IntegerMatrix, Monomial, Sublattice, SystemOfFans};
use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ring,
    Conical,
    FanSystem,
    Morphism,
    RationalMap,
    Sublattice,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Conical => "conical",
            Kind::FanSystem => "fan_system",
            Kind::Morphism => "morphism",
            Kind::RationalMap => "rational_map",
            Kind::Sublattice => "sublattice",
        }
    }
}

fn parse_err(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn read(path: &str) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_err(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| parse_err(format!("{path}: line {}, column {}: {e}", e.line(), e.column())))
}

pub fn kind_of(v: &Value) -> Result<Kind, CliError> {
    let obj = v.as_object().ok_or_else(|| parse_err("document must be a JSON object"))?;
    if let Some(k) = obj.get("kind") {
        return match k.as_str() {
            Some("ring") => Ok(Kind::Ring),
            Some("conical") => Ok(Kind::Conical),
            Some("fan_system") => Ok(Kind::FanSystem),
            Some("morphism") => Ok(Kind::Morphism),
            Some("rational_map") => Ok(Kind::RationalMap),
            Some("sublattice") => Ok(Kind::Sublattice),
            _ => Err(parse_err(format!("unknown kind {k}"))),
        };
    }
    Ok(if obj.contains_key("choices") {
        Kind::RationalMap
    } else if obj.contains_key("images") {
        Kind::Morphism
    } else if obj.contains_key("cones") {
        Kind::FanSystem
    } else if obj.contains_key("ambient") {
        Kind::Sublattice
    } else if obj.contains_key("B") {
        Kind::Conical
    } else {
        Kind::Ring
    })
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field \"{key}\"")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize, CliError> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

pub fn int(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| parse_err(format!("{n} is not an integer"))),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|_| parse_err(format!("\"{s}\" is not an integer"))),
        other => Err(parse_err(format!("{other} is not an integer"))),
    }
}

pub fn int_vec(v: &Value, what: &str) -> Result<Vec<BigInt>, CliError> {
    array(v, what)?.iter().map(int).collect()
}

fn int_rows(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    array(v, what)?.iter().map(|r| int_vec(r, what)).collect()
}

pub fn emit_int(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => json!(i),
        Err(_) => json!(x.to_string()),
    }
}

pub fn emit_vec(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(emit_int).collect())
}

pub fn emit_rows(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| emit_vec(r)).collect())
}

pub fn emit_matrix(m: &IntegerMatrix) -> Value {
    emit_rows(&m.to_rows())
}

pub fn emit_cone(c: &Cone) -> Value {
    emit_rows(c.generators())
}

pub fn parse_ring(v: &Value) -> Result<GradedPolyRing, CliError> {
    let g = field(v, "group")?;
    let rank = usize_of(field(g, "rank")?, "group.rank")?;
    let torsion = match g.get("torsion") {
        Some(t) => int_vec(t, "group.torsion")?,
        None => vec![],
    };
    let group = FgAbGroup::new(rank, torsion).map_err(|e| parse_err(format!("group: {e}")))?;
    let t = group.torsion().len();
    let mut degrees = Vec::new();
    for (i, d) in array(field(v, "degrees")?, "degrees")?.iter().enumerate() {
        let flat = int_vec(d, "degree")?;
        if flat.len() != rank + t {
            return Err(parse_err(format!("degree {i} has {} entries, expected {}", flat.len(), rank + t)));
        }
        let deg = Degree::new(flat[..rank].to_vec(), flat[rank..].to_vec());
        group.check(&deg).map_err(|e| parse_err(format!("degree {i}: {e}")))?;
        degrees.push(deg);
    }
    let names = match v.get("names") {
        Some(n) => Some(
            array(n, "names")?
                .iter()
                .map(|s| s.as_str().map(String::from).ok_or_else(|| parse_err("names must be strings")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    Ok(GradedPolyRing::new(group, degrees, names)?)
}

pub fn parse_monomial(ring: &GradedPolyRing, v: &Value) -> Result<Monomial, CliError> {
    match v {
        Value::String(s) => ring.parse_monomial(s).map_err(|e| parse_err(format!("monomial \"{s}\": {e}"))),
        Value::Array(_) => {
            let e = int_vec(v, "exponents")?;
            if e.len() != ring.n() {
                return Err(parse_err(format!("exponent vector of length {}, ring has {} variables", e.len(), ring.n())));
            }
            let exps = e.iter().map(|x| u32::try_from(x).map_err(|_| parse_err("exponents must be small nonnegative integers"))).collect::<Result<Vec<_>, _>>()?;
            Ok(Monomial::new(exps))
        }
        other => Err(parse_err(format!("{other} is not a monomial"))),
    }
}

pub fn parse_conical(v: &Value) -> Result<ConicalRing, CliError> {
    let ring = parse_ring(v)?;
    match v.get("B") {
        Some(b) => {
            let gens = array(b, "B")?.iter().map(|m| parse_monomial(&ring, m)).collect::<Result<Vec<_>, _>>()?;
            Ok(conical::grading::validate_conical(&ring, gens)?)
        }
        None => Ok(ConicalRing::full(ring)),
    }
}

/// The optional explicit kernel basis of a ring or conical document.
pub fn parse_basis(v: &Value, n: usize) -> Result<Option<Sublattice>, CliError> {
    match v.get("basis") {
        Some(b) => Ok(Some(Sublattice::with_basis(n, &int_rows(b, "basis")?)?)),
        None => Ok(None),
    }
}

pub fn parse_sublattice(v: &Value) -> Result<Sublattice, CliError> {
    let k = usize_of(field(v, "ambient")?, "ambient")?;
    let rows = int_rows(field(v, "basis")?, "basis")?;
    Ok(Sublattice::from_generators(k, &rows)?)
}

pub fn parse_fan_system(v: &Value) -> Result<SystemOfFans, CliError> {
    let k = usize_of(field(v, "rank")?, "rank")?;
    let mut cones = Vec::new();
    let mut indices = Vec::new();
    for (i, c) in array(field(v, "cones")?, "cones")?.iter().enumerate() {
        let label = c.get("label").and_then(Value::as_str).map(String::from).unwrap_or_else(|| format!("c{i}"));
        cones.push((label, int_rows(field(c, "rays")?, "rays")?));
        indices.push(match c.get("ray_indices") {
            Some(ix) => Some(array(ix, "ray_indices")?.iter().map(|x| usize_of(x, "ray index")).collect::<Result<Vec<_>, _>>()?),
            None => None,
        });
    }
    let rays = match v.get("rays") {
        Some(r) => Some(int_rows(r, "rays")?),
        None => None,
    };
    let mut overlaps = BTreeMap::new();
    if let Some(o) = v.get("overlaps") {
        for entry in array(o, "overlaps")? {
            let pair = array(field(entry, "pair")?, "pair")?;
            if pair.len() != 2 {
                return Err(parse_err("overlap pair must have two entries"));
            }
            let (i, j) = (usize_of(&pair[0], "pair")?, usize_of(&pair[1], "pair")?);
            let cs = array(field(entry, "cones")?, "overlap cones")?
                .iter()
                .map(|c| Ok(Cone::try_new(k, int_rows(c, "overlap cone")?)?))
                .collect::<Result<Vec<_>, CliError>>()?;
            overlaps.insert((i.min(j), i.max(j)), cs);
        }
    }
    let given: Vec<Vec<Vec<BigInt>>> = cones.iter().map(|(_, r)| r.clone()).collect();
    let mut s = SystemOfFans::from_cones(k, cones, rays, overlaps)?;
    // explicit indices disambiguate repeated ray vectors
    for (i, ix) in indices.into_iter().enumerate() {
        let Some(ix) = ix else { continue };
        let vectors: Option<Vec<&Vec<BigInt>>> = ix.iter().map(|&r| s.rays.get(r)).collect();
        if vectors.is_none_or(|vs| vs.len() != given[i].len() || vs.iter().zip(&given[i]).any(|(a, b)| *a != b)) {
            return Err(parse_err(format!("ray_indices of cone {i} do not match its rays")));
        }
        s.cones[i].rays = ix;
    }
    s.validate()?;
    Ok(s)
}

fn parse_side(v: &Value) -> Result<ConicalRing, CliError> {
    parse_conical(v)
}

pub fn parse_morphism(v: &Value) -> Result<(RingMorphism, ConicalRing, ConicalRing), CliError> {
    let src = parse_side(field(v, "source")?)?;
    let tgt = parse_side(field(v, "target")?)?;
    let images = array(field(v, "images")?, "images")?.iter().map(|m| parse_monomial(tgt.ring(), m)).collect::<Result<Vec<_>, _>>()?;
    let alpha_rows = int_rows(field(v, "alpha")?, "alpha")?;
    let cols = src.ring().group().num_generators();
    if alpha_rows.iter().any(|r| r.len() != cols) {
        return Err(parse_err(format!("alpha rows must have {cols} entries")));
    }
    let alpha = GroupHom::from_matrix(src.ring().group().clone(), tgt.ring().group().clone(), &IntegerMatrix::from_rows(cols, &alpha_rows))?;
    let phi = RingMorphism::new(src.ring().clone(), tgt.ring().clone(), images, alpha)?;
    Ok((phi, src, tgt))
}

pub fn parse_rational_map(v: &Value) -> Result<RationalConeMap, CliError> {
    let (phi, src, tgt) = parse_morphism(v)?;
    let mut choices = Vec::new();
    for c in array(field(v, "choices")?, "choices")? {
        let g = parse_monomial(src.ring(), field(c, "g")?)?;
        let f = parse_monomial(tgt.ring(), field(c, "f")?)?;
        choices.push((g, f));
    }
    Ok(RationalConeMap { source: src, target: tgt, morphism: phi, choices })
}

pub fn emit_degree(d: &Degree) -> Value {
    emit_vec(&d.to_flat())
}

pub fn emit_ring(ring: &GradedPolyRing) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("kind".into(), json!(Kind::Ring.name()));
    m.insert(
        "group".into(),
        json!({"rank": ring.group().free_rank(), "torsion": emit_vec(ring.group().torsion())}),
    );
    m.insert("degrees".into(), Value::Array(ring.degrees().iter().map(emit_degree).collect()));
    m.insert("names".into(), json!(ring.names()));
    m
}

pub fn emit_conical(c: &ConicalRing) -> Value {
    let mut m = emit_ring(c.ring());
    m.insert("kind".into(), json!(Kind::Conical.name()));
    m.insert("B".into(), Value::Array(c.b_generators().iter().map(|b| json!(b.exponents())).collect()));
    Value::Object(m)
}

pub fn emit_fan_system(s: &SystemOfFans) -> Value {
    let cones: Vec<Value> = s
        .cones
        .iter()
        .map(|c| {
            let rays: Vec<Vec<BigInt>> = c.rays.iter().map(|&r| s.rays[r].clone()).collect();
            json!({"label": c.label, "rays": emit_rows(&rays), "ray_indices": c.rays})
        })
        .collect();
    let overlaps: Vec<Value> = s
        .overlaps
        .iter()
        .map(|((i, j), cs)| json!({"pair": [i, j], "cones": cs.iter().map(emit_cone).collect::<Vec<_>>()}))
        .collect();
    json!({
        "kind": Kind::FanSystem.name(),
        "rank": s.ambient_rank,
        "rays": emit_rows(&s.rays),
        "cones": cones,
        "overlaps": overlaps,
    })
}

pub fn emit_sublattice(l: &Sublattice) -> Value {
    json!({"kind": Kind::Sublattice.name(), "ambient": l.ambient_rank(), "basis": emit_rows(&l.basis_rows())})
}

pub fn expect(kind: Kind, allowed: &[Kind]) -> Result<(), CliError> {
    if allowed.contains(&kind) {
        Ok(())
    } else {
        let names: Vec<&str> = allowed.iter().map(|k| k.name()).collect();
        Err(parse_err(format!("expected a {} document, found {}", names.join(" or "), kind.name())))
    }
}
