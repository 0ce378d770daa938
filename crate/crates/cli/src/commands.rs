use std::path::Path;

use conical::cox::{irrelevant_from_cones, ring_from_rays, roundtrip_fan, roundtrip_ring, RoundtripReport};
use conical::fans::{build_system, pair_separation};
use conical::grading::validate_conical;
use conical::maps::{classify, induced_fan_map, validate_fan_map, validate_rational_map};
use conical::quotient::{invariant_semigroup, oracle_matches, quotient_system};
use conical::random::{random_conical, rng, GradingParams};
use conical::{ConicalRing, GradedPolyRing, Monomial, RayMatrix, Sublattice};
use itertools::Itertools;
use serde_json::{json, Value};

use crate::doc::{self, Kind};
use crate::{svg, BasisMode, CliError};

/// The report, plus a message when a check it contains failed.
pub type Outcome = Result<(Value, Option<String>), CliError>;

fn names(ring: &GradedPolyRing, ms: &[Monomial]) -> Value {
    json!(ms.iter().map(|m| ring.format_monomial(m)).collect::<Vec<_>>())
}

fn basis_for(v: &Value, conical: &ConicalRing, mode: BasisMode) -> Result<Option<Sublattice>, CliError> {
    match mode {
        BasisMode::Auto => Ok(None),
        BasisMode::Explicit => match doc::parse_basis(v, conical.ring().n())? {
            Some(b) => Ok(Some(b)),
            None => Err(CliError::Parse("--basis explicit needs a \"basis\" field".into())),
        },
    }
}

fn conical_doc(v: &Value) -> Result<ConicalRing, CliError> {
    doc::expect(doc::kind_of(v)?, &[Kind::Ring, Kind::Conical])?;
    doc::parse_conical(v)
}

pub fn ring_info(v: &Value, degree_bound: Option<u64>) -> Outcome {
    let conical = conical_doc(v)?;
    let ring = conical.ring();
    let gens = ring.generators_irrelevant();
    let relevance: Vec<Value> = (1..=ring.n())
        .flat_map(|k| (0..ring.n()).combinations(k))
        .map(|s| {
            let m = Monomial::from_support(ring.n(), &s);
            json!({"monomial": ring.format_monomial(&m), "relevant": ring.is_relevant_support(&s)})
        })
        .collect();
    let mut out = doc::emit_ring(ring);
    out.insert("kind".into(), json!("ring_info"));
    out.insert("group_display".into(), json!(ring.group().to_string()));
    out.insert("generators".into(), names(ring, &gens));
    out.insert("kernel_basis".into(), doc::emit_rows(&ring.grading_kernel().basis_rows()));
    out.insert("relevance".into(), Value::Array(relevance));
    if v.get("B").is_some() {
        out.insert("B".into(), names(ring, conical.b_generators()));
        out.insert("relevant_in_B".into(), names(ring, &conical.relevant_in_b()));
    }
    if let Some(bound) = degree_bound {
        let sub = conical::maps::subring_for_b(&conical, Some(bound))?;
        out.insert("subring".into(), names(ring, &sub));
    }
    Ok((Value::Object(out), None))
}

pub fn fan(v: &Value, mode: BasisMode, svg_path: Option<&Path>) -> Outcome {
    let conical = conical_doc(v)?;
    let basis = basis_for(v, &conical, mode)?;
    let sys = build_system(&conical, basis.as_ref())?;
    let mut out = doc::emit_fan_system(&sys);
    out["is_fan"] = json!(sys.is_fan());
    if sys.ambient_rank == 2 {
        if let Some(p) = svg_path {
            std::fs::write(p, svg::render(&sys)).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        }
    } else {
        if svg_path.is_some() {
            eprintln!("conical: ambient rank {} is not drawn; see face_lattice", sys.ambient_rank);
        }
        out["face_lattice"] = json!(svg::face_lattice(&sys));
    }
    Ok((out, None))
}

pub fn separated(v: &Value) -> Outcome {
    let conical = conical_doc(v)?;
    let ring = conical.ring();
    let basis = ring.grading_kernel();
    let sys = build_system(&conical, Some(&basis))?;
    let verdict = sys.is_fan();
    let labels: Vec<&str> = sys.cones.iter().map(|c| c.label.as_str()).collect();
    let offending: Vec<Value> = sys.non_separated_pairs().iter().map(|&(i, j)| json!([labels[i], labels[j]])).collect();
    let gens: Vec<Monomial> =
        conical.relevant_in_b().into_iter().filter(|m| m.is_squarefree() && m.support().len() == ring.rank()).collect();
    let mut pairs = Vec::new();
    for (f, g) in gens.iter().tuple_combinations() {
        let (weight, sigma) = pair_separation(ring, &basis, f, g)?;
        pairs.push(json!({
            "f": ring.format_monomial(f),
            "g": ring.format_monomial(g),
            "weight_cones_overlap": weight,
            "sigma_meet_lower_dimensional": sigma,
            "agree": weight == sigma,
        }));
    }
    let out = json!({"kind": "separated", "separated": verdict, "offending_pairs": offending, "pairs": pairs});
    Ok((out, None))
}

pub fn cox(v: &Value) -> Outcome {
    doc::expect(doc::kind_of(v)?, &[Kind::FanSystem])?;
    let sys = doc::parse_fan_system(v)?;
    let rays = RayMatrix::of_system(&sys);
    let ring = ring_from_rays(&rays)?;
    let b = irrelevant_from_cones(&sys, &rays)?;
    let conical = validate_conical(&ring, b)?;
    let mut out = doc::emit_conical(&conical);
    out["basis"] = doc::emit_rows(&rays.matrix().to_columns());
    Ok((out, None))
}

pub fn check_map(v: &Value) -> Outcome {
    let kind = doc::kind_of(v)?;
    doc::expect(kind, &[Kind::Morphism, Kind::RationalMap])?;
    let (phi, src, tgt) = doc::parse_morphism(v)?;
    let c = classify(&phi, &src, &tgt)?;
    let (r, s) = (phi.source(), phi.target());
    let mut verdict = Vec::new();
    for (flag, word) in [(c.is_relevant, "relevant"), (c.is_rationally_relevant, "rationally relevant"), (c.is_rational, "rational")] {
        verdict.push(if flag { word.to_string() } else { format!("not {word}") });
    }
    let mut out = json!({
        "kind": "classification",
        "verdict": verdict.join(", "),
        "relevant": c.is_relevant,
        "rationally_relevant": c.is_rationally_relevant,
        "rational": c.is_rational,
        "maps_relevant_to_relevant": c.maps_relevant_to_relevant,
        "alpha_surjective": c.alpha_surjective,
        "relevant_onto_image": c.relevant_onto_image,
        "rel_locus": names(s, &c.rel_locus),
        "gen_locus": names(s, &c.gen_locus),
        "rat_locus": names(r, &c.rat_locus),
        "preimage_violations": names(r, &c.preimage_violations),
    });
    if kind == Kind::RationalMap {
        let rmap = doc::parse_rational_map(v)?;
        validate_rational_map(&rmap)?;
        let (fm, sys_s, sys_r) = induced_fan_map(&rmap)?;
        validate_fan_map(&fm, &sys_s, &sys_r)?;
        let class_map: Vec<Value> = fm
            .class_map
            .iter()
            .map(|&(i, j)| json!({"source": sys_s.cones[i].label, "target": sys_r.cones[j].label}))
            .collect();
        out["fan_map"] = json!({
            "matrix": doc::emit_matrix(&fm.matrix),
            "class_map": class_map,
            "source": doc::emit_fan_system(&sys_s),
            "target": doc::emit_fan_system(&sys_r),
        });
    }
    Ok((out, None))
}

pub fn quotient(v: &Value, sub: &Value, mode: BasisMode, bound: u32) -> Outcome {
    let conical = conical_doc(v)?;
    doc::expect(doc::kind_of(sub)?, &[Kind::Sublattice])?;
    let l = doc::parse_sublattice(sub)?;
    let basis = basis_for(v, &conical, mode)?;
    let qs = quotient_system(&conical, basis.as_ref(), &l)?;
    let mut pieces = Vec::new();
    let mut mismatched = Vec::new();
    for p in &qs.pieces {
        let sg = invariant_semigroup(&conical, basis.as_ref(), &p.monomial, &l, bound)?;
        let ok = oracle_matches(p, &sg)?;
        if !ok {
            mismatched.push(p.label.clone());
        }
        pieces.push(json!({
            "label": p.label,
            "sigma": doc::emit_cone(&p.sigma),
            "selected_face": doc::emit_cone(&p.selected_face),
            "lprime": doc::emit_rows(&p.lprime.basis_rows()),
            "quotient_rank": p.quotient_rank,
            "projection": doc::emit_matrix(&p.projection),
            "image_cone": doc::emit_cone(&p.image_cone),
            "invariant_semigroup": doc::emit_rows(&sg.hilbert_generators),
            "oracle_matches": ok,
        }));
    }
    let out = json!({
        "kind": "quotient",
        "sublattice": doc::emit_sublattice(&l),
        "box": bound,
        "uniform_lattice": qs.uniform_lattice,
        "all_match": mismatched.is_empty(),
        "pieces": pieces,
    });
    let failed = (!mismatched.is_empty()).then(|| format!("oracle mismatch on {}", mismatched.join(", ")));
    Ok((out, failed))
}

fn report_json(r: &RoundtripReport) -> Value {
    json!({
        "ok": r.ok,
        "automorphism": r.automorphism.as_ref().map(doc::emit_matrix),
        "messages": r.messages,
    })
}

pub fn roundtrip(v: &Value) -> Outcome {
    let kind = doc::kind_of(v)?;
    doc::expect(kind, &[Kind::Ring, Kind::Conical, Kind::FanSystem])?;
    let (direction, report) = if kind == Kind::FanSystem {
        ("fan", roundtrip_fan(&doc::parse_fan_system(v)?)?)
    } else {
        let conical = doc::parse_conical(v)?;
        let basis = doc::parse_basis(v, conical.ring().n())?;
        ("ring", roundtrip_ring(&conical, basis.as_ref())?)
    };
    let mut out = report_json(&report);
    out["kind"] = json!("roundtrip");
    out["direction"] = json!(direction);
    let failed = (!report.ok).then(|| report.messages.join("; "));
    Ok((out, failed))
}

pub fn roundtrip_random(seed: u64, count: usize) -> Outcome {
    let mut r = rng(seed);
    let params = GradingParams { max_n: 6, max_rank: 2, torsion: true, entry_bound: 2 };
    let mut failures = Vec::new();
    for i in 0..count {
        let c = random_conical(&mut r, params);
        let ring_report = roundtrip_ring(&c, None)?;
        let fan_report = roundtrip_fan(&build_system(&c, None)?)?;
        if !ring_report.ok || !fan_report.ok {
            failures.push(json!({
                "instance": i,
                "ring": doc::emit_conical(&c),
                "ring_roundtrip": report_json(&ring_report),
                "fan_roundtrip": report_json(&fan_report),
            }));
        }
    }
    let (failures_empty, n_failed) = (failures.is_empty(), failures.len());
    let out = json!({
        "kind": "roundtrip",
        "direction": "random",
        "seed": seed,
        "instances": count,
        "passed": count - failures.len(),
        "ok": failures.is_empty(),
        "failures": failures,
    });
    let failed = (!failures_empty).then(|| format!("{n_failed} of {count} instances failed"));
    Ok((out, failed))
}
