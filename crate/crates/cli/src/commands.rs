use std::fs;
use std::path::Path;

use cobcat::cob1::{compose_abstract, compose_planar, functor_to_d, reduce_endomorphism, Matching1D, Matching1DJson, PlanarDiagram, RestrictedMorphism};
use cobcat::cob2::{compose_surface, euler_tqft, ClosedSurfaceClass, ConnectedSurface, SurfaceCobordism};
use cobcat::exactmath::{AbelianInvariants, FieldMatrix, GroupPresentation};
use cobcat::fincat::FinCat;
use cobcat::localize::{
    localize, object_by_name, planar_cob1_localization, surface_localization_group, surface_relation_word, RelationInstance,
};
use cobcat::monoidal::{cob1_picard_data, evaluate_restricted, extend_to_full, picard_equivalent, FrobeniusDatum, MonoidalError, PicardData};
use cobcat::nerve::{build_nerve, fundamental_group_by_name, homology, NerveError, DEFAULT_MAX_CELLS};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::Failure;

type Outcome = Result<Value, Failure>;

pub fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Cat(c) => cat(c),
        Command::Localize(c) => localize_cmd(c),
        Command::Cob1(c) => cob1(c),
        Command::Cob2(c) => cob2(c),
        Command::Picard(c) => picard(c),
        Command::Frob(c) => frob(c),
        Command::Relations(c) => relations(c),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn load_category(path: &Path) -> Result<FinCat, Failure> {
    FinCat::from_json_str(&read(path)?).map_err(Failure::invalid)
}

fn load_surface(path: &Path) -> Result<SurfaceCobordism, Failure> {
    SurfaceCobordism::from_json_str(&read(path)?).map_err(Failure::invalid)
}

fn invariants_json(g: &AbelianInvariants) -> Value {
    json!({
        "group": g.to_string(),
        "rank": g.rank,
        "torsion": g.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
    })
}

fn presentation_json(p: &GroupPresentation) -> Value {
    json!({
        "generators": p.generators(),
        "relators": p.relators().iter().map(|r| p.format_word(r)).collect::<Vec<_>>(),
        "abelianization": invariants_json(&p.abelianize()),
    })
}

fn matrix_json(m: &FieldMatrix) -> Value {
    json!({ "field": m.field().to_string(), "rows": m.rows(), "cols": m.cols(), "entries": m.to_string_rows() })
}

fn max_cells(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("COBCAT_MAX_CELLS") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Invalid(format!("COBCAT_MAX_CELLS={v} is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

fn nerve_failure(e: NerveError) -> Failure {
    match e {
        NerveError::CellCeiling { .. } => Failure::Resource(e.to_string()),
        other => Failure::invalid(other),
    }
}

fn cat(cmd: &CatCommand) -> Outcome {
    match cmd {
        CatCommand::Homology { cap, ceiling, file } => {
            let c = load_category(file)?;
            let nerve = build_nerve(&c, *cap, max_cells(ceiling.max_cells)?).map_err(nerve_failure)?;
            let h = homology(&nerve);
            Ok(json!({
                "homology": h.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "groups": h.iter().map(invariants_json).collect::<Vec<_>>(),
                "cells": (0..=*cap).map(|p| nerve.cell_count(p)).collect::<Vec<_>>(),
            }))
        }
        CatCommand::Pi1 { base, file } => {
            let c = load_category(file)?;
            let base = match base {
                Some(b) => b.clone(),
                None => c.objects().first().cloned().ok_or_else(|| Failure::Invalid("category has no objects".into()))?,
            };
            let p = fundamental_group_by_name(&c, &base).map_err(nerve_failure)?;
            let simplified = p.simplify(p.generators().len());
            Ok(json!({ "base": base, "presentation": presentation_json(&p), "simplified": simplified.to_string() }))
        }
    }
}

fn localize_cmd(cmd: &LocalizeCommand) -> Outcome {
    match cmd {
        LocalizeCommand::Aut { object, file } => {
            let c = load_category(file)?;
            let loc = localize(&c);
            let x = match object {
                Some(name) => object_by_name(&c, name).map_err(Failure::invalid)?,
                None => 0,
            };
            if x >= c.object_count() {
                return Err(Failure::Invalid("category has no objects".into()));
            }
            let components: Vec<Vec<&String>> =
                loc.components().iter().map(|k| k.iter().map(|&i| &c.objects()[i]).collect()).collect();
            Ok(json!({
                "object": c.objects()[x],
                "components": components,
                "aut": presentation_json(loc.aut(x)),
            }))
        }
        LocalizeCommand::Surfaces { max_chi } => {
            let s = surface_localization_group(*max_chi);
            let classes: serde_json::Map<String, Value> = s
                .classes()
                .into_iter()
                .map(|(g, c)| {
                    let v = match (c.len(), c.first().map(i64::try_from)) {
                        (1, Some(Ok(x))) => Value::from(x),
                        _ => json!(c.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
                    };
                    (g.to_string(), v)
                })
                .collect();
            let chi: serde_json::Map<String, Value> =
                s.generators.iter().map(|g| (g.to_string(), Value::from(g.chi()))).collect();
            let equals_chi = s.invariants == AbelianInvariants::free(1)
                && s.classes().iter().all(|(g, c)| c.len() == 1 && c[0] == g.chi().into());
            Ok(json!({
                "max_chi": max_chi,
                "group": invariants_json(&s.invariants),
                "classes": classes,
                "euler_characteristic": chi,
                "class_equals_euler_characteristic": equals_chi,
                "instances": s.instance_count,
                "relation_rank": s.relation_lattice().rank(),
            }))
        }
        LocalizeCommand::Planar { max_strands } => {
            let m = planar_cob1_localization(*max_strands);
            Ok(json!({
                "max_strands": max_strands,
                "components": m.components,
                "loops": invariants_json(&m.invariants),
                "circle_class": m.circle_class.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "generators": m.group.presentation.generators().len(),
                "relators": m.group.presentation.relators().len(),
            }))
        }
    }
}

enum Cob1Doc {
    Planar(PlanarDiagram),
    Matching(Matching1D),
}

fn load_cob1(path: &Path) -> Result<Cob1Doc, Failure> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(Failure::invalid)?;
    if v.get("slices").is_some() {
        PlanarDiagram::from_json_str(&text).map(Cob1Doc::Planar).map_err(Failure::invalid)
    } else {
        let doc: Matching1DJson = serde_json::from_value(v).map_err(Failure::invalid)?;
        Matching1D::from_json_value(&doc).map(Cob1Doc::Matching).map_err(Failure::invalid)
    }
}

fn load_planar(path: &Path) -> Result<PlanarDiagram, Failure> {
    match load_cob1(path)? {
        Cob1Doc::Planar(w) => Ok(w),
        Cob1Doc::Matching(_) => Err(Failure::Invalid("expected a planar slice word".into())),
    }
}

fn planar_json(w: &PlanarDiagram) -> Value {
    serde_json::to_value(w.to_json_value()).expect("diagram serializes")
}

fn cob1(cmd: &Cob1Command) -> Outcome {
    match cmd {
        Cob1Command::F { file } => {
            let w = load_planar(file)?;
            let d = functor_to_d(&w).map_err(Failure::invalid)?;
            Ok(json!({ "f": d.value, "m": w.m(), "n": w.n(), "src_class": d.src_class, "tgt_class": d.tgt_class }))
        }
        Cob1Command::Compose { a, b } => match (load_cob1(a)?, load_cob1(b)?) {
            (Cob1Doc::Planar(x), Cob1Doc::Planar(y)) => {
                let w = compose_planar(&x, &y).map_err(Failure::invalid)?;
                Ok(json!({ "diagram": planar_json(&w), "f": w.f_invariant() }))
            }
            (x, y) => {
                let as_matching = |d: Cob1Doc| match d {
                    Cob1Doc::Planar(p) => p.to_matching(),
                    Cob1Doc::Matching(m) => m,
                };
                let w = compose_abstract(&as_matching(x), &as_matching(y)).map_err(Failure::invalid)?;
                Ok(json!({ "matching": serde_json::to_value(w.to_json_value()).expect("matching serializes") }))
            }
        },
        Cob1Command::Reduce { file } => {
            let w = load_planar(file)?;
            let class = reduce_endomorphism(&w).map_err(Failure::invalid)?;
            Ok(json!({ "class": class, "circles": w.to_matching().circle_count() }))
        }
    }
}

fn surface_class_json(class: &ClosedSurfaceClass) -> Value {
    json!({
        "parts": class.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "chi": class.chi(),
        "unoriented_class": class.unoriented_class(),
        "nullbordant": class.is_nullbordant(),
        "oriented_class": class.oriented_class().ok(),
        "display": class.to_string(),
    })
}

fn cob2(cmd: &Cob2Command) -> Outcome {
    match cmd {
        Cob2Command::Compose { a, b } => {
            let w = compose_surface(&load_surface(a)?, &load_surface(b)?).map_err(Failure::invalid)?;
            Ok(json!({ "cobordism": serde_json::to_value(w.to_json_value()).expect("cobordism serializes") }))
        }
        Cob2Command::Euler { file } => {
            let w = load_surface(file)?;
            Ok(json!({ "euler": euler_tqft(&w), "chi": w.chi(), "incoming": w.src().len() }))
        }
        Cob2Command::Class { file } => {
            let w = load_surface(file)?;
            let class = ClosedSurfaceClass::from_cobordism(&w).map_err(Failure::invalid)?;
            Ok(surface_class_json(&class))
        }
        Cob2Command::Kcheck { k, file } => {
            let w = load_surface(file)?;
            let k = i32::try_from(*k).map_err(Failure::invalid)?;
            let ok = w
                .is_k_connected(k)
                .ok_or_else(|| Failure::Invalid(format!("k = {k} is not supported; only k = 0 is modelled")))?;
            Ok(json!({ "k": k, "connected": ok }))
        }
    }
}

fn monoidal_failure(e: MonoidalError) -> Failure {
    match e {
        MonoidalError::SearchBound(..) => Failure::Resource(e.to_string()),
        other => Failure::invalid(other),
    }
}

fn load_picard(path: &Path) -> Result<PicardData, Failure> {
    PicardData::from_json_str(&read(path)?).map_err(monoidal_failure)
}

fn picard(cmd: &PicardCommand) -> Outcome {
    match cmd {
        PicardCommand::K { input, element } => {
            let p = load_picard(input)?;
            let x = p
                .pi0()
                .parse_element(element)
                .ok_or_else(|| Failure::Invalid(format!("`{element}` is not an element of pi0")))?;
            Ok(json!({
                "element": x,
                "k": p.k_invariant(&x),
                "pi0": p.pi0().to_string(),
                "pi1": p.pi1().to_string(),
                "pi1_generators": p.pi1().generators,
            }))
        }
        PicardCommand::Equiv { a, b, search_bound } => {
            let eq = picard_equivalent(&load_picard(a)?, &load_picard(b)?, *search_bound).map_err(monoidal_failure)?;
            Ok(json!({ "equivalent": eq }))
        }
        PicardCommand::Cob1 { max_strands } => {
            let d = cob1_picard_data(*max_strands).map_err(monoidal_failure)?;
            Ok(json!({
                "pi0": d.data.pi0().to_string(),
                "pi1": d.data.pi1().to_string(),
                "k": d.k,
                "data": serde_json::to_value(d.data.to_json_value()).expect("data serializes"),
                "trace": d.trace,
            }))
        }
    }
}

#[derive(Deserialize)]
struct RestrictedJson {
    tgt: usize,
    injection: Vec<usize>,
    #[serde(default)]
    matching: Vec<[usize; 2]>,
}

fn load_theory(path: &Path) -> Result<FrobeniusDatum, Failure> {
    FrobeniusDatum::from_json_str(&read(path)?).map_err(monoidal_failure)
}

fn frob(cmd: &FrobCommand) -> Outcome {
    match cmd {
        FrobCommand::Eval { theory, morphism } => {
            let t = load_theory(theory)?;
            let doc = read_json(morphism)?;
            if doc.get("injection").is_some() {
                let r: RestrictedJson = serde_json::from_value(doc).map_err(Failure::invalid)?;
                let pairs: Vec<(usize, usize)> = r.matching.iter().map(|p| (p[0], p[1])).collect();
                let w = RestrictedMorphism::new(r.tgt, r.injection, &pairs).map_err(Failure::invalid)?;
                return Ok(json!({ "restricted": true, "matrix": matrix_json(&evaluate_restricted(&t, &w)) }));
            }
            let w = match load_cob1(morphism)? {
                Cob1Doc::Planar(p) => p.to_matching(),
                Cob1Doc::Matching(m) => m,
            };
            if let Some(r) = RestrictedMorphism::from_matching(&w) {
                return Ok(json!({ "restricted": true, "matrix": matrix_json(&evaluate_restricted(&t, &r)) }));
            }
            let ext = extend_to_full(&t);
            let e = ext
                .evaluator()
                .ok_or_else(|| Failure::Invalid("morphism needs the full category but the pairing is degenerate".into()))?;
            Ok(json!({ "restricted": false, "matrix": matrix_json(&e.evaluate_matching(&w)) }))
        }
        FrobCommand::Extend { theory } => {
            let t = load_theory(theory)?;
            let det = t.pairing().determinant().map_err(Failure::invalid)?;
            let ext = extend_to_full(&t);
            let mut out = json!({ "extends": ext.extends(), "determinant": det.to_string(), "dim": t.dim() });
            if let Some(e) = ext.evaluator() {
                out["copairing"] = matrix_json(e.copairing());
                out["circle"] = Value::from(e.circle_value().to_string());
            }
            Ok(out)
        }
    }
}

fn relations(cmd: &RelationsCommand) -> Outcome {
    let RelationsCommand::Check { object, max_chi, file } = cmd;
    let doc = read_json(file)?;
    if doc.get("w1").is_some() {
        let piece = |key: &str| -> Result<SurfaceCobordism, Failure> {
            let v = doc.get(key).ok_or_else(|| Failure::Invalid(format!("missing {key}")))?;
            let parsed = serde_json::from_value(v.clone()).map_err(Failure::invalid)?;
            SurfaceCobordism::from_json_value(&parsed).map_err(Failure::invalid)
        };
        let r = RelationInstance { w1: piece("w1")?, w2: piece("w2")?, w3: piece("w3")?, w4: piece("w4")? };
        let gens = ConnectedSurface::all_with_chi_at_least(-(*max_chi as i64));
        let word = surface_relation_word(&r, &gens).map_err(Failure::invalid)?;
        let names: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        let p = GroupPresentation::free(names);
        let s = surface_localization_group(*max_chi);
        let mut class = vec![0i64; s.invariants.rank + s.invariants.torsion.len()];
        for (i, e) in p.exponent_vector(&word).iter().enumerate() {
            let e = i64::try_from(e).map_err(Failure::invalid)?;
            for (acc, x) in class.iter_mut().zip(s.class_of_generator(i)) {
                *acc += e * i64::try_from(&x).map_err(Failure::invalid)?;
            }
        }
        let trivial = class.iter().all(|&x| x == 0);
        return Ok(json!({ "word": p.format_word(&word), "class": class, "trivial": trivial }));
    }
    let c = FinCat::from_json_value(serde_json::from_value(doc).map_err(Failure::invalid)?).map_err(Failure::invalid)?;
    let loc = localize(&c);
    let objects: Vec<usize> = match object {
        Some(name) => vec![object_by_name(&c, name).map_err(Failure::invalid)?],
        None => (0..c.object_count()).collect(),
    };
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for x in objects {
        let q = cobcat::exactmath::AbelianQuotient::new(&loc.aut(x).exponent_matrix());
        for r in loc.relation_instances(x) {
            let w = loc.relation_word(&r).map_err(Failure::invalid)?;
            checked += 1;
            if !q.is_trivial(&loc.aut(x).exponent_vector(&w)) {
                failures.push(loc.aut(x).format_word(&w));
            }
        }
    }
    Ok(json!({ "instances": checked, "failures": failures, "trivial": failures.is_empty() }))
}
