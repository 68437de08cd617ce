use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};
use shiftdim::bimodule::bridging_k0_action;
use shiftdim::bimodule::{
    verify_aligned, verify_module_se, verify_unitally_aligned, AlignedReport, BimoduleMap, EdgeSet, ModuleSeData,
    ModuleSeReport, VertexSet,
};
use shiftdim::dimgroup::{
    delta_membership, delta_order_unit, eventual_image, order_unit, ConeMembership, DimClass, EssentialMatrix,
};
use shiftdim::graph::{
    cuntz_splice, unital_hom_obstruction, zmod_equal, zmod_intertwiner_check, zmod_intertwiner_search,
    ObstructionVerdict, ZModClass, ZModEquality,
};
use shiftdim::linalg::IntMatrix;
use shiftdim::shift::{
    lift_hom_to_matrix, search_se, verify_relaxed_se, verify_se, verify_sse_chain, verify_unital, GradedHomSpec,
    RelaxedSeWitness, SeWitness, SearchConfig, SseStep, VerificationReport,
};
use shiftdim::Error;

use crate::io::{
    class_json, essential_from_json, field, int_json, load_essential, load_json, matrix_from_json, matrix_json,
    parse_int_list, parse_rat_list, rat_matrix_json, rat_vec_json, u32_from_json, vec_from_json, vec_json, Failure,
    JobResult, Outcome,
};
use crate::Opts;

const ZMOD_DEFAULT_K_MAX: u32 = 16;

fn one_input(o: &Opts) -> Outcome<&Path> {
    match o.input.as_slice() {
        [p] => Ok(p),
        _ => Err(Failure::usage(format!("expected exactly one --input, got {}", o.input.len()))),
    }
}

fn two_inputs(o: &Opts) -> Outcome<(&Path, &Path)> {
    match o.input.as_slice() {
        [p, q] => Ok((p, q)),
        _ => Err(Failure::usage(format!("expected two --input files, got {}", o.input.len()))),
    }
}

fn class(a: &EssentialMatrix, v: &str, k: u32) -> Outcome<DimClass> {
    Ok(DimClass::new(a, parse_int_list(v)?, k)?)
}

pub fn dimgroup(o: &Opts, vector: Option<&str>) -> Outcome<JobResult> {
    let a = load_essential(one_input(o)?)?;
    let image = eventual_image(&a);
    let unit = delta_order_unit(&a);
    let mut job = JobResult::new("dimgroup", "Computed", 0)
        .with("A", matrix_json(a.matrix()))
        .with("order_unit", class_json(&order_unit(&a)))
        .with(
            "eventual_image",
            json!({
                "basis": Value::Array(image.basis().iter().map(|b| rat_vec_json(b)).collect()),
                "dimension": image.dimension(),
                "stabilization_power": image.stabilization_power(),
            }),
        )
        .with(
            "delta_unit",
            json!({
                "vector": rat_vec_json(unit.vector()),
                "certificate": unit.certificate(),
                "psi": class_json(&unit.psi()),
            }),
        );
    if let Some(v) = vector {
        let v = parse_rat_list(v)?;
        let (verdict, exit, detail) = match delta_membership(&v, &a) {
            Ok(d) => ("InDelta", 0, json!({"certificate": d.certificate(), "psi": class_json(&d.psi())})),
            Err(Error::NotInEventualImage) => ("NotInEventualImage", 1, Value::Null),
            Err(Error::NoIntegralityCertificate { cap }) => ("NoIntegralityCertificate", 1, json!({"cap": cap})),
            Err(e) => return Err(e.into()),
        };
        job = JobResult::new("dimgroup", verdict, exit)
            .with("A", matrix_json(a.matrix()))
            .with("vector", rat_vec_json(&v))
            .with("membership", detail);
    }
    Ok(job)
}

pub fn eq(o: &Opts, v: &str, k: u32, w: &str, l: u32) -> Outcome<JobResult> {
    let a = load_essential(one_input(o)?)?;
    let (x, y) = (class(&a, v, k)?, class(&a, w, l)?);
    let equal = x.equal(&y)?;
    Ok(JobResult::new("eq", if equal { "Equal" } else { "NotEqual" }, if equal { 0 } else { 1 })
        .with("left", class_json(&x))
        .with("right", class_json(&y)))
}

pub fn cone(o: &Opts, v: &str, k: u32) -> Outcome<JobResult> {
    let a = load_essential(one_input(o)?)?;
    let c = class(&a, v, k)?;
    let bound = o.bound.unwrap_or_else(|| c.default_cone_bound());
    Ok(match c.in_positive_cone(bound) {
        ConeMembership::InCone(j) => JobResult::new("cone", "InCone", 0).with("power", Value::from(j)),
        ConeMembership::Unknown(b) => JobResult::new("cone", "Unknown", 2).with("bound", Value::from(b)),
    }
    .with("class", class_json(&c)))
}

fn report_json(job: JobResult, report: &VerificationReport) -> JobResult {
    let checks: Vec<Value> = report.checks.iter().map(|c| json!({"relation": c.relation, "holds": c.holds})).collect();
    let residuals: Map<String, Value> = report
        .checks
        .iter()
        .filter_map(|c| c.residual.as_ref().map(|r| (c.relation.to_string(), matrix_json(r))))
        .collect();
    let mut job = job.with("checks", Value::Array(checks)).with("nonnegative", json!(report.nonnegative));
    if !residuals.is_empty() {
        job.set("residuals", Value::Object(residuals));
    }
    job
}

fn verdict(command: &str, ok: bool) -> JobResult {
    if ok {
        JobResult::new(command, "Verified", 0)
    } else {
        JobResult::new(command, "Refuted", 1)
    }
}

fn lag(obj: &Map<String, Value>, name: &str) -> Outcome<u32> {
    u32_from_json(field(obj, name)?, name)
}

fn witness(obj: &Map<String, Value>) -> Outcome<SeWitness> {
    Ok(SeWitness {
        a: essential_from_json(obj, "A")?,
        b: essential_from_json(obj, "B")?,
        r: matrix_from_json(field(obj, "R")?, "R")?,
        s: matrix_from_json(field(obj, "S")?, "S")?,
        lag: lag(obj, "m")?,
    })
}

/// `Some(unital)` when `R` intertwines, `None` otherwise.
fn unital_flag(r: &IntMatrix, a: &EssentialMatrix, b: &EssentialMatrix) -> Outcome<Option<bool>> {
    match verify_unital(r, a, b) {
        Ok(u) => Ok(Some(u)),
        Err(Error::NotIntertwiner) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn se_verify(o: &Opts) -> Outcome<JobResult> {
    let w = witness(&load_json(one_input(o)?)?)?;
    let report = verify_se(&w)?;
    let job = verdict("se verify", report.passed()).with("unital", json!(unital_flag(&w.r, &w.a, &w.b)?));
    Ok(report_json(job, &report))
}

pub fn se_search(o: &Opts) -> Outcome<JobResult> {
    let (p, q) = two_inputs(o)?;
    let (a, b) = (load_essential(p)?, load_essential(q)?);
    let config = SearchConfig { m_max: o.m_max, coeff_bound: o.coeff_bound, execution: o.execution() };
    let job = match search_se(&a, &b, &config)? {
        Some(w) => JobResult::new("se search", "WitnessFound", 0)
            .with("R", matrix_json(&w.r))
            .with("S", matrix_json(&w.s))
            .with("m", Value::from(w.lag))
            .with("unital", json!(unital_flag(&w.r, &a, &b)?)),
        None => JobResult::new("se search", "NotFoundWithinBounds", 2),
    };
    Ok(job
        .with("A", matrix_json(a.matrix()))
        .with("B", matrix_json(b.matrix()))
        .with("bounds", json!({"m_max": o.m_max, "coeff_bound": o.coeff_bound})))
}

pub fn se_relaxed(o: &Opts) -> Outcome<JobResult> {
    let obj = load_json(one_input(o)?)?;
    let w = RelaxedSeWitness {
        a: essential_from_json(&obj, "A")?,
        b: essential_from_json(&obj, "B")?,
        r: matrix_from_json(field(&obj, "R")?, "R")?,
        s: matrix_from_json(field(&obj, "S")?, "S")?,
        t: matrix_from_json(field(&obj, "T")?, "T")?,
        m: lag(&obj, "m")?,
        k: lag(&obj, "k")?,
    };
    let report = verify_relaxed_se(&w)?;
    Ok(report_json(verdict("se relaxed", report.passed()), &report))
}

pub fn sse_verify(o: &Opts) -> Outcome<JobResult> {
    let obj = load_json(one_input(o)?)?;
    let a = matrix_from_json(field(&obj, "A")?, "A")?;
    let b = matrix_from_json(field(&obj, "B")?, "B")?;
    let Value::Array(items) = field(&obj, "steps")? else {
        return Err(Failure::data("steps: expected an array"));
    };
    let steps = items
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let Value::Object(s) = s else {
                return Err(Failure::data(format!("steps[{i}]: expected an object")));
            };
            let get = |n: &str| field(s, n).and_then(|v| matrix_from_json(v, &format!("steps[{i}].{n}")));
            Ok(SseStep { a: get("A")?, b: get("B")?, r: get("R")?, s: get("S")? })
        })
        .collect::<Outcome<Vec<_>>>()?;
    let job = match verify_sse_chain(&a, &b, &steps) {
        Ok(ok) => verdict("sse verify", ok),
        Err(Error::NonChainingSteps { index }) => verdict("sse verify", false).with("broken_link", Value::from(index)),
        Err(e) => return Err(e.into()),
    };
    Ok(job.with("steps", Value::from(steps.len())))
}

fn abr(obj: &Map<String, Value>) -> Outcome<(EssentialMatrix, EssentialMatrix, IntMatrix)> {
    Ok((essential_from_json(obj, "A")?, essential_from_json(obj, "B")?, matrix_from_json(field(obj, "R")?, "R")?))
}

pub fn unital(o: &Opts) -> Outcome<JobResult> {
    let (a, b, r) = abr(&load_json(one_input(o)?)?)?;
    Ok(match verify_unital(&r, &a, &b) {
        Ok(true) => JobResult::new("unital", "Unital", 0),
        Ok(false) => JobResult::new("unital", "NotUnital", 1),
        Err(Error::NotIntertwiner) => JobResult::new("unital", "NotIntertwiner", 1),
        Err(e) => return Err(e.into()),
    })
}

pub fn lift(o: &Opts) -> Outcome<JobResult> {
    let obj = load_json(one_input(o)?)?;
    let (a, b) = (essential_from_json(&obj, "A")?, essential_from_json(&obj, "B")?);
    let Value::Array(items) = field(&obj, "images")? else {
        return Err(Failure::data("images: expected an array"));
    };
    let images = items
        .iter()
        .enumerate()
        .map(|(i, img)| {
            let Value::Object(img) = img else {
                return Err(Failure::data(format!("images[{i}]: expected an object {{v, l}}")));
            };
            let v = vec_from_json(field(img, "v")?, &format!("images[{i}].v"))?;
            let l = u32_from_json(field(img, "l")?, &format!("images[{i}].l"))?;
            Ok(DimClass::new(&b, v, l)?)
        })
        .collect::<Outcome<Vec<_>>>()?;
    let spec = GradedHomSpec::new(a, b, images)?;
    Ok(match lift_hom_to_matrix(&spec) {
        Ok(l) => JobResult::new("lift", "Lifted", 0)
            .with("R", matrix_json(&l.r))
            .with("shift", Value::from(l.shift))
            .with("s", Value::from(l.s))
            .with("ell", Value::from(l.ell)),
        Err(Error::NotAHomomorphism { max_power }) => {
            JobResult::new("lift", "NotAHomomorphism", 1).with("max_power", Value::from(max_power))
        }
        Err(e) => return Err(e.into()),
    })
}

pub fn bridge(o: &Opts, shift: i64) -> Outcome<JobResult> {
    let (a, b, r) = abr(&load_json(one_input(o)?)?)?;
    let action = bridging_k0_action(&r, &a, &b)?;
    let images = (0..a.size())
        .map(|v| {
            let terms: Vec<Value> = action
                .image(v, shift)?
                .into_iter()
                .map(|(w, c, n)| json!({"vertex": w, "multiplicity": int_json(&c), "shift": n}))
                .collect();
            Ok(json!({"vertex": v, "terms": terms, "class": class_json(&action.image_class(v, shift)?)}))
        })
        .collect::<Outcome<Vec<_>>>()?;
    Ok(JobResult::new("bridge", "Computed", 0).with("shift", Value::from(shift)).with("images", Value::Array(images)))
}

/// `{A, B, R, S, m}` as lexicographically paired module data, with optional
/// `overrides: {sigma_G: [{block: [v, w], perm: [...]}], ...}`. The inner
/// error names a failing counting relation.
fn module_data(obj: &Map<String, Value>) -> Outcome<Result<(ModuleSeData, SeWitness), &'static str>> {
    let w = witness(obj)?;
    let (ea, eb) = (VertexSet::numbered("a", w.a.size()), VertexSet::numbered("b", w.b.size()));
    let e = EdgeSet::of_graph(ea.clone(), w.a.matrix().clone())?;
    let f = EdgeSet::of_graph(eb.clone(), w.b.matrix().clone())?;
    let g = EdgeSet::new(ea.clone(), eb.clone(), w.r.clone())?;
    let h = EdgeSet::new(eb, ea, w.s.clone())?;
    let mut d = match ModuleSeData::lex_paired(e, f, g, h, w.lag) {
        Ok(d) => d,
        Err(Error::CountMismatch { relation }) => return Ok(Err(relation)),
        Err(e) => return Err(e.into()),
    };
    if let Some(overrides) = obj.get("overrides") {
        let Value::Object(overrides) = overrides else {
            return Err(Failure::data("overrides: expected an object"));
        };
        for (name, list) in overrides {
            let slot = match name.as_str() {
                "omega_E" => &mut d.omega_e,
                "omega_F" => &mut d.omega_f,
                "sigma_G" => &mut d.sigma_g,
                "sigma_H" => &mut d.sigma_h,
                other => return Err(Failure::data(format!("overrides: unknown map `{other}`"))),
            };
            *slot = override_blocks(slot, list, name)?;
        }
    }
    Ok(Ok((d, w)))
}

fn override_blocks(map: &BimoduleMap, list: &Value, name: &str) -> Outcome<BimoduleMap> {
    let Value::Array(items) = list else {
        return Err(Failure::data(format!("overrides.{name}: expected an array")));
    };
    let mut perms: BTreeMap<(usize, usize), Vec<usize>> =
        map.blocks().iter().map(|(&k, m)| (k, (0..m.cols()).collect())).collect();
    for item in items {
        let what = format!("overrides.{name}");
        let Value::Object(item) = item else {
            return Err(Failure::data(format!("{what}: expected {{block, perm}}")));
        };
        let index = |v: &Value| v.as_u64().map(|x| x as usize);
        let key = match field(item, "block")? {
            Value::Array(k) if k.len() == 2 => (index(&k[0]), index(&k[1])),
            _ => (None, None),
        };
        let (Some(v), Some(w)) = key else {
            return Err(Failure::data(format!("{what}: block must be [v, w]")));
        };
        let perm = vec_from_json(field(item, "perm")?, &what)?
            .iter()
            .map(|x| usize::try_from(x).map_err(|_| Failure::data(format!("{what}: bad permutation entry {x}"))))
            .collect::<Outcome<Vec<_>>>()?;
        match perms.get_mut(&(v, w)) {
            Some(slot) => *slot = perm,
            None => return Err(Failure::data(format!("{what}: {name} has no block ({v}, {w})"))),
        }
    }
    Ok(BimoduleMap::permutation(map.domain().clone(), map.codomain().clone(), &perms)?)
}

fn counting_failure(command: &str, relation: &str) -> JobResult {
    JobResult::new(command, "Refuted", 1).with("failing_relation", Value::from(relation))
}

fn module_json(job: JobResult, r: &ModuleSeReport) -> JobResult {
    let maps: Vec<Value> = r
        .maps
        .iter()
        .map(|c| json!({"map": c.map, "invertible": c.singular_block.is_none(), "singular_block": c.singular_block.map(|(v, w)| [v, w])}))
        .collect();
    job.with("maps", Value::Array(maps))
}

pub fn module_se(o: &Opts) -> Outcome<JobResult> {
    let obj = load_json(one_input(o)?)?;
    let (d, _) = match module_data(&obj)? {
        Ok(x) => x,
        Err(relation) => return Ok(counting_failure("module-se verify", relation)),
    };
    let r = verify_module_se(&d)?;
    Ok(module_json(verdict("module-se verify", r.passed()), &r))
}

fn aligned_json(job: JobResult, r: &AlignedReport) -> JobResult {
    let diagrams: Vec<Value> = r
        .diagrams
        .iter()
        .map(|d| match &d.failure {
            None => json!({"diagram": d.diagram, "holds": true}),
            Some(((v, w), diff)) => json!({
                "diagram": d.diagram,
                "holds": false,
                "failing_block": [v, w],
                "difference": rat_matrix_json(diff),
            }),
        })
        .collect();
    module_json(job, &r.module_se).with("diagrams", Value::Array(diagrams))
}

pub fn aligned(o: &Opts, unital: bool) -> Outcome<JobResult> {
    let obj = load_json(one_input(o)?)?;
    let exec = o.execution();
    let (d, w) = match module_data(&obj)? {
        Ok(x) => x,
        Err(relation) => return Ok(counting_failure("aligned verify", relation)),
    };
    if unital {
        let r = verify_unitally_aligned(&w.r, &w.s, &w.a, &w.b, &d, exec)?;
        Ok(aligned_json(verdict("aligned verify", r.passed()), &r.aligned)
            .with("r_unital", Value::from(r.r_unital))
            .with("s_unital", Value::from(r.s_unital)))
    } else {
        let r = verify_aligned(&d, exec)?;
        Ok(aligned_json(verdict("aligned verify", r.passed()), &r))
    }
}

pub fn splice(o: &Opts, vertex: usize) -> Outcome<JobResult> {
    let a = load_essential(one_input(o)?)?;
    let b = cuntz_splice(&a, vertex)?;
    Ok(JobResult::new("splice", "Computed", 0)
        .with("A", matrix_json(a.matrix()))
        .with("B", matrix_json(b.matrix()))
        .with("vertex", Value::from(vertex)))
}

pub fn obstruct(o: &Opts) -> Outcome<JobResult> {
    let (p, q) = two_inputs(o)?;
    let (a, b) = (load_essential(p)?, load_essential(q)?);
    let job = match unital_hom_obstruction(&a, &b)? {
        ObstructionVerdict::NoUnitalHom => JobResult::new("obstruct", "NoUnitalHom", 1),
        ObstructionVerdict::InconclusiveWithCandidate(r) => {
            JobResult::new("obstruct", "InconclusiveWithCandidate", 2).with("candidate", matrix_json(&r))
        }
    };
    Ok(job.with("A", matrix_json(a.matrix())).with("B", matrix_json(b.matrix())))
}

pub fn zmod_eq(o: &Opts, modulus: u32, v: &str, k: u32, w: &str, l: u32) -> Outcome<JobResult> {
    let a = load_essential(one_input(o)?)?;
    let x = ZModClass::new(&a, parse_int_list(v)?, k, modulus)?;
    let y = ZModClass::new(&a, parse_int_list(w)?, l, modulus)?;
    let job = match zmod_equal(&x, &y, o.bound)? {
        ZModEquality::Equal { p, q } => {
            JobResult::new("zmod eq", "Equal", 0).with("p", Value::from(p)).with("q", Value::from(q))
        }
        ZModEquality::NotEqualWithinBound { bound } => {
            JobResult::new("zmod eq", "NotEqualWithinBound", 2).with("bound", Value::from(bound))
        }
    };
    Ok(job
        .with("left", json!({"v": vec_json(x.vector()), "k": x.residue()}))
        .with("right", json!({"v": vec_json(y.vector()), "k": y.residue()}))
        .with("modulus", Value::from(modulus)))
}

pub fn zmod_check(o: &Opts, modulus: u32, k: Option<u32>) -> Outcome<JobResult> {
    let (a, b, r) = abr(&load_json(one_input(o)?)?)?;
    let job = match k {
        Some(k) => {
            let holds = zmod_intertwiner_check(&r, &a, &b, modulus, k)?;
            JobResult::new("zmod check", if holds { "Holds" } else { "Fails" }, if holds { 0 } else { 1 })
                .with("k", Value::from(k))
        }
        None => {
            let k_max = o.bound.unwrap_or(ZMOD_DEFAULT_K_MAX);
            match zmod_intertwiner_search(&r, &a, &b, modulus, k_max)? {
                Some(k) => JobResult::new("zmod check", "Holds", 0).with("k", Value::from(k)),
                None => JobResult::new("zmod check", "NotFoundWithinBound", 2).with("bound", Value::from(k_max)),
            }
        }
    };
    Ok(job.with("modulus", Value::from(modulus)))
}
