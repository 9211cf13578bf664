//! JSON renderings. Integers are decimal strings; matrices are lists of columns.

use serde_json::{json, Value};
use spure::classes::ClassKind;
use spure::linalg::{Infeasibility, LinearSystem};
use spure::purity::{PurityCertificate, PurityVerdict};
use spure::{BigInt, Class, Map, Matrix, Module};

use crate::job::{ClassSpec, SesSpec};

pub fn int_json(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.columns().iter().map(|c| vec_json(c)).collect())
}

pub fn module_json(m: &Module) -> Value {
    json!({
        "gens": m.gens(),
        "relations": matrix_json(m.relations()),
        "invariants": vec_json(m.orders()),
        "display": m.to_string(),
    })
}

pub fn map_json(f: &Map) -> Value {
    json!({
        "source": module_json(f.source()),
        "target": module_json(f.target()),
        "matrix": matrix_json(f.matrix()),
    })
}

pub fn ses_json(s: &SesSpec) -> Value {
    json!({ "B": module_json(&s.b), "A": matrix_json(&s.a_gens) })
}

pub fn class_spec_json(c: &ClassSpec) -> Value {
    match c {
        ClassSpec::Kind { kind, bounds } => {
            let mut v = json!({ "kind": kind.name() });
            if let Some(b) = bounds {
                v["bounds"] = json!({
                    "max_gens": b.max_gens,
                    "max_rels": b.max_rels,
                    "entry_bound": b.entry_bound,
                });
            }
            v
        }
        ClassSpec::IdealQuotients { entry_bound } => json!({ "kind": "ideal-quotients", "entry_bound": entry_bound }),
        ClassSpec::Members(ms) => json!({ "members": ms.iter().map(module_json).collect::<Vec<_>>() }),
        ClassSpec::Transpose(inner) => json!({ "kind": "transpose", "of": class_spec_json(inner) }),
    }
}

pub fn class_json(c: &Class) -> Value {
    let kind = match c.kind {
        ClassKind::Explicit => "explicit",
        k => k.name(),
    };
    json!({
        "kind": kind,
        "size": c.len(),
        "members": c.members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
    })
}

fn infeasibility_json(o: &Infeasibility<BigInt>) -> Value {
    json!({ "multiplier": vec_json(&o.multiplier), "denominator": int_json(&o.denominator) })
}

fn system_json(s: &LinearSystem<BigInt>) -> Value {
    json!({
        "coefficients": matrix_json(&s.coefficients),
        "constants": s.constants.iter().map(|c| vec_json(c)).collect::<Vec<_>>(),
    })
}

pub fn certificate_json(c: &PurityCertificate<BigInt>, class: &Class) -> Value {
    let member = |i: &usize| class.members.get(*i).map(module_json).unwrap_or(Value::Null);
    match c {
        PurityCertificate::Pure(ws) => json!({
            "type": "pure",
            "witnesses": ws.iter().map(|w| json!({
                "member": member(&w.member),
                "solutions": w.solutions.iter().map(|s| vec_json(s)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
        PurityCertificate::UnliftableMap {
            member: i,
            map,
            obstruction,
        } => json!({
            "type": "unliftable-map",
            "member": member(i),
            "map": map_json(map),
            "obstruction": infeasibility_json(obstruction),
        }),
        PurityCertificate::TensorKernel { member: i, element } => json!({
            "type": "tensor-kernel",
            "member": member(i),
            "element": vec_json(element),
        }),
        PurityCertificate::IntersectionGap {
            member: i,
            element,
            obstruction,
        } => json!({
            "type": "intersection-gap",
            "member": member(i),
            "element": vec_json(element),
            "obstruction": infeasibility_json(obstruction),
        }),
        PurityCertificate::InsolubleSystem {
            member: i,
            system,
            b_solution,
            obstruction,
        } => json!({
            "type": "insoluble-system",
            "member": member(i),
            "system": system_json(system),
            "b_solution": b_solution.iter().map(|s| vec_json(s)).collect::<Vec<_>>(),
            "obstruction": infeasibility_json(obstruction),
        }),
    }
}

pub fn verdict_json(v: &PurityVerdict<BigInt>, class: &Class, verified: bool) -> Value {
    json!({
        "pure": v.pure,
        "criterion": v.criterion.label(),
        "certificate": certificate_json(&v.certificate, class),
        "certificate_verified": verified,
    })
}

/// One line describing a verdict.
pub fn verdict_text(v: &PurityVerdict<BigInt>, class: &Class) -> String {
    let name = |i: &usize| class.members.get(*i).map_or_else(|| "?".into(), |m| m.to_string());
    let why = match &v.certificate {
        PurityCertificate::Pure(ws) => format!("witnesses for {} members", ws.len()),
        PurityCertificate::UnliftableMap { member, map, .. } => {
            format!(
                "map from {} with matrix {:?} has no lift",
                name(member),
                map.matrix().columns()
            )
        }
        PurityCertificate::TensorKernel { member, element } => {
            format!(
                "tr(U) (x) A -> tr(U) (x) B kills the nonzero element {:?}, U = {}",
                element,
                name(member)
            )
        }
        PurityCertificate::IntersectionGap { member, element, .. } => {
            format!("element {:?} of the intersection missed for {}", element, name(member))
        }
        PurityCertificate::InsolubleSystem { member, .. } => {
            format!("a system from {} is soluble in B, not in A", name(member))
        }
    };
    format!(
        "{} by criterion {}: {}",
        if v.pure { "pure" } else { "not pure" },
        v.criterion,
        why
    )
}
