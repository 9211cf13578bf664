//! Running a job and assembling its report.

use serde_json::{json, Value};
use spure::corpus::{ses_corpus, standard_rings};
use spure::duality::{is_s_pure_flat, pontryagin_dual};
use spure::envelopes::{embedding_sequence, envelope, is_s_pure_injective, preenvelope};
use spure::purity::{is_s_pure, purity_cross_check, Criterion};
use spure::relhom::{pure_dims, rel_ext};
use spure::suite::{run_suite, suite_classes, SuiteConfig};
use spure::{classes::purity_equivalent, BigInt, Error, Ring};

use crate::job::{Command, Job, ParseError};
use crate::render::*;

/// Largest module order used by corpus-driven commands.
const CORPUS_ORDER: u64 = 256;

#[derive(Debug)]
pub enum Failure {
    Input(ParseError),
    Core(Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    /// 1 theory violation, 2 bad input, 3 scale exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Core(Error::ScaleExceeded { .. }) => 3,
            Failure::Core(Error::TheoryViolation(_) | Error::CriteriaDisagree(_)) => 1,
            Failure::Core(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            1 => "theory-violation",
            3 => "scale-exceeded",
            _ => "bad-input",
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "{e}"),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

/// A finished run: structured result, text lines, and whether a check failed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub result: Value,
    pub text: Vec<String>,
    pub violation: bool,
}

impl Outcome {
    fn ok(result: Value, text: Vec<String>) -> Self {
        Self {
            result,
            text,
            violation: false,
        }
    }
}

pub fn execute(job: &Job) -> Result<Outcome, Failure> {
    match job.command {
        Command::Canonicalize => canonicalize(job),
        Command::Transpose => {
            let m = job.need_module()?;
            let t = m.transpose();
            Ok(Outcome::ok(
                json!({ "module": module_json(m), "transpose": module_json(&t) }),
                vec![format!("tr(M) has {} generators and is isomorphic to {t}", t.gens())],
            ))
        }
        Command::CheckPurity => check_purity(job),
        Command::ClassEquiv => class_equiv(job),
        Command::Dual => dual(job),
        Command::Flat => flat(job),
        Command::Pinj => pinj(job),
        Command::Preenvelope => run_preenvelope(job),
        Command::Envelope => run_envelope(job),
        Command::Ext => ext(job),
        Command::Dims => dims(job),
        Command::CrossCheck => cross_check(job),
        Command::Suite => suite(job),
    }
}

fn canonicalize(job: &Job) -> Result<Outcome, Failure> {
    let m = job.need_module()?;
    let cf = m.canonicalize();
    let ok = cf.verify();
    let result = json!({
        "module": module_json(m),
        "canonical": module_json(cf.iso_to_canonical.target()),
        "invariant_factors": vec_json(&cf.invariant_factors),
        "free_rank": cf.free_rank,
        "iso_to_canonical": map_json(&cf.iso_to_canonical),
        "iso_from_canonical": map_json(&cf.iso_from_canonical),
        "isomorphisms_verified": ok,
    });
    let text = vec![
        format!("M is isomorphic to {m}"),
        format!(
            "invariant factors {:?}, free rank {}",
            cf.invariant_factors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            cf.free_rank
        ),
        format!("isomorphisms verified: {ok}"),
    ];
    Ok(Outcome {
        result,
        text,
        violation: !ok,
    })
}

fn check_purity(job: &Job) -> Result<Outcome, Failure> {
    let spec = job.ses.as_ref().map_or_else(
        || {
            Err(ParseError {
                at: "--ses".into(),
                message: "this command needs a sequence".into(),
            })
        },
        Ok,
    )?;
    let seq = spec.build()?;
    let class = job.need_class()?.build(seq.ring())?;
    let sel = job.criterion.as_deref().unwrap_or("all");
    let mut text = vec![format!(
        "0 -> {} -> {} -> {} -> 0 with {}",
        seq.a(),
        seq.b(),
        seq.c(),
        class.describe()
    )];
    let result = if sel == "all" {
        let x = purity_cross_check(&seq, &class, job.caps.hom)?;
        let verdicts: Vec<Value> = x
            .verdicts
            .iter()
            .map(|v| {
                text.push(verdict_text(v, &class));
                verdict_json(v, &class, v.verify(&seq, &class))
            })
            .collect();
        if let Some(e) = x.enumerated {
            text.push(format!("exhaustive lifting: {}", if e { "pure" } else { "not pure" }));
        }
        text.push(format!("verdict: {}", if x.pure() { "pure" } else { "not pure" }));
        json!({ "pure": x.pure(), "verdicts": verdicts, "exhaustive_lifting": x.enumerated })
    } else {
        let c = if sel == "default" {
            Criterion::default_for(seq.ring())
        } else {
            Criterion::parse(sel).ok_or_else(|| ParseError {
                at: "--criterion".into(),
                message: sel.into(),
            })?
        };
        let v = is_s_pure(&seq, &class, c)?;
        text.push(verdict_text(&v, &class));
        text.push(format!("verdict: {}", if v.pure { "pure" } else { "not pure" }));
        json!({ "pure": v.pure, "verdicts": [verdict_json(&v, &class, v.verify(&seq, &class))] })
    };
    let violation = result["verdicts"]
        .as_array()
        .is_some_and(|vs| vs.iter().any(|v| v["certificate_verified"] == false));
    Ok(Outcome {
        result: json!({ "class": class_json(&class), "sequence": {
            "A": module_json(seq.a()), "B": module_json(seq.b()), "C": module_json(seq.c()),
            "inclusion": matrix_json(seq.incl().matrix()), "projection": matrix_json(seq.proj().matrix()),
        }, "purity": result }),
        text,
        violation,
    })
}

fn corpus_for(job: &Job, rings: &[Ring]) -> spure::Result<Vec<spure::Ses>> {
    ses_corpus(job.seed, job.corpus_size, rings, CORPUS_ORDER)
}

fn class_equiv(job: &Job) -> Result<Outcome, Failure> {
    let ring = job.need_ring()?;
    let s1 = job.need_class()?.build(ring)?;
    let s2 = job
        .class2
        .as_ref()
        .map_or_else(
            || {
                Err(ParseError {
                    at: "--class2".into(),
                    message: "this command needs a second class".into(),
                })
            },
            Ok,
        )?
        .build(ring)?;
    let corpus = corpus_for(job, std::slice::from_ref(ring))?;
    let rep = purity_equivalent(&s1, &s2, &corpus)?;
    let mut text = vec![format!(
        "{} on {} sequences: {}",
        if rep.equivalent {
            "same purity"
        } else {
            "different purity"
        },
        rep.checked,
        if rep.equivalent {
            "no sequence separates the classes"
        } else {
            "a separating sequence was found"
        }
    )];
    let distinguishing = rep.distinguishing.as_ref().map(|(s, first)| {
        text.push(format!(
            "0 -> {} -> {} -> {} -> 0 is pure for the {} class only",
            s.a(),
            s.b(),
            s.c(),
            if *first { "first" } else { "second" }
        ));
        json!({
            "B": module_json(s.b()),
            "A": matrix_json(s.incl().matrix()),
            "pure_for_first": first,
        })
    });
    Ok(Outcome::ok(
        json!({
            "class": class_json(&s1),
            "class2": class_json(&s2),
            "equivalent": rep.equivalent,
            "checked": rep.checked,
            "distinguishing": distinguishing,
        }),
        text,
    ))
}

fn dual(job: &Job) -> Result<Outcome, Failure> {
    let m = job.need_module()?;
    let d = pontryagin_dual(m)?;
    let chars: Vec<Value> = d.hom().generators().iter().map(|g| matrix_json(g.matrix())).collect();
    Ok(Outcome::ok(
        json!({
            "module": module_json(m),
            "dual": module_json(d.dual()),
            "exponent": int_json(d.exponent()),
            "characters": chars,
            "character_target": module_json(d.hom().target()),
        }),
        vec![format!(
            "M+ is isomorphic to {} (pairing values in (1/{})Z/Z)",
            d.dual(),
            d.exponent()
        )],
    ))
}

fn flat(job: &Job) -> Result<Outcome, Failure> {
    let m = job.need_module()?;
    let class = job.need_class()?.build(m.ring())?;
    let corpus = corpus_for(job, &[m.ring().clone()])?;
    let v = is_s_pure_flat(m, &class, &corpus, &job.caps)?;
    let mut text = vec![format!("{m} is {}S-pure flat", if v.flat { "" } else { "not " })];
    text.push(format!("tr(M) pure projective: {}", v.via_transpose));
    if let Some(d) = v.via_dual {
        text.push(format!("M+ pure injective: {d}"));
    }
    text.push(format!("sampled {} pure sequences", v.sampled));
    let refutation = v.refutation.as_ref().map(|r| {
        let s = &corpus[r.sequence];
        text.push(format!("refuted by 0 -> {} -> {} -> {} -> 0", s.a(), s.b(), s.c()));
        json!({ "B": module_json(s.b()), "A": matrix_json(s.incl().matrix()), "element": vec_json(&r.element) })
    });
    Ok(Outcome::ok(
        json!({
            "module": module_json(m),
            "class": class_json(&class),
            "flat": v.flat,
            "via_transpose": v.via_transpose,
            "via_dual": v.via_dual,
            "sampled": v.sampled,
            "refutation": refutation,
        }),
        text,
    ))
}

fn pinj(job: &Job) -> Result<Outcome, Failure> {
    let m = job.need_module()?;
    let class = job.need_class()?.build(m.ring())?;
    let v = is_s_pure_injective(m, &class, &job.caps)?;
    let ok = v.verify();
    Ok(Outcome {
        result: json!({
            "module": module_json(m),
            "class": class_json(&class),
            "injective": v.injective,
            "preenvelope": map_json(&v.preenvelope.map),
            "retraction": v.retraction.as_ref().map(map_json),
            "verified": ok,
        }),
        text: vec![
            format!("{m} is {}S-pure injective", if v.injective { "" } else { "not " }),
            format!(
                "preenvelope into {} {}",
                v.preenvelope.target,
                if v.injective { "splits" } else { "has no retraction" }
            ),
        ],
        violation: !ok,
    })
}

fn run_preenvelope(job: &Job) -> Result<Outcome, Failure> {
    let m = job.need_module()?;
    let class = job.need_class()?.build(m.ring())?;
    let p = preenvelope(m, &class, &job.caps)?;
    let seq = embedding_sequence(&p.map)?;
    let v = is_s_pure(&seq, &class, Criterion::default_for(m.ring()))?;
    let ok = v.pure && v.verify(&seq, &class);
    let factors: Vec<Value> = p
        .factors
        .iter()
        .map(|f| json!({ "order": int_json(&f.atom.order), "member": f.atom.member, "component": matrix_json(f.component.matrix()) }))
        .collect();
    Ok(Outcome {
        result: json!({
            "module": module_json(m),
            "class": class_json(&class),
            "target": module_json(&p.target),
            "map": map_json(&p.map),
            "factors": factors,
            "pure_mono": verdict_json(&v, &class, ok),
        }),
        text: vec![
            format!("preenvelope {m} -> {} with {} factors", p.target, p.factors.len()),
            format!("pure monomorphism: {}", v.pure),
        ],
        violation: !ok,
    })
}

fn run_envelope(job: &Job) -> Result<Outcome, Failure> {
    let m = job.need_module()?;
    let class = job.need_class()?.build(m.ring())?;
    let e = envelope(m, &class, &job.caps)?;
    let checks: Vec<Value> = e
        .report
        .checks()
        .iter()
        .zip([
            "maximal_essential",
            "essential_injective",
            "minimal_injective",
            "automorphisms",
        ])
        .map(|(c, name)| json!({ "check": name, "pass": c.pass, "method": c.method, "detail": c.detail }))
        .collect();
    let exhaustive = e.uniqueness.exhaustive.as_ref().map(|x| {
        json!({
            "submodules": x.submodules,
            "essential": x.essential,
            "maximal": x.maximal.iter().map(|(n, _)| n.to_string()).collect::<Vec<_>>(),
        })
    });
    let mut text = vec![format!("envelope of {m}: {}", e.envelope)];
    text.push(format!(
        "verification: {}",
        if e.report.all_pass() { "all pass" } else { "FAILED" }
    ));
    text.extend(e.report.to_string().lines().map(|l| format!("  {l}")));
    Ok(Outcome {
        result: json!({
            "module": module_json(m),
            "class": class_json(&class),
            "envelope": module_json(&e.envelope),
            "embedding": map_json(&e.embedding),
            "preenvelope": module_json(&e.preenvelope.target),
            "kept": e.kept,
            "uniqueness": {
                "alternatives": e.uniqueness.alternatives.iter().map(|(order, _)| order.clone()).collect::<Vec<_>>(),
                "exhaustive": exhaustive,
            },
            "verification": { "all_pass": e.report.all_pass(), "checks": checks },
        }),
        text,
        violation: !e.report.all_pass(),
    })
}

fn ext(job: &Job) -> Result<Outcome, Failure> {
    let m = job.need_module()?;
    let n = job.need_module2()?;
    let class = job.need_class()?.build(m.ring())?;
    let e = rel_ext(m, n, &class, job.degree, &job.caps)?;
    Ok(Outcome {
        result: json!({
            "module": module_json(m),
            "module2": module_json(n),
            "class": class_json(&class),
            "degree": e.degree,
            "via_projective": module_json(&e.via_projective),
            "via_injective": module_json(&e.via_injective),
            "agree": e.agree(),
        }),
        text: vec![
            format!("Ext^{}({m}, {n}) via projectives: {}", e.degree, e.via_projective),
            format!("Ext^{}({m}, {n}) via injectives: {}", e.degree, e.via_injective),
        ],
        violation: !e.agree(),
    })
}

fn dims(job: &Job) -> Result<Outcome, Failure> {
    let ring = job.need_ring()?;
    let class = job.need_class()?.build(ring)?;
    let d = pure_dims(ring, &class, job.order_bound, job.depth, &job.caps)?;
    let rows: Vec<Value> = d
        .rows
        .iter()
        .map(|r| json!({ "module": r.module.to_string(), "projective": r.projective.to_string(), "injective": r.injective.to_string() }))
        .collect();
    let mut text = vec![format!(
        "modules of order <= {} over {ring}, depth {}: global projective {}, global injective {}",
        d.order_bound, d.depth, d.global_projective, d.global_injective
    )];
    for r in &d.rows {
        text.push(format!("  {}: pd {}, id {}", r.module, r.projective, r.injective));
    }
    Ok(Outcome {
        result: json!({
            "class": class_json(&class),
            "order_bound": d.order_bound,
            "depth": d.depth,
            "rows": rows,
            "global_projective": d.global_projective.to_string(),
            "global_injective": d.global_injective.to_string(),
            "consistent": d.consistent(),
        }),
        text,
        violation: !d.consistent(),
    })
}

fn cross_check(job: &Job) -> Result<Outcome, Failure> {
    let rings = match &job.ring {
        Some(r) => vec![r.clone()],
        None => standard_rings(),
    };
    let corpus = corpus_for(job, &rings)?;
    let mut agreed = 0;
    let mut pure = 0;
    let mut disagreements = Vec::new();
    for (i, s) in corpus.iter().enumerate() {
        let classes = match &job.class {
            Some(c) => vec![c.build(s.ring())?],
            None => suite_classes(s.ring())?,
        };
        let mut ok = true;
        for class in &classes {
            match purity_cross_check(s, class, job.caps.hom) {
                Ok(x) => pure += usize::from(x.pure()),
                Err(Error::CriteriaDisagree(msg)) => {
                    ok = false;
                    disagreements.push(json!({ "sequence": i, "ring": s.ring().to_string(), "class": class.kind.name(), "message": msg }));
                }
                Err(e) => return Err(e.into()),
            }
        }
        agreed += usize::from(ok);
    }
    let text = vec![format!("{agreed}/{} criteria agreements", corpus.len())];
    Ok(Outcome {
        result: json!({
            "sequences": corpus.len(),
            "agreements": agreed,
            "pure_verdicts": pure,
            "disagreements": disagreements,
        }),
        text,
        violation: agreed != corpus.len(),
    })
}

fn suite(job: &Job) -> Result<Outcome, Failure> {
    let cfg = SuiteConfig {
        seed: job.seed,
        corpus_size: job.corpus_size,
        caps: job.caps,
        ..SuiteConfig::default()
    };
    let outcomes = run_suite::<BigInt>(&cfg)?;
    let text = outcomes.iter().map(|o| o.to_string()).collect();
    let violation = outcomes.iter().any(|o| !o.pass);
    let result = outcomes
        .iter()
        .map(|o| json!({ "id": o.id, "title": o.title, "pass": o.pass, "checked": o.checked, "detail": o.detail, "failures": o.failures }))
        .collect::<Vec<_>>();
    Ok(Outcome {
        result: json!({ "criteria": result }),
        text,
        violation,
    })
}
