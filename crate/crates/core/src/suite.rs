//! The acceptance suite: eight property checks over seeded corpora.
//!
//! Each check returns a [`CriterionOutcome`]; failures carry a short
//! description of every counterexample. Certificates emitted along the way
//! are re-verified and tallied for the last check.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;

use crate::classes::{generate_class, purity_equivalent, transpose_class, ClassBounds, ClassKind, ModuleClass};
use crate::corpus::{
    all_modules, module_corpus, random_iso, random_module, rng, ses_corpus, standard_rings, CorpusRng,
};
use crate::duality::{pontryagin_dual, sample_flatness};
use crate::envelopes::{
    embedding_sequence, envelope, extend_along, injective_atoms, is_pure_essential, is_s_pure_injective, preenvelope,
};
use crate::fpmod::{FpModule, HomModule, ModuleMap};
use crate::linalg::RingSpec;
use crate::purity::{is_s_pure, purity_cross_check, Criterion, ShortExactSequence};
use crate::relhom::{coresolve, ext_via_injective, ext_via_projective, is_s_pure_projective, pure_dims, resolve, Dim};
use crate::scalar::{int, Scalar};
use crate::{Caps, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// sequences in the purity corpus
    pub corpus_size: usize,
    /// isomorphism trials for the transport check
    pub trials: usize,
    pub caps: Caps,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            corpus_size: 500,
            trials: 200,
            caps: Caps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub detail: String,
    pub failures: Vec<String>,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} checks; {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.checked,
            self.detail
        )?;
        for x in self.failures.iter().take(5) {
            write!(f, "\n    {x}")?;
        }
        Ok(())
    }
}

/// Counts of emitted certificates and how many re-verified.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CertificateTally {
    pub emitted: usize,
    pub verified: usize,
    pub failures: Vec<String>,
}

impl CertificateTally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.emitted += 1;
        if ok {
            self.verified += 1;
        } else {
            self.failures.push(what());
        }
    }
}

struct Tracker {
    id: u8,
    title: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Tracker {
    fn new(id: u8, title: &'static str) -> Self {
        Self {
            id,
            title,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Counts an operation that must not error.
    fn run<V>(&mut self, r: Result<V>, what: impl FnOnce() -> String) -> Option<V> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{}: {e}", what()));
                None
            }
        }
    }

    fn finish(self, detail: String) -> CriterionOutcome {
        CriterionOutcome {
            id: self.id,
            title: self.title,
            pass: self.failures.is_empty(),
            checked: self.checked,
            detail,
            failures: self.failures,
        }
    }
}

/// The generated kinds plus the transpose of the cyclically presented class.
pub fn suite_classes<T: Scalar>(ring: &RingSpec<T>) -> Result<Vec<ModuleClass<T>>> {
    let b = ClassBounds::standard(ring);
    let mut out = ClassKind::GENERATED
        .iter()
        .map(|k| generate_class(ring, *k, b))
        .collect::<Result<Vec<_>>>()?;
    out.push(transpose_class(&generate_class(
        ring,
        ClassKind::CyclicallyPresented,
        b,
    )?));
    Ok(out)
}

fn finite_rings<T: Scalar>() -> Vec<RingSpec<T>> {
    standard_rings().into_iter().filter(|r| r.is_finite()).collect()
}

fn classes_for<T: Scalar>(
    cache: &mut Vec<(RingSpec<T>, Vec<ModuleClass<T>>)>,
    ring: &RingSpec<T>,
) -> Result<Vec<ModuleClass<T>>> {
    if let Some((_, c)) = cache.iter().find(|(r, _)| r == ring) {
        return Ok(c.clone());
    }
    let c = suite_classes(ring)?;
    cache.push((ring.clone(), c.clone()));
    Ok(c)
}

fn random_hom<T: Scalar>(r: &mut CorpusRng, a: &FpModule<T>, b: &FpModule<T>) -> Result<ModuleMap<T>> {
    let h = HomModule::new(a, b)?;
    let coords: Vec<T> = h
        .generator_orders()
        .iter()
        .map(|o| {
            let top = if o.is_zero() { 7 } else { o.to_i64().unwrap_or(i64::MAX) };
            int(r.gen_range(0..top))
        })
        .collect();
    Ok(h.decode(&coords))
}

/// Criteria (i)-(iv) and exhaustive lifting agree on a mixed-ring corpus.
pub fn criterion_1<T: Scalar>(cfg: &SuiteConfig, tally: &mut CertificateTally) -> Result<CriterionOutcome> {
    let mut t = Tracker::new(1, "purity criteria agree");
    let corpus = ses_corpus::<T>(cfg.seed, cfg.corpus_size, &standard_rings(), 256)?;
    let mut cache = Vec::new();
    let (mut pure, mut impure, mut enumerated) = (0, 0, 0);
    for (i, s) in corpus.iter().enumerate() {
        for class in classes_for(&mut cache, s.ring())? {
            let Some(x) = t.run(purity_cross_check(s, &class, cfg.caps.hom), || {
                format!("sequence {i} over {} with {}", s.ring(), class.kind)
            }) else {
                continue;
            };
            t.check(true, String::new);
            if x.enumerated.is_some() {
                enumerated += 1;
            }
            if x.pure() {
                pure += 1;
            } else {
                impure += 1;
            }
            for v in x.verdicts.iter().filter(|v| !v.pure) {
                tally.record(v.verify(s, &class), || {
                    format!(
                        "criterion {} certificate on sequence {i} with {}",
                        v.criterion, class.kind
                    )
                });
            }
        }
    }
    Ok(t.finish(format!(
        "{} sequences x 5 classes; {pure} pure, {impure} not; exhaustive lifting on {enumerated}",
        corpus.len()
    )))
}

/// Flatness by transposes and injectivity of the character module agree.
pub fn criterion_2<T: Scalar>(cfg: &SuiteConfig, tally: &mut CertificateTally) -> Result<CriterionOutcome> {
    let mut t = Tracker::new(2, "flat iff character module pure-injective");
    let mut flat_count = 0;
    let mut cache = Vec::new();
    for ring in finite_rings::<T>() {
        let sample = ses_corpus::<T>(cfg.seed ^ 0x2, 30, std::slice::from_ref(&ring), 64)?;
        for m in all_modules(&ring, 64)? {
            for class in classes_for(&mut cache, &ring)? {
                let what = || format!("{m} over {ring} with {}", class.kind);
                let Some(flat) = t.run(is_s_pure_projective(&m.transpose(), &class, &cfg.caps), what) else {
                    continue;
                };
                let Some(dual) = t.run(pontryagin_dual(&m), what) else {
                    continue;
                };
                let Some(inj) = t.run(is_s_pure_injective(dual.dual(), &class, &cfg.caps), what) else {
                    continue;
                };
                tally.record(inj.verify(), || format!("injectivity verdict for the dual of {m}"));
                t.check(flat.projective == inj.injective, || {
                    format!(
                        "{}: transpose route {} vs dual route {}",
                        what(),
                        flat.projective,
                        inj.injective
                    )
                });
                if flat.projective {
                    flat_count += 1;
                }
                let Some((_, refutation)) = t.run(sample_flatness(&m, &class, &sample), what) else {
                    continue;
                };
                if let Some(r) = &refutation {
                    let s = &sample[r.sequence];
                    let ok = m.identity().tensor(s.incl()).is_ok_and(|f| {
                        !f.source().is_zero_element(&r.element) && f.target().is_zero_element(&f.apply(&r.element))
                    });
                    tally.record(ok, || format!("flatness refutation for {m}"));
                }
                t.check(!(flat.projective && refutation.is_some()), || {
                    format!("{}: decided flat, refuted by sampling", what())
                });
            }
        }
    }
    Ok(t.finish(format!(
        "every module of order <= 64 over the finite rings; {flat_count} flat"
    )))
}

/// Preenvelopes are pure monomorphisms into pure-injectives through which maps factor.
pub fn criterion_3<T: Scalar>(cfg: &SuiteConfig, tally: &mut CertificateTally) -> Result<CriterionOutcome> {
    let mut t = Tracker::new(3, "preenvelopes");
    let mut r = rng(cfg.seed ^ 0x3);
    let modules = module_corpus::<T>(cfg.seed ^ 0x3, 60, &finite_rings(), 64);
    let mut cache = Vec::new();
    let mut probes_checked = 0;
    for m in &modules {
        let ring = m.ring().clone();
        for class in classes_for(&mut cache, &ring)? {
            let what = || format!("{m} over {ring} with {}", class.kind);
            let Some(p) = t.run(preenvelope(m, &class, &cfg.caps), what) else {
                continue;
            };
            t.check(p.map.is_injective(), || format!("{}: not injective", what()));
            let seq = embedding_sequence(&p.map)?;
            for c in Criterion::ALL {
                let v = is_s_pure(&seq, &class, c)?;
                t.check(v.pure, || format!("{}: not pure by {c}", what()));
                tally.record(v.verify(&seq, &class), || {
                    format!("{c} witness for a preenvelope of {m}")
                });
            }
            let split = is_s_pure_injective(&p.target, &class, &cfg.caps)?;
            t.check(split.injective && split.verify(), || {
                format!("{}: target does not split", what())
            });

            // probes: the atoms, and random modules that pass the split test
            let atoms: Vec<T> = injective_atoms(&class)?.into_iter().map(|a| a.order).collect();
            let mut probes = vec![FpModule::from_orders(&ring, &atoms)];
            for _ in 0..3 {
                let q = random_module(&mut r, &ring, 32);
                if is_s_pure_injective(&q, &class, &cfg.caps)?.injective {
                    probes.push(q);
                }
            }
            for q in &probes {
                for _ in 0..3 {
                    let h = random_hom(&mut r, m, q)?;
                    probes_checked += 1;
                    t.check(extend_along(&p.map, &h)?.is_some(), || {
                        format!("{}: a map into {q} does not factor", what())
                    });
                }
            }
        }
    }
    Ok(t.finish(format!(
        "{} modules x 5 classes; {probes_checked} probe maps",
        modules.len()
    )))
}

/// Envelopes over `Z/4` and `Z/8` exist, are unique and pass all four checks.
pub fn criterion_4<T: Scalar>(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut t = Tracker::new(4, "envelopes");
    let mut exhaustive = 0;
    let mut alternatives = 0;
    for m in [4, 8] {
        let ring = RingSpec::IntegersMod(int::<T>(m));
        for class in suite_classes(&ring)? {
            for x in all_modules(&ring, 16)? {
                let what = || format!("{x} over {ring} with {}", class.kind);
                let Some(e) = t.run(envelope(&x, &class, &cfg.caps), what) else {
                    continue;
                };
                t.check(e.report.all_pass(), || format!("{}:\n{}", what(), e.report));
                alternatives += e.uniqueness.alternatives.len();
                if let Some(ex) = &e.uniqueness.exhaustive {
                    exhaustive += 1;
                    t.check(!ex.maximal.is_empty(), || {
                        format!("{}: no maximal essential candidate", what())
                    });
                }
            }
        }
    }
    let z4 = RingSpec::IntegersMod(int::<T>(4));
    let z2 = FpModule::cyclic(&z4, int(2));
    let free = ModuleClass::free(&z4);
    let fp = generate_class(&z4, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&z4))?;
    let four = envelope(&z2, &free, &cfg.caps)?;
    t.check(four.envelope.orders() == [int::<T>(4)], || {
        format!("envelope of Z/2 for {{R}} is {}", four.envelope)
    });
    let two = envelope(&z2, &fp, &cfg.caps)?;
    t.check(two.envelope.orders() == [int::<T>(2)], || {
        format!("envelope of Z/2 for fp is {}", two.envelope)
    });
    Ok(t.finish(format!(
        "all modules of order <= 16 over Z/4, Z/8 x 5 classes; {alternatives} alternative orders, {exhaustive} exhaustive searches; Z/2 -> Z/4 and Z/2 -> Z/2 reproduced"
    )))
}

/// `Ext` via projective resolutions equals `Ext` via injective coresolutions.
pub fn criterion_5<T: Scalar>(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut t = Tracker::new(5, "balance of relative Ext");
    let depth = 4;
    for m in [4, 6] {
        let ring = RingSpec::IntegersMod(int::<T>(m));
        let classes = [
            ModuleClass::free(&ring),
            generate_class(&ring, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&ring))?,
        ];
        let modules: Vec<FpModule<T>> = all_modules(&ring, 16)?.into_iter().filter(|x| !x.is_zero()).collect();
        for class in &classes {
            let res = modules
                .iter()
                .map(|x| resolve(x, class, depth, &cfg.caps))
                .collect::<Result<Vec<_>>>()?;
            let cores = modules
                .iter()
                .map(|x| coresolve(x, class, depth, &cfg.caps))
                .collect::<Result<Vec<_>>>()?;
            for (a, ra) in modules.iter().zip(&res) {
                for (b, cb) in modules.iter().zip(&cores) {
                    for n in 0..=3 {
                        let p = ext_via_projective(ra, b, n)?;
                        let i = ext_via_injective(a, cb, n)?;
                        t.check(p.is_isomorphic(&i), || {
                            format!("Ext^{n}({a}, {b}) over {ring} with {}: {p} vs {i}", class.kind)
                        });
                    }
                }
            }
            let dims = pure_dims(&ring, class, 16, depth, &cfg.caps)?;
            t.check(dims.consistent(), || {
                format!(
                    "global dims over {ring} with {}: {} vs {}",
                    class.kind, dims.global_projective, dims.global_injective
                )
            });
            if m == 4 && class.kind == ClassKind::FinitelyPresentedBounded {
                t.check(
                    dims.global_projective == Dim::Exact(0) && dims.global_injective == Dim::Exact(0),
                    || "global dims over Z/4 with fp-bounded are not 0".into(),
                );
            }
        }
    }
    let z4 = RingSpec::IntegersMod(int::<T>(4));
    let z2 = FpModule::cyclic(&z4, int(2));
    let free = ModuleClass::free(&z4);
    let fp = generate_class(&z4, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&z4))?;
    let e = crate::relhom::rel_ext(&z2, &z2, &free, 1, &cfg.caps)?;
    t.check(e.via_projective.orders() == [int::<T>(2)], || {
        format!("Ext^1(Z/2, Z/2) for {{R}} is {}", e.via_projective)
    });
    let e = crate::relhom::rel_ext(&z2, &z2, &fp, 1, &cfg.caps)?;
    t.check(e.via_projective.is_zero(), || {
        format!("Ext^1(Z/2, Z/2) for fp is {}", e.via_projective)
    });
    Ok(t.finish(
        "all nonzero M, N of order <= 16 over Z/4, Z/6, degrees 0..3, classes {R} and fp-bounded; reference values reproduced".into(),
    ))
}

/// Exactness of `A →f B →g C` by listing elements.
fn exact_by_enumeration<T: Scalar>(f: &ModuleMap<T>, g: &ModuleMap<T>, cap: usize) -> Result<bool> {
    let a = f.source();
    let b = f.target();
    let c = g.target();
    let key = |m: &FpModule<T>, x: &[T]| m.canonical_coords(x);
    let images: HashSet<Vec<T>> = a.enumerate_elements(cap)?.map(|x| key(b, &f.apply(&x))).collect();
    let injective = Some(images.len()) == a.order().and_then(|o| o.to_usize());
    let onto: HashSet<Vec<T>> = b.enumerate_elements(cap)?.map(|y| key(c, &g.apply(&y))).collect();
    let surjective = Some(onto.len()) == c.order().and_then(|o| o.to_usize());
    let kernel: HashSet<Vec<T>> = b
        .enumerate_elements(cap)?
        .filter(|y| c.is_zero_element(&g.apply(y)))
        .map(|y| key(b, &y))
        .collect();
    Ok(injective && surjective && kernel == images)
}

/// `{R}`-purity is exactness; `tr(cyclically presented)` and `{R/I}` give the same purity.
pub fn criterion_6<T: Scalar>(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut t = Tracker::new(6, "examples of purity classes");
    let corpus = ses_corpus::<T>(cfg.seed ^ 0x6, cfg.corpus_size, &standard_rings(), 256)?;
    for (i, s) in corpus.iter().enumerate() {
        let free = ModuleClass::free(s.ring());
        for c in Criterion::ALL {
            t.check(is_s_pure(s, &free, c)?.pure, || {
                format!("sequence {i} is not {{R}}-pure by {c}")
            });
        }
    }
    // random composable pairs: exactness by the solver and by enumeration
    let mut r = rng(cfg.seed ^ 0x60);
    let mut exact = 0;
    for k in 0..cfg.corpus_size {
        let rings = finite_rings::<T>();
        let ring = rings[k % rings.len()].clone();
        let b = random_module(&mut r, &ring, 32);
        let (a, c) = if k % 2 == 0 {
            // a real sequence, perturbed half of the time
            let s = crate::corpus::random_ses(&mut r, &ring, 32)?;
            (s.a().clone(), s.c().clone())
        } else {
            (random_module(&mut r, &ring, 16), random_module(&mut r, &ring, 16))
        };
        let (f, g) = if k % 2 == 0 {
            let s = crate::corpus::random_ses(&mut r, &ring, 32)?;
            if r.gen_bool(0.5) {
                (s.incl().clone(), s.proj().clone())
            } else {
                (random_hom(&mut r, s.a(), s.b())?, s.proj().clone())
            }
        } else {
            (random_hom(&mut r, &a, &b)?, random_hom(&mut r, &b, &c)?)
        };
        let by_solver = ShortExactSequence::new(f.clone(), g.clone());
        let by_listing = exact_by_enumeration(&f, &g, 1 << 16)?;
        t.check(by_solver.is_ok() == by_listing, || {
            format!("pair {k}: exactness verdicts differ")
        });
        if let Ok(s) = by_solver {
            exact += 1;
            t.check(
                is_s_pure(&s, &ModuleClass::free(&ring), Criterion::TransposeTensor)?.pure,
                || format!("pair {k}: exact but not {{R}}-pure"),
            );
        }
    }
    let small: Vec<RingSpec<T>> = [4, 6, 8].iter().map(|m| RingSpec::IntegersMod(int(*m))).collect();
    let small_corpus = ses_corpus::<T>(cfg.seed ^ 0x61, cfg.corpus_size, &small, 256)?;
    let mut compared = 0;
    for ring in &small {
        let cp = generate_class(ring, ClassKind::CyclicallyPresented, ClassBounds::standard(ring))?;
        let tr = transpose_class(&cp);
        let quotients = ModuleClass::ideal_quotients(ring, 0);
        let rep = purity_equivalent(&tr, &quotients, &small_corpus)?;
        compared += rep.checked;
        t.check(rep.equivalent, || format!("tr(cp) and R/I purity differ over {ring}"));
    }
    Ok(t.finish(format!(
        "{} sequences {{R}}-pure; {exact} of {} random pairs exact by both tests; {compared} sequences compare tr(cp) with R/I",
        corpus.len(),
        cfg.corpus_size
    )))
}

/// Verdicts do not change along random isomorphisms.
pub fn criterion_7<T: Scalar>(cfg: &SuiteConfig) -> Result<CriterionOutcome> {
    let mut t = Tracker::new(7, "transport along isomorphisms");
    let mut r = rng(cfg.seed ^ 0x7);
    let rings = standard_rings::<T>();
    let mut cache = Vec::new();
    for k in 0..cfg.trials {
        let ring = rings[k % rings.len()].clone();
        let classes = classes_for(&mut cache, &ring)?;
        let class = &classes[r.gen_range(0..classes.len())];
        let s = crate::corpus::random_ses(&mut r, &ring, 64)?;
        let iso = random_iso(&mut r, s.b());
        let moved = s.transport(&iso)?;
        for c in Criterion::ALL {
            let v1 = is_s_pure(&s, class, c)?.pure;
            let v2 = is_s_pure(&moved, class, c)?.pure;
            t.check(v1 == v2, || format!("trial {k}: purity by {c} changed"));
        }
        if !ring.is_finite() {
            continue;
        }
        let m = random_module(&mut r, &ring, 16);
        let iso = random_iso(&mut r, &m);
        let inv = iso.inverse()?;
        let e1 = envelope(&m, class, &cfg.caps)?;
        let e2 = envelope(iso.target(), class, &cfg.caps)?;
        t.check(e1.envelope.is_isomorphic(&e2.envelope), || {
            format!("trial {k}: envelope changed")
        });
        let moved = e1.embedding.compose(&inv)?;
        let ess = is_pure_essential(&moved, class, &cfg.caps)?.essential;
        t.check(ess, || format!("trial {k}: transported envelope not essential"));
        let pe = preenvelope(&m, class, &cfg.caps)?;
        let a = is_pure_essential(&pe.map, class, &cfg.caps)?.essential;
        let b = is_pure_essential(&pe.map.compose(&inv)?, class, &cfg.caps)?.essential;
        t.check(a == b, || format!("trial {k}: essential verdict changed"));
        let i1 = is_s_pure_injective(&m, class, &cfg.caps)?.injective;
        let i2 = is_s_pure_injective(iso.target(), class, &cfg.caps)?.injective;
        t.check(i1 == i2, || format!("trial {k}: injectivity changed"));
    }
    Ok(t.finish(format!("{} trials", cfg.trials)))
}

/// Every emitted certificate re-verifies; more are generated from essential-extension tests.
pub fn criterion_8<T: Scalar>(cfg: &SuiteConfig, tally: &mut CertificateTally) -> Result<CriterionOutcome> {
    let mut r = rng(cfg.seed ^ 0x8);
    let mut cache = Vec::new();
    for (k, ring) in finite_rings::<T>().iter().cycle().take(60).enumerate() {
        let s = crate::corpus::random_ses(&mut r, ring, 64)?;
        let classes = classes_for(&mut cache, ring)?;
        let class = &classes[k % classes.len()];
        let v = is_pure_essential(s.incl(), class, &cfg.caps)?;
        if let Some(w) = &v.witness {
            tally.record(w.verify(s.incl(), class), || format!("essential witness {k}"));
        }
        let inj = is_s_pure_injective(s.b(), class, &cfg.caps)?;
        tally.record(inj.verify(), || format!("injectivity verdict {k}"));
        let proj = is_s_pure_projective(s.b(), class, &cfg.caps)?;
        let ok = match &proj.section {
            Some(sec) => proj
                .precover
                .map
                .compose(sec)
                .is_ok_and(|c| c.equals(&s.b().identity())),
            None => true,
        };
        tally.record(ok, || format!("projectivity section {k}"));
    }
    let mut t = Tracker::new(8, "certificates re-verify");
    t.checked = tally.emitted;
    t.failures = tally.failures.clone();
    Ok(t.finish(format!(
        "{} of {} certificates re-verified",
        tally.verified, tally.emitted
    )))
}

/// Runs all eight checks in order.
pub fn run_suite<T: Scalar>(cfg: &SuiteConfig) -> Result<Vec<CriterionOutcome>> {
    let mut tally = CertificateTally::default();
    Ok(vec![
        criterion_1::<T>(cfg, &mut tally)?,
        criterion_2::<T>(cfg, &mut tally)?,
        criterion_3::<T>(cfg, &mut tally)?,
        criterion_4::<T>(cfg)?,
        criterion_5::<T>(cfg)?,
        criterion_6::<T>(cfg)?,
        criterion_7::<T>(cfg)?,
        criterion_8::<T>(cfg, &mut tally)?,
    ])
}
