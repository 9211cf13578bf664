//! Finite representative lists for the standard module classes.

use std::collections::HashSet;
use std::fmt;

use crate::error::scale;
use crate::fpmod::FpModule;
use crate::linalg::{IntMatrix, RingSpec};
use crate::purity::{is_s_pure, Criterion, ShortExactSequence};
use crate::scalar::{divisors, from_usize, Scalar};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    CyclicFree,
    FinitelyPresentedBounded,
    CyclicCyclicallyPresented,
    CyclicallyPresented,
    TransposeOf,
    Explicit,
}

impl ClassKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::CyclicFree => "cyclic-free",
            ClassKind::FinitelyPresentedBounded => "fp-bounded",
            ClassKind::CyclicCyclicallyPresented => "cyclic-cyclically-presented",
            ClassKind::CyclicallyPresented => "cyclically-presented",
            ClassKind::TransposeOf => "transpose",
            ClassKind::Explicit => "explicit",
        }
    }

    /// Parses the names printed by [`ClassKind::name`] plus a few aliases.
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "cyclic-free" | "free" | "R" => ClassKind::CyclicFree,
            "fp-bounded" | "f.p.-bounded" | "finitely-presented" | "fp" => ClassKind::FinitelyPresentedBounded,
            "cyclic-cyclically-presented" | "rd" => ClassKind::CyclicCyclicallyPresented,
            "cyclically-presented" | "cp" => ClassKind::CyclicallyPresented,
            "transpose" => ClassKind::TransposeOf,
            "explicit" => ClassKind::Explicit,
            _ => return None,
        })
    }

    /// The four kinds produced by [`generate_class`].
    pub const GENERATED: [ClassKind; 4] = [
        ClassKind::CyclicFree,
        ClassKind::FinitelyPresentedBounded,
        ClassKind::CyclicCyclicallyPresented,
        ClassKind::CyclicallyPresented,
    ];
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassBounds {
    pub max_gens: usize,
    pub max_rels: usize,
    /// Exclusive bound on presentation entries; over `Z/m` it is capped at `m`.
    pub entry_bound: u64,
}

impl ClassBounds {
    /// Two generators, two relations, entries below the modulus (or below 8 over `Z`).
    pub fn standard<T: Scalar>(ring: &RingSpec<T>) -> Self {
        let entry_bound = match ring {
            RingSpec::Integers => 8,
            RingSpec::IntegersMod(m) => m.to_u64().unwrap_or(u64::MAX),
        };
        Self {
            max_gens: 2,
            max_rels: 2,
            entry_bound,
        }
    }
}

/// Default cap on the number of members of a generated class.
pub const DEFAULT_MEMBER_CAP: usize = 512;

/// An explicit finite list of pairwise non-isomorphic modules standing for a class.
///
/// `members[0]` is always `R` with the zero-relation presentation for
/// generated classes.
#[derive(Debug, Clone)]
pub struct ModuleClass<T> {
    pub ring: RingSpec<T>,
    pub members: Vec<FpModule<T>>,
    pub kind: ClassKind,
    pub bounds: Option<ClassBounds>,
}

impl<T: Scalar> ModuleClass<T> {
    /// Explicit list, deduplicated up to isomorphism. Zero modules are dropped.
    pub fn explicit(ring: &RingSpec<T>, members: Vec<FpModule<T>>) -> Result<Self> {
        let mut c = Self {
            ring: ring.clone(),
            members: Vec::new(),
            kind: ClassKind::Explicit,
            bounds: None,
        };
        for m in members {
            m.same_ring_as(ring)?;
            c.push(m);
        }
        Ok(c)
    }

    /// `{R}`.
    pub fn free(ring: &RingSpec<T>) -> Self {
        generate_class(ring, ClassKind::CyclicFree, ClassBounds::standard(ring)).expect("one member")
    }

    /// `{R/I : I an ideal}`, bounded by `entry_bound` over `Z`.
    pub fn ideal_quotients(ring: &RingSpec<T>, entry_bound: u64) -> Self {
        let mut c = Self::empty(ring, ClassKind::Explicit, None);
        match ring {
            RingSpec::IntegersMod(m) => {
                for d in divisors(m).into_iter().rev() {
                    c.push(FpModule::cyclic(ring, d));
                }
            }
            RingSpec::Integers => {
                c.push(FpModule::free(ring, 1));
                for d in 2..entry_bound {
                    c.push(FpModule::cyclic(ring, from_usize(d as usize)));
                }
            }
        }
        c
    }

    fn empty(ring: &RingSpec<T>, kind: ClassKind, bounds: Option<ClassBounds>) -> Self {
        Self {
            ring: ring.clone(),
            members: Vec::new(),
            kind,
            bounds,
        }
    }

    /// Adds `m` unless it is zero or isomorphic to a member. Returns whether it was added.
    pub fn push(&mut self, m: FpModule<T>) -> bool {
        if m.is_zero() || self.contains_iso(&m) {
            return false;
        }
        self.members.push(m);
        true
    }

    pub fn contains_iso(&self, m: &FpModule<T>) -> bool {
        self.members.iter().any(|u| u.is_isomorphic(m))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True if some member is `R` presented by one zero relation.
    pub fn contains_free_presentation(&self) -> bool {
        self.members
            .iter()
            .any(|u| u.gens() == 1 && u.relations().cols() >= 1 && u.relations().is_zero())
    }

    /// `S ⊆ T` up to isomorphism.
    pub fn is_subclass_of(&self, other: &Self) -> bool {
        self.members.iter().all(|u| other.contains_iso(u))
    }

    pub fn describe(&self) -> String {
        let names: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        format!("{} over {}: {{{}}}", self.kind, self.ring, names.join(", "))
    }
}

impl<T: Scalar> FpModule<T> {
    fn same_ring_as(&self, ring: &RingSpec<T>) -> Result<()> {
        if self.ring() == ring {
            Ok(())
        } else {
            Err(crate::Error::RingMismatch)
        }
    }
}

/// Most distinct entries a generated class may range over.
const ENTRY_VALUE_LIMIT: u64 = 1 << 16;

fn entry_values<T: Scalar>(ring: &RingSpec<T>, bound: u64) -> Result<Vec<T>> {
    let b = match ring {
        RingSpec::Integers => bound,
        RingSpec::IntegersMod(m) => bound.min(m.to_u64().unwrap_or(u64::MAX)),
    };
    if b > ENTRY_VALUE_LIMIT {
        return Err(scale("class entry values", b, ENTRY_VALUE_LIMIT as usize));
    }
    Ok((0..b).map(|v| from_usize(v as usize)).collect())
}

/// All vectors of length `len` over `vals`, last coordinate fastest.
fn tuples<T: Clone>(vals: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                vals.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    out
}

/// A bounded slice of one of the standard classes, with `R` adjoined.
pub fn generate_class<T: Scalar>(ring: &RingSpec<T>, kind: ClassKind, bounds: ClassBounds) -> Result<ModuleClass<T>> {
    generate_class_capped(ring, kind, bounds, DEFAULT_MEMBER_CAP)
}

pub fn generate_class_capped<T: Scalar>(
    ring: &RingSpec<T>,
    kind: ClassKind,
    bounds: ClassBounds,
    cap: usize,
) -> Result<ModuleClass<T>> {
    let mut c = ModuleClass::empty(ring, kind, Some(bounds));
    c.push(FpModule::free(ring, 1));
    if kind == ClassKind::CyclicFree {
        return Ok(c);
    }
    let vals = entry_values(ring, bounds.entry_bound)?;
    let check = |c: &ModuleClass<T>| {
        if c.len() > cap {
            Err(scale(format!("{kind} class members"), c.len(), cap))
        } else {
            Ok(())
        }
    };
    match kind {
        ClassKind::CyclicFree => {}
        ClassKind::FinitelyPresentedBounded => {
            // stored in diagonal form, so each member is its own transpose
            let mut seen = HashSet::new();
            for n in 1..=bounds.max_gens {
                for k in 0..=bounds.max_rels {
                    for e in tuples(&vals, n * k) {
                        let m = FpModule::new(ring.clone(), n, IntMatrix::from_vec(n, k, e))?;
                        let key = m.orders().to_vec();
                        if seen.insert(key.clone()) {
                            c.push(FpModule::from_orders(ring, &key));
                            check(&c)?;
                        }
                    }
                }
            }
        }
        ClassKind::CyclicCyclicallyPresented => {
            for r in &vals {
                c.push(FpModule::cyclic(ring, r.clone()));
                check(&c)?;
            }
        }
        ClassKind::CyclicallyPresented => {
            for n in 1..=bounds.max_gens.max(1) {
                for g in tuples(&vals, n) {
                    c.push(FpModule::new(ring.clone(), n, IntMatrix::from_vec(n, 1, g))?);
                    check(&c)?;
                }
            }
        }
        ClassKind::TransposeOf | ClassKind::Explicit => {
            return Err(crate::Error::Invalid(format!(
                "class kind {kind} is not generated from bounds"
            )))
        }
    }
    Ok(c)
}

/// `tr(S)`: member-wise transpose, deduplicated.
pub fn transpose_class<T: Scalar>(s: &ModuleClass<T>) -> ModuleClass<T> {
    let mut c = ModuleClass::empty(&s.ring, ClassKind::TransposeOf, s.bounds);
    for u in &s.members {
        c.push(u.transpose());
    }
    c
}

/// Outcome of [`purity_equivalent`].
#[derive(Debug, Clone)]
pub struct EquivalenceReport<T> {
    pub equivalent: bool,
    pub checked: usize,
    /// First sequence with different verdicts, and the verdict under `S1`.
    pub distinguishing: Option<(ShortExactSequence<T>, bool)>,
}

/// Compares purity verdicts of two classes on every corpus sequence.
pub fn purity_equivalent<T: Scalar>(
    s1: &ModuleClass<T>,
    s2: &ModuleClass<T>,
    corpus: &[ShortExactSequence<T>],
) -> Result<EquivalenceReport<T>> {
    if s1.ring != s2.ring {
        return Err(crate::Error::RingMismatch);
    }
    let mut checked = 0;
    for seq in corpus.iter().filter(|q| q.ring() == &s1.ring) {
        checked += 1;
        let v1 = is_s_pure(seq, s1, Criterion::TransposeTensor)?.pure;
        let v2 = is_s_pure(seq, s2, Criterion::TransposeTensor)?.pure;
        if v1 != v2 {
            return Ok(EquivalenceReport {
                equivalent: false,
                checked,
                distinguishing: Some((seq.clone(), v1)),
            });
        }
    }
    Ok(EquivalenceReport {
        equivalent: true,
        checked,
        distinguishing: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zm(m: i64) -> RingSpec<i64> {
        RingSpec::IntegersMod(m)
    }

    fn orders(c: &ModuleClass<i64>) -> Vec<Vec<i64>> {
        c.members.iter().map(|m| m.orders().to_vec()).collect()
    }

    #[test]
    fn cyclic_cyclically_presented_over_z4() {
        let c = generate_class(
            &zm(4),
            ClassKind::CyclicCyclicallyPresented,
            ClassBounds::standard(&zm(4)),
        )
        .unwrap();
        assert_eq!(orders(&c), vec![vec![4], vec![2]]);
    }

    #[test]
    fn cyclic_free_is_r() {
        for r in [RingSpec::Integers, zm(6)] {
            let c = ModuleClass::free(&r);
            assert_eq!(c.len(), 1);
            assert!(c.contains_free_presentation());
            assert!(c.members[0].is_isomorphic(&FpModule::free(&r, 1)));
        }
    }

    #[test]
    fn cyclically_presented_over_z4() {
        let r = zm(4);
        let c = generate_class(&r, ClassKind::CyclicallyPresented, ClassBounds::standard(&r)).unwrap();
        let a = FpModule::new(r.clone(), 2, IntMatrix::from_i64(2, 1, &[1, 2])).unwrap();
        let b = FpModule::new(r.clone(), 2, IntMatrix::from_i64(2, 1, &[2, 2])).unwrap();
        assert_eq!(a.orders(), &[4]);
        assert_eq!(b.orders(), &[2, 4]);
        assert!(c.contains_iso(&a) && c.contains_iso(&b));
        for (i, u) in c.members.iter().enumerate() {
            for v in &c.members[i + 1..] {
                assert!(!u.is_isomorphic(v));
            }
        }
    }

    #[test]
    fn fp_bounded_members_are_self_transpose() {
        for r in [RingSpec::Integers, zm(12)] {
            let c = generate_class(&r, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&r)).unwrap();
            for u in &c.members {
                assert!(u.transpose().is_isomorphic(u));
            }
            let t = transpose_class(&c);
            assert!(t.is_subclass_of(&c) && c.is_subclass_of(&t));
        }
    }

    #[test]
    fn transpose_examples() {
        let r = RingSpec::<i64>::Integers;
        let t = transpose_class(&ModuleClass::free(&r));
        assert_eq!(orders(&t), vec![vec![0]]);
        let two = ModuleClass::explicit(&r, vec![FpModule::cyclic(&r, 2)]).unwrap();
        assert_eq!(orders(&transpose_class(&two)), vec![vec![2]]);
    }

    #[test]
    fn ideal_quotients_over_z4() {
        let c = ModuleClass::ideal_quotients(&zm(4), 0);
        assert_eq!(orders(&c), vec![vec![4], vec![2]]);
    }

    #[test]
    fn member_cap_is_enforced() {
        let r = zm(12);
        let e = generate_class_capped(&r, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&r), 3);
        assert!(matches!(e, Err(crate::Error::ScaleExceeded { .. })));
    }
}
