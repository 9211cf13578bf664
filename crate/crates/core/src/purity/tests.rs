use proptest::prelude::*;

use super::*;
use crate::classes::{generate_class, ClassBounds, ClassKind};

fn z() -> RingSpec<i64> {
    RingSpec::Integers
}

fn zm(m: i64) -> RingSpec<i64> {
    RingSpec::IntegersMod(m)
}

fn col(v: &[i64]) -> IntMatrix<i64> {
    IntMatrix::from_vec(v.len(), 1, v.to_vec())
}

fn explicit(ring: &RingSpec<i64>, ms: Vec<FpModule<i64>>) -> ModuleClass<i64> {
    ModuleClass::explicit(ring, ms).unwrap()
}

/// 0 -> Z -2-> Z -> Z/2 -> 0
fn doubling() -> ShortExactSequence<i64> {
    make_ses(&FpModule::free(&z(), 1), &col(&[2])).unwrap()
}

#[test]
fn make_ses_examples() {
    let s = make_ses(&FpModule::cyclic(&zm(4), 0), &col(&[2])).unwrap();
    assert_eq!(s.a().orders(), &[2]);
    assert_eq!(s.c().orders(), &[2]);

    let m = FpModule::new(zm(6), 2, IntMatrix::from_i64(2, 1, &[2, 3])).unwrap();
    let s = make_ses(&m, &IntMatrix::zeros(2, 0)).unwrap();
    assert!(s.a().is_zero() && s.c().is_isomorphic(&m));
    let s = make_ses(&m, &IntMatrix::identity(2)).unwrap();
    assert!(s.c().is_zero() && s.a().is_isomorphic(&m));
}

#[test]
fn doubling_is_not_pure_for_z2() {
    let s = doubling();
    let class = explicit(&z(), vec![FpModule::cyclic(&z(), 2)]);
    for c in Criterion::ALL {
        let v = is_s_pure(&s, &class, c).unwrap();
        assert!(!v.pure, "{c}");
        assert!(v.verify(&s, &class), "{c}");
    }
    let v = is_s_pure(&s, &class, Criterion::DefinitionLift).unwrap();
    match v.certificate {
        PurityCertificate::UnliftableMap { map, .. } => assert!(!map.is_zero()),
        other => panic!("{other:?}"),
    }
    assert!(!lift_by_enumeration(&s, &class.members[0], 100).is_ok_and(|v| v));
    let x = purity_cross_check(&s, &class, 100).unwrap();
    assert!(!x.pure());
}

#[test]
fn doubling_is_pure_for_z3_and_r() {
    let s = doubling();
    for class in [explicit(&z(), vec![FpModule::cyclic(&z(), 3)]), ModuleClass::free(&z())] {
        for c in Criterion::ALL {
            let v = is_s_pure(&s, &class, c).unwrap();
            assert!(v.pure);
            assert!(v.verify(&s, &class));
        }
    }
}

#[test]
fn split_sequences_are_pure() {
    let r = zm(4);
    let s = ShortExactSequence::split(&FpModule::cyclic(&r, 2), &FpModule::cyclic(&r, 0)).unwrap();
    let class = generate_class(&r, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&r)).unwrap();
    let x = purity_cross_check(&s, &class, 4096).unwrap();
    assert!(x.pure());
    assert_eq!(x.enumerated, Some(true));
}

#[test]
fn co26_examples() {
    let r = z();
    let free = ModuleClass::free(&r);
    let corpus = vec![doubling()];
    assert!(co26_check(&free, &corpus).is_ok());

    let two = explicit(&r, vec![FpModule::free(&r, 1), FpModule::cyclic(&r, 2)]);
    let rep = co26_check(&two, &corpus).unwrap();
    assert_eq!(rep.pure_sequences, 0);

    let odd = explicit(
        &r,
        vec![FpModule::new(r.clone(), 2, IntMatrix::from_i64(2, 1, &[2, 0])).unwrap()],
    );
    assert!(matches!(co26_check(&odd, &corpus), Err(Error::InclusionFails(_))));
}

#[test]
fn purity_equivalence_distinguishes() {
    let r = z();
    let s1 = ModuleClass::free(&r);
    let s2 = explicit(&r, vec![FpModule::free(&r, 1), FpModule::cyclic(&r, 2)]);
    let rep = crate::classes::purity_equivalent(&s1, &s2, &[doubling()]).unwrap();
    assert!(!rep.equivalent);
    assert!(rep.distinguishing.unwrap().1);
    let rep = crate::classes::purity_equivalent(&s2, &s2, &[doubling()]).unwrap();
    assert!(rep.equivalent);
}

// random sequences: B a small module, A generated by 0..2 random elements

fn arb_ses() -> impl Strategy<Value = ShortExactSequence<i64>> {
    (any::<u64>(), 0usize..7).prop_map(|(seed, ri)| {
        let rings = crate::corpus::standard_rings::<i64>();
        let mut r = crate::corpus::rng(seed);
        crate::corpus::random_ses(&mut r, &rings[ri], 64).unwrap()
    })
}

fn arb_class_for(ring: RingSpec<i64>) -> impl Strategy<Value = ModuleClass<i64>> {
    prop_oneof![
        Just(ClassKind::CyclicFree),
        Just(ClassKind::FinitelyPresentedBounded),
        Just(ClassKind::CyclicCyclicallyPresented),
        Just(ClassKind::CyclicallyPresented),
    ]
    .prop_map(move |k| {
        let mut b = ClassBounds::standard(&ring);
        b.entry_bound = b.entry_bound.min(4);
        generate_class(&ring, k, b).unwrap()
    })
}

fn arb_case() -> impl Strategy<Value = (ShortExactSequence<i64>, ModuleClass<i64>)> {
    arb_ses().prop_flat_map(|s| {
        let r = s.ring().clone();
        (Just(s), arb_class_for(r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn criteria_agree_and_certificates_verify((s, class) in arb_case()) {
        let x = purity_cross_check(&s, &class, 4096).unwrap();
        for v in &x.verdicts {
            prop_assert!(v.verify(&s, &class), "{:?}", v.criterion);
        }
    }

    #[test]
    fn free_class_sees_every_sequence_as_pure(s in arb_ses()) {
        let class = ModuleClass::free(s.ring());
        prop_assert!(is_s_pure_default(&s, &class).unwrap().pure);
    }

    #[test]
    fn verdict_survives_transport((s, class) in arb_case(), seed in proptest::collection::vec(-3i64..4, 4)) {
        // B' = B with generators changed by an elementary unimodular matrix
        let n = s.b().gens();
        let mut u = IntMatrix::identity(n);
        if n == 2 {
            u = IntMatrix::from_vec(2, 2, vec![1, seed[0], 0, 1]).mul(&IntMatrix::from_vec(2, 2, vec![1, 0, seed[1], 1]));
        }
        let b2 = FpModule::new(s.ring().clone(), n, u.mul(s.b().relations())).unwrap();
        let iso = ModuleMap::new(s.b().clone(), b2, u).unwrap();
        let t = s.transport(&iso).unwrap();
        let v1 = is_s_pure(&s, &class, Criterion::EquationTransfer).unwrap().pure;
        let v2 = is_s_pure(&t, &class, Criterion::EquationTransfer).unwrap().pure;
        prop_assert_eq!(v1, v2);
    }

    #[test]
    fn purity_descends_to_intermediate_modules((s, class) in arb_case(), extra in proptest::collection::vec(0i64..12, 4)) {
        // A ⊆ B' = A + ⟨x⟩ ⊆ B
        let v = is_s_pure(&s, &class, Criterion::TransposeTensor).unwrap().pure;
        prop_assume!(v);
        let n = s.b().gens();
        let g = s.incl().matrix().hstack(&col(&extra[..n]));
        let (bp, bp_incl) = s.b().submodule(&g).unwrap();
        // A inside B' as the first generators
        let na = s.a().gens();
        let a_in = IntMatrix::identity(g.cols()).select_cols(&(0..na).collect::<Vec<_>>());
        let inner = make_ses(&bp, &a_in).unwrap();
        prop_assert!(bp_incl.is_injective());
        prop_assert!(is_s_pure(&inner, &class, Criterion::TransposeTensor).unwrap().pure);
    }

    #[test]
    fn larger_class_is_stricter((s, class) in arb_case()) {
        let free = ModuleClass::free(s.ring());
        prop_assume!(free.is_subclass_of(&class));
        if is_s_pure(&s, &class, Criterion::TransposeTensor).unwrap().pure {
            prop_assert!(is_s_pure(&s, &free, Criterion::TransposeTensor).unwrap().pure);
        }
    }
}
