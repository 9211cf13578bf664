use proptest::prelude::*;

use super::*;
use crate::classes::{generate_class, ClassBounds, ClassKind};
use crate::corpus::{module_corpus, ses_corpus, standard_rings};

fn zm(m: i64) -> RingSpec<i64> {
    RingSpec::IntegersMod(m)
}

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn dual_examples() {
    let d = pontryagin_dual(&FpModule::cyclic(&zm(4), 2)).unwrap();
    assert_eq!(d.dual().orders(), &[2]);
    let m = FpModule::from_orders(&RingSpec::Integers, &[2, 4]);
    assert_eq!(pontryagin_dual(&m).unwrap().dual().orders(), &[2, 4]);
    let m = FpModule::from_orders(&zm(12), &[2, 4]);
    assert_eq!(pontryagin_dual(&m).unwrap().dual().orders(), &[2, 4]);
    assert!(pontryagin_dual(&FpModule::zero(&zm(4))).unwrap().dual().is_zero());
    assert_eq!(
        pontryagin_dual(&FpModule::free(&RingSpec::<i64>::Integers, 1)).unwrap_err(),
        Error::InfiniteModule
    );
}

#[test]
fn pairing_of_z4_with_its_dual() {
    // ⟨1, φ⟩ = 1/4 for the generating character
    let z4 = FpModule::cyclic(&RingSpec::Integers, 4);
    let d = pontryagin_dual(&z4).unwrap();
    let vals: Vec<i64> = (0..4).map(|x| d.pair(&[x], &[1])).collect();
    assert_eq!(vals, vec![0, 1, 2, 3]);
    let d = pontryagin_dual(&FpModule::cyclic(&zm(8), 4)).unwrap();
    assert_eq!(d.exponent(), &4);
    assert_eq!(d.pair(&[1], &[1]), 1);
}

#[test]
fn dual_map_examples() {
    for ring in [zm(4), RingSpec::Integers] {
        let z2 = FpModule::cyclic(&ring, 2);
        let z4 = FpModule::cyclic(&ring, 4);
        let f = ModuleMap::new(z2.clone(), z4.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
        let fd = dual_map(&f).unwrap();
        assert_eq!(fd.source().orders(), &[4]);
        assert_eq!(fd.target().orders(), &[2]);
        assert!(fd.is_surjective() && !fd.is_injective());

        let id = dual_map(&z4.identity()).unwrap();
        assert!(id.equals(&id.source().identity()));
        assert!(dual_map(&ModuleMap::zero(&z2, &z4)).unwrap().is_zero());
    }
}

#[test]
fn flatness_examples() {
    let r = zm(4);
    let corpus = ses_corpus(5, 60, std::slice::from_ref(&r), 64).unwrap();
    let free = ModuleClass::free(&r);
    let fp = generate_class(&r, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&r)).unwrap();
    let z2 = FpModule::cyclic(&r, 2);

    let v = is_s_pure_flat(&FpModule::free(&r, 1), &free, &corpus, &caps()).unwrap();
    assert!(v.flat && v.refutation.is_none());
    let v = is_s_pure_flat(&z2, &free, &corpus, &caps()).unwrap();
    assert!(!v.flat && v.via_dual == Some(false));
    let v = is_s_pure_flat(&z2, &fp, &corpus, &caps()).unwrap();
    assert!(v.flat && v.via_dual == Some(true));

    // oracle: Z/2 ⊗ (2Z/4 ⊂ Z/4) is the zero map on Z/2
    let s = crate::purity::make_ses(&FpModule::cyclic(&r, 4), &IntMatrix::from_i64(1, 1, &[2])).unwrap();
    let t = z2.identity().tensor(s.incl()).unwrap();
    assert!(t.source().orders() == [2] && t.is_zero());
    let (_, refutation) = sample_flatness(&z2, &free, &[s]).unwrap();
    assert!(refutation.is_some());
}

#[test]
fn flatness_over_z() {
    let z = RingSpec::<i64>::Integers;
    let class = ModuleClass::explicit(&z, vec![FpModule::free(&z, 1), FpModule::cyclic(&z, 2)]).unwrap();
    // Z/2 is pure-flat for a class containing Z/2, and not for {Z}
    let z2 = FpModule::cyclic(&z, 2);
    assert!(is_s_pure_flat(&z2, &class, &[], &caps()).unwrap().flat);
    assert!(!is_s_pure_flat(&z2, &ModuleClass::free(&z), &[], &caps()).unwrap().flat);
}

fn arb_module() -> impl Strategy<Value = FpModule<i64>> {
    (any::<u64>(), 0usize..7).prop_map(|(seed, ri)| {
        let rings = standard_rings::<i64>();
        module_corpus(seed, 1, &[rings[ri].clone()], 64).remove(0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn double_dual_and_order(m in arb_module()) {
        let d = pontryagin_dual(&m).unwrap();
        prop_assert_eq!(d.dual().order(), m.order());
        let dd = pontryagin_dual(d.dual()).unwrap();
        prop_assert!(dd.dual().is_isomorphic(&m));
    }

    #[test]
    fn dualizing_is_contravariant(seed in any::<u64>(), ri in 0usize..7) {
        let rings = standard_rings::<i64>();
        let ring = rings[ri].clone();
        let mut r = crate::corpus::rng(seed);
        let a = crate::corpus::random_module(&mut r, &ring, 32);
        let b = crate::corpus::random_module(&mut r, &ring, 32);
        let c = crate::corpus::random_module(&mut r, &ring, 32);
        prop_assume!(a.is_finite() && b.is_finite() && c.is_finite());
        let pick = |h: &HomModule<i64>, r: &mut crate::corpus::CorpusRng| {
            use rand::Rng;
            let coords: Vec<i64> = h.generator_orders().iter().map(|o| r.gen_range(0..*o.max(&1))).collect();
            h.decode(&coords)
        };
        let f = pick(&HomModule::new(&a, &b).unwrap(), &mut r);
        let g = pick(&HomModule::new(&b, &c).unwrap(), &mut r);
        let lhs = dual_map(&g.compose(&f).unwrap()).unwrap();
        let rhs = dual_map(&f).unwrap().compose(&dual_map(&g).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn dual_sequences_are_exact(seed in any::<u64>(), ri in 1usize..7) {
        let rings = standard_rings::<i64>();
        let s = ses_corpus(seed, 1, &[rings[ri].clone()], 64).unwrap().remove(0);
        let pd = dual_map(s.proj()).unwrap();
        let id = dual_map(s.incl()).unwrap();
        prop_assert!(ShortExactSequence::new(pd, id).is_ok());
    }
}
