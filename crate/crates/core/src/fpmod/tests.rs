use proptest::prelude::*;

use super::*;
use crate::linalg::{IntMatrix, RingSpec};

fn z() -> RingSpec<i64> {
    RingSpec::Integers
}

fn zm(m: i64) -> RingSpec<i64> {
    RingSpec::IntegersMod(m)
}

fn cyc(ring: &RingSpec<i64>, d: i64) -> FpModule<i64> {
    FpModule::cyclic(ring, d)
}

fn module(ring: &RingSpec<i64>, n: usize, k: usize, e: &[i64]) -> FpModule<i64> {
    FpModule::new(ring.clone(), n, IntMatrix::from_i64(n, k, e)).unwrap()
}

/// Brute-force Hom: every tuple of generator images that kills the relations,
/// counted up to equality in the target.
fn brute_hom_count(m: &FpModule<i64>, n: &FpModule<i64>) -> usize {
    let elems: Vec<Vec<i64>> = n.enumerate_elements(10_000).unwrap().collect();
    let mut tuples: Vec<Vec<Vec<i64>>> = vec![vec![]];
    for _ in 0..m.gens() {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                elems.iter().map(move |e| {
                    let mut t = t.clone();
                    t.push(e.clone());
                    t
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .filter(|t| {
            let f = IntMatrix::from_cols(n.gens(), t);
            ModuleMap::new(m.clone(), n.clone(), f).is_ok()
        })
        .count()
}

#[test]
fn canonicalize_examples() {
    let m = module(&z(), 2, 2, &[2, 0, 0, 3]);
    let c = m.canonicalize();
    assert_eq!(c.invariant_factors, vec![6]);
    assert_eq!(c.free_rank, 0);
    assert!(c.verify());

    let r = FpModule::<i64>::new(z(), 1, IntMatrix::zeros(1, 0)).unwrap();
    let c = r.canonicalize();
    assert!(c.invariant_factors.is_empty());
    assert_eq!(c.free_rank, 1);

    let c = cyc(&zm(4), 2).canonicalize();
    assert_eq!(c.invariant_factors, vec![2]);
    assert!(c.verify());
}

#[test]
fn direct_sum_examples() {
    let m = cyc(&z(), 5);
    let s = m.direct_sum(&FpModule::zero(&z())).unwrap();
    assert!(s.module.is_isomorphic(&m));

    let s = cyc(&z(), 2).direct_sum(&cyc(&z(), 3)).unwrap();
    assert_eq!(s.module.orders(), &[6]);
    for i in 0..2 {
        let pi = s.projections[i].compose(&s.injections[i]).unwrap();
        assert!(pi.equals(&s.injections[i].source().identity()));
    }
    let sum = s.injections[0]
        .compose(&s.projections[0])
        .unwrap()
        .add(&s.injections[1].compose(&s.projections[1]).unwrap())
        .unwrap();
    assert!(sum.equals(&s.module.identity()));

    let s = cyc(&zm(4), 2).direct_sum(&cyc(&zm(4), 2)).unwrap();
    assert_eq!(s.module.canonicalize().invariant_factors, vec![2, 2]);
}

#[test]
fn tensor_examples() {
    assert!(cyc(&z(), 2).tensor(&cyc(&z(), 3)).unwrap().is_zero());
    assert_eq!(cyc(&z(), 4).tensor(&cyc(&z(), 6)).unwrap().orders(), &[2]);
    let m = module(&z(), 2, 1, &[2, 4]);
    let r = FpModule::free(&z(), 1);
    assert!(r.tensor(&m).unwrap().is_isomorphic(&m));
}

#[test]
fn hom_examples() {
    let h = hom_module(&cyc(&z(), 2), &cyc(&z(), 4)).unwrap();
    assert_eq!(h.module().orders(), &[2]);
    let maps = h.enumerate(100).unwrap();
    let images: Vec<i64> = maps
        .iter()
        .map(|f| cyc(&z(), 4).canonical_coords(&f.apply(&[1]))[0])
        .collect();
    assert_eq!(images, vec![0, 2]);

    let m = module(&zm(6), 2, 1, &[2, 3]);
    let h = hom_module(&FpModule::free(&zm(6), 1), &m).unwrap();
    assert!(h.module().is_isomorphic(&m));

    assert!(hom_module(&cyc(&z(), 2), &cyc(&z(), 3)).unwrap().module().is_zero());
}

#[test]
fn hom_over_z_with_free_parts() {
    // Hom(Z + Z/4, Z + Z/6) = Z + Z/6 + 0 + Z/2
    let m = module(&z(), 2, 1, &[0, 4]);
    let n = module(&z(), 2, 1, &[0, 6]);
    let h = hom_module(&m, &n).unwrap();
    let mut orders = h.generator_orders();
    orders.sort();
    assert_eq!(orders, vec![0, 2, 6]);
    for f in h.generators() {
        assert!(f.is_well_defined());
        let c = h.encode(&f).unwrap();
        assert!(h.decode(&c).equals(&f));
    }
}

#[test]
fn transpose_examples() {
    assert_eq!(cyc(&z(), 2).transpose().orders(), &[2]);
    let r = FpModule::<i64>::free(&z(), 1);
    assert!(r.transpose().is_isomorphic(&r));
    // coker(x -> (2x, 0)) = Z/2 + Z, transpose coker((a, b) -> 2a) = Z/2
    let u = module(&z(), 2, 1, &[2, 0]);
    assert_eq!(u.canonicalize().invariant_factors, vec![2]);
    assert_eq!(u.canonicalize().free_rank, 1);
    assert_eq!(u.transpose().orders(), &[2]);
}

#[test]
fn enumeration_examples() {
    let m = cyc(&z(), 2).direct_sum(&cyc(&z(), 2)).unwrap().module;
    assert_eq!(m.enumerate_elements(100).unwrap().count(), 4);
    assert_eq!(FpModule::<i64>::zero(&z()).enumerate_elements(1).unwrap().count(), 1);
    let m = module(&z(), 2, 2, &[2, 0, 0, 3]);
    let els: Vec<Vec<i64>> = m.enumerate_elements(100).unwrap().collect();
    assert_eq!(els.len(), 6);
    for (i, a) in els.iter().enumerate() {
        for b in &els[i + 1..] {
            assert!(!m.elements_equal(a, b));
        }
    }
    assert!(matches!(
        FpModule::<i64>::free(&z(), 1).enumerate_elements(10),
        Err(crate::Error::InfiniteModule)
    ));
    assert!(matches!(
        cyc(&zm(8), 0).enumerate_elements(4),
        Err(crate::Error::ScaleExceeded { .. })
    ));
}

#[test]
fn submodule_and_quotient() {
    let b = cyc(&zm(4), 0);
    let g = IntMatrix::from_i64(1, 1, &[2]);
    let (a, incl) = b.submodule(&g).unwrap();
    let (c, proj) = b.quotient(&g).unwrap();
    assert_eq!(a.orders(), &[2]);
    assert_eq!(c.orders(), &[2]);
    assert!(incl.is_injective());
    assert!(proj.is_surjective());
    assert!(proj.compose(&incl).unwrap().is_zero());
}

#[test]
fn non_maps_are_rejected() {
    let r = ModuleMap::new(cyc(&z(), 2), cyc(&z(), 4), IntMatrix::from_i64(1, 1, &[1]));
    assert!(matches!(r, Err(crate::Error::NotWellDefined(_))));
}

fn small_module(ring: RingSpec<i64>, n: usize, k: usize, entries: Vec<i64>) -> FpModule<i64> {
    let bound = match ring {
        RingSpec::Integers => 7,
        RingSpec::IntegersMod(m) => m,
    };
    let e: Vec<i64> = entries.iter().take(n * k).map(|x| x % bound).collect();
    let mut rel = IntMatrix::from_vec(n, k, e);
    if let RingSpec::Integers = ring {
        // keep it finite
        rel = rel.hstack(&IntMatrix::identity(n).scale(&6));
    }
    FpModule::new(ring, n, rel).unwrap()
}

fn arb_ring() -> impl Strategy<Value = RingSpec<i64>> {
    prop_oneof![
        Just(RingSpec::Integers),
        Just(RingSpec::IntegersMod(4)),
        Just(RingSpec::IntegersMod(6)),
        Just(RingSpec::IntegersMod(8)),
    ]
}

fn arb_module(ring: RingSpec<i64>) -> impl Strategy<Value = FpModule<i64>> {
    (1usize..3, 0usize..3, proptest::collection::vec(0i64..100, 6))
        .prop_map(move |(n, k, e)| small_module(ring.clone(), n, k, e))
}

fn arb_pair() -> impl Strategy<Value = (FpModule<i64>, FpModule<i64>)> {
    arb_ring().prop_flat_map(|r| (arb_module(r.clone()), arb_module(r)))
}

fn arb_triple() -> impl Strategy<Value = (FpModule<i64>, FpModule<i64>, FpModule<i64>)> {
    arb_ring().prop_flat_map(|r| (arb_module(r.clone()), arb_module(r.clone()), arb_module(r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_matches_brute_force((m, n) in arb_pair()) {
        prop_assume!(n.order().unwrap() <= 64 && m.gens() <= 2);
        let h = hom_module(&m, &n).unwrap();
        prop_assert_eq!(h.module().order().unwrap(), brute_hom_count(&m, &n) as i64);
        for f in h.generators() {
            prop_assert!(f.is_well_defined());
        }
    }

    #[test]
    fn hom_tensor_adjunction_cardinality((m, n, p) in arb_triple()) {
        let lhs = hom_module(&m.tensor(&n).unwrap(), &p).unwrap().module().order();
        let inner = hom_module(&n, &p).unwrap().module().clone();
        let rhs = hom_module(&m, &inner).unwrap().module().order();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn functors_respect_identity_and_composition((m, n) in arb_pair()) {
        let idm = m.identity();
        let idn = n.identity();
        prop_assert!(idm.tensor(&idn).unwrap().equals(&m.tensor(&n).unwrap().identity()));
        let hmn = hom_module(&m, &n).unwrap();
        let post = hmn.post_compose(&idn, &hmn).unwrap();
        prop_assert!(post.equals(&hmn.module().identity()));
        // composition: Hom(M, f) for f, g endomorphisms of N
        let endo = hom_module(&n, &n).unwrap().generators();
        if endo.len() >= 2 {
            let (f, g) = (&endo[0], &endo[endo.len() - 1]);
            let gf = g.compose(f).unwrap();
            let a = hmn.post_compose(&gf, &hmn).unwrap();
            let b = hmn.post_compose(g, &hmn).unwrap()
                .compose(&hmn.post_compose(f, &hmn).unwrap()).unwrap();
            prop_assert!(a.equals(&b));
            let t1 = gf.tensor(&idm).unwrap();
            let t2 = g.tensor(&idm).unwrap().compose(&f.tensor(&idm).unwrap()).unwrap();
            prop_assert!(t1.equals(&t2));
        }
    }

    #[test]
    fn canonical_form_is_idempotent((m, _n) in arb_pair()) {
        let c = m.canonical_module();
        prop_assert_eq!(c.orders(), m.orders());
        let cc = c.canonical_module();
        prop_assert_eq!(cc.orders(), c.orders());
        prop_assert!(m.canonicalize().verify());
    }

    #[test]
    fn double_transpose_keeps_torsion((m, _n) in arb_pair()) {
        let tt = m.transpose().transpose();
        prop_assert_eq!(
            tt.canonicalize().invariant_factors,
            m.canonicalize().invariant_factors
        );
    }

    #[test]
    fn encode_decode_round_trip((m, n) in arb_pair(), pick in 0usize..1000) {
        let h = hom_module(&m, &n).unwrap();
        if let Ok(all) = h.enumerate(512) {
            let f = &all[pick % all.len()];
            let c = h.encode(f).unwrap();
            prop_assert!(h.decode(&c).equals(f));
        }
    }
}
