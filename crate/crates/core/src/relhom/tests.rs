use super::*;
use crate::classes::{generate_class, ClassBounds, ClassKind};

fn zm(m: i64) -> RingSpec<i64> {
    RingSpec::IntegersMod(m)
}

fn caps() -> Caps {
    Caps::default()
}

fn fp_class(m: i64) -> ModuleClass<i64> {
    let r = zm(m);
    generate_class(&r, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&r)).unwrap()
}

#[test]
fn precover_examples() {
    let r = zm(4);
    let free = ModuleClass::free(&r);
    let p = precover(&FpModule::zero(&r), &free, &caps()).unwrap();
    assert!(p.module.is_zero());

    let z2 = FpModule::cyclic(&r, 2);
    let p = precover(&z2, &free, &caps()).unwrap();
    assert_eq!(p.module.orders(), &[4]);
    assert!(!is_s_pure_projective(&z2, &free, &caps()).unwrap().projective);

    let v = is_s_pure_projective(&z2, &fp_class(4), &caps()).unwrap();
    assert!(v.projective);
    let s = v.section.unwrap();
    assert!(v.precover.map.compose(&s).unwrap().equals(&z2.identity()));
}

#[test]
fn period_one_resolution() {
    let r = zm(4);
    let free = ModuleClass::free(&r);
    let z2 = FpModule::cyclic(&r, 2);
    let res = resolve(&z2, &free, 3, &caps()).unwrap();
    assert_eq!(res.dimension, Dim::AtLeast(4));
    assert_eq!(res.terms.len(), 4);
    for t in &res.terms {
        assert_eq!(t.orders(), &[4]);
    }
    for d in &res.differentials {
        // multiplication by 2 on Z/4
        assert_eq!(d.image().0.orders(), &[2]);
        assert_eq!(d.kernel().0.orders(), &[2]);
    }
    let cores = coresolve(&z2, &free, 2, &caps()).unwrap();
    for t in &cores.terms {
        assert_eq!(t.orders(), &[4]);
    }
    assert_eq!(cores.dimension, Dim::AtLeast(3));
}

#[test]
fn ext_examples() {
    let r = zm(4);
    let free = ModuleClass::free(&r);
    let z2 = FpModule::cyclic(&r, 2);
    let e = rel_ext(&z2, &z2, &free, 1, &caps()).unwrap();
    assert_eq!(e.via_projective.orders(), &[2]);
    let e = rel_ext(&z2, &z2, &fp_class(4), 1, &caps()).unwrap();
    assert!(e.via_projective.is_zero() && e.via_injective.is_zero());

    let z4 = FpModule::cyclic(&r, 4);
    let e = rel_ext(&z2, &z4, &free, 0, &caps()).unwrap();
    let hom = HomModule::new(&z2, &z4).unwrap();
    assert!(e.via_projective.is_isomorphic(hom.module()));
}

#[test]
fn homology_of_a_short_complex() {
    // Z/4 -2-> Z/4 -2-> Z/4 is exact; 0 -> Z/4 -2-> Z/4 leaves ker = 2Z/4
    let r = zm(4);
    let z4 = FpModule::cyclic(&r, 4);
    let two = ModuleMap::new(z4.clone(), z4.clone(), IntMatrix::from_i64(1, 1, &[2])).unwrap();
    assert!(homology(&two, &two).unwrap().is_zero());
    assert_eq!(homology(&ModuleMap::zero(&z4, &z4), &two).unwrap().orders(), &[2]);
    let id = z4.identity();
    assert!(homology(&ModuleMap::zero(&z4, &z4), &id).unwrap().is_zero());
    assert!(homology(&id, &two).is_err());
}

#[test]
fn dims_examples() {
    let d = pure_dims(&zm(4), &fp_class(4), 16, 4, &caps()).unwrap();
    assert_eq!(d.global_projective, Dim::Exact(0));
    assert_eq!(d.global_injective, Dim::Exact(0));
    let d = pure_dims(&zm(2), &ModuleClass::free(&zm(2)), 8, 2, &caps()).unwrap();
    assert_eq!(d.global_projective, Dim::Exact(0));
    let d = pure_dims(&zm(4), &ModuleClass::free(&zm(4)), 4, 4, &caps()).unwrap();
    let z2 = d.rows.iter().find(|r| r.module.orders() == [2]).unwrap();
    assert_eq!(z2.projective, Dim::AtLeast(4));
    assert_eq!(z2.injective, Dim::AtLeast(4));
    assert!(d.consistent());
}

#[test]
fn ext_is_stable_in_resolution_depth() {
    let r = zm(4);
    let free = ModuleClass::free(&r);
    let z2 = FpModule::cyclic(&r, 2);
    let a = resolve(&z2, &free, 2, &caps()).unwrap();
    let b = resolve(&z2, &free, 4, &caps()).unwrap();
    for n in 0..2 {
        let x = ext_via_projective(&a, &z2, n).unwrap();
        let y = ext_via_projective(&b, &z2, n).unwrap();
        assert!(x.is_isomorphic(&y));
    }
}

#[test]
fn dimension_matches_ext_vanishing() {
    for (m, class) in [
        (4, ModuleClass::free(&zm(4))),
        (8, ModuleClass::free(&zm(8))),
        (6, ModuleClass::free(&zm(6))),
    ] {
        let ring = zm(m);
        let corpus = all_modules(&ring, 8).unwrap();
        for x in &corpus {
            let res = resolve(x, &class, 2, &caps()).unwrap();
            if let Dim::Exact(d) = res.dimension {
                for l in &corpus {
                    assert!(rel_ext(x, l, &class, d + 1, &caps()).unwrap().via_projective.is_zero());
                }
            }
            let n = match res.dimension {
                Dim::Exact(d) => d,
                Dim::AtLeast(d) => d,
            };
            if n >= 1 {
                // Ext^n(M, Ω_n) ≠ 0 once Ω_{n-1} is not pure projective
                let omega = res.syzygies[n - 1].source();
                assert!(!rel_ext(x, omega, &class, n, &caps()).unwrap().via_projective.is_zero() || omega.is_zero());
            }
        }
    }
}
