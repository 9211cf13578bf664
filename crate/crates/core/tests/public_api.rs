use spure::classes::{generate_class, ClassBounds, ClassKind, ModuleClass};
use spure::envelopes::{envelope, is_s_pure_injective};
use spure::linalg::{IntMatrix, RingSpec};
use spure::purity::{make_ses, purity_cross_check};
use spure::relhom::{pure_dims, rel_ext, Dim};
use spure::{BigInt, Caps, Module, Ring, Scalar};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn readme_example() -> spure::Result<()> {
    let ring = Ring::IntegersMod(big(4));
    let z2 = Module::cyclic(&ring, big(2));
    let free = generate_class(&ring, ClassKind::CyclicFree, ClassBounds::standard(&ring))?;
    let e = envelope(&z2, &free, &Caps::default())?;
    assert_eq!(e.envelope.orders(), [big(4)]);
    assert!(e.report.all_pass());
    Ok(())
}

#[test]
fn doubling_on_z_is_not_pure_for_z2() -> spure::Result<()> {
    let z = Ring::Integers;
    let b = Module::free(&z, 1);
    let seq = make_ses(&b, &IntMatrix::from_vec(1, 1, vec![big(2)]))?;
    let class = ModuleClass::explicit(&z, vec![Module::cyclic(&z, big(2))])?;
    let x = purity_cross_check(&seq, &class, 4096)?;
    assert!(!x.pure());
    assert!(x.verdicts.iter().all(|v| !v.pure && v.verify(&seq, &class)));
    Ok(())
}

/// Same answers from machine integers and big integers.
fn summary<T: Scalar>(m: i64) -> spure::Result<(Vec<String>, Vec<bool>, String, String)> {
    let ring = RingSpec::IntegersMod(T::from_i64(m).unwrap());
    let fp = generate_class(&ring, ClassKind::FinitelyPresentedBounded, ClassBounds::standard(&ring))?;
    let free = ModuleClass::free(&ring);
    let two = spure::fpmod::FpModule::<T>::cyclic(&ring, T::from_i64(2).unwrap());
    let env = envelope(&two, &free, &Caps::default())?.envelope.to_string();
    let inj = spure::corpus::all_modules(&ring, 16)?
        .iter()
        .map(|x| is_s_pure_injective(x, &free, &Caps::default()).map(|v| v.injective))
        .collect::<spure::Result<Vec<_>>>()?;
    let ext = rel_ext(&two, &two, &free, 2, &Caps::default())?
        .via_projective
        .to_string();
    Ok((fp.members.iter().map(|u| u.to_string()).collect(), inj, env, ext))
}

#[test]
fn scalar_types_agree() -> spure::Result<()> {
    for m in [4, 6, 8] {
        assert_eq!(summary::<i64>(m)?, summary::<BigInt>(m)?);
    }
    Ok(())
}

#[test]
fn dimensions_over_z4() -> spure::Result<()> {
    let ring = Ring::IntegersMod(big(4));
    let free = ModuleClass::free(&ring);
    let d = pure_dims(&ring, &free, 16, 4, &Caps::default())?;
    assert_eq!(d.global_projective, Dim::AtLeast(4));
    assert!(d.consistent());
    Ok(())
}

#[test]
fn large_moduli_stay_exact() -> spure::Result<()> {
    // 2^70 overflows i64
    let m: BigInt = BigInt::from(1u8) << 70;
    let ring = Ring::IntegersMod(m.clone());
    let half = Module::cyclic(&ring, &m / 2);
    let free = ModuleClass::free(&ring);
    let e = envelope(&half, &free, &Caps::default())?;
    assert_eq!(e.envelope.orders(), [m]);
    Ok(())
}
