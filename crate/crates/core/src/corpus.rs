//! Seeded random modules, sequences and isomorphisms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fpmod::{FpModule, ModuleMap};
use crate::linalg::{IntMatrix, RingSpec};
use crate::purity::{make_ses, ShortExactSequence};
use crate::scalar::{divisors, int, Scalar};
use crate::Result;

pub type CorpusRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CorpusRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rings used by the standard corpus.
pub fn standard_rings<T: Scalar>() -> Vec<RingSpec<T>> {
    let mut v = vec![RingSpec::Integers];
    for m in [2, 4, 6, 8, 9, 12] {
        v.push(RingSpec::IntegersMod(int(m)));
    }
    v
}

/// A random square unimodular matrix: a few elementary operations and a permutation.
pub fn unimodular<T: Scalar>(rng: &mut CorpusRng, n: usize) -> IntMatrix<T> {
    let mut u = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            u = u.scale(&-T::one());
        }
        return u;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c: i64 = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, int(c));
        u = e.mul(&u);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    u.select_rows(&perm)
}

/// Invariant-factor list with product at most `max_order` (free summands over `Z` excluded from the product).
fn random_orders<T: Scalar>(rng: &mut CorpusRng, ring: &RingSpec<T>, max_order: u64) -> Vec<T> {
    let summands = rng.gen_range(1..=3);
    let mut out = Vec::new();
    let mut size: u64 = 1;
    match ring {
        RingSpec::IntegersMod(m) => {
            let ds: Vec<u64> = divisors(m)
                .into_iter()
                .filter_map(|d| d.to_u64())
                .filter(|d| *d > 1)
                .collect();
            for _ in 0..summands {
                let d = *ds.choose(rng).expect("modulus at least 2");
                if size * d <= max_order {
                    size *= d;
                    out.push(int(d as i64));
                }
            }
        }
        RingSpec::Integers => {
            if rng.gen_bool(0.25) {
                out.push(T::zero());
            }
            for _ in 0..summands {
                let d: u64 = rng.gen_range(2..=16);
                if size * d <= max_order {
                    size *= d;
                    out.push(int(d as i64));
                }
            }
        }
    }
    out
}

/// A module given by random invariant factors behind a scrambled presentation,
/// sometimes with one redundant generator.
pub fn random_module<T: Scalar>(rng: &mut CorpusRng, ring: &RingSpec<T>, max_order: u64) -> FpModule<T> {
    let orders = random_orders(rng, ring, max_order);
    let n = orders.len();
    let mut rel = IntMatrix::diagonal(n, n, &orders);
    let mut gens = n;
    if rng.gen_bool(0.3) {
        // y = Σ c_i x_i as an extra generator
        let c: Vec<T> = (0..n).map(|_| int(rng.gen_range(0..4))).collect();
        let mut extra = c.iter().map(|v| -v.clone()).collect::<Vec<_>>();
        extra.push(T::one());
        rel = rel
            .vstack(&IntMatrix::zeros(1, n))
            .hstack(&IntMatrix::from_cols(n + 1, &[extra]));
        gens += 1;
    }
    let u = unimodular(rng, gens);
    let v = unimodular(rng, rel.cols());
    FpModule::new(ring.clone(), gens, u.mul(&rel).mul(&v)).expect("shape")
}

/// A random element of `m` (free coordinates drawn from a small window).
pub fn random_element<T: Scalar>(rng: &mut CorpusRng, m: &FpModule<T>) -> Vec<T> {
    let c: Vec<T> = m
        .orders()
        .iter()
        .map(|d| {
            if d.is_zero() {
                int(rng.gen_range(-3..=3))
            } else {
                let top = d.to_i64().unwrap_or(i64::MAX);
                int(rng.gen_range(0..top))
            }
        })
        .collect();
    m.from_canonical_coords(&c)
}

/// `B` random, `A` generated by 0 to 2 random elements or small multiples of them.
pub fn random_ses<T: Scalar>(rng: &mut CorpusRng, ring: &RingSpec<T>, max_order: u64) -> Result<ShortExactSequence<T>> {
    let b = random_module(rng, ring, max_order);
    let k = rng.gen_range(0..=2);
    let cols: Vec<Vec<T>> = (0..k)
        .map(|_| {
            // multiples are less often direct summands
            let f: T = int(*[1, 2, 2, 3].choose(rng).expect("nonempty"));
            random_element(rng, &b).into_iter().map(|x| x * f.clone()).collect()
        })
        .collect();
    make_ses(&b, &IntMatrix::from_cols(b.gens(), &cols))
}

/// A random isomorphism `m → m'` changing generators by a unimodular matrix.
pub fn random_iso<T: Scalar>(rng: &mut CorpusRng, m: &FpModule<T>) -> ModuleMap<T> {
    let u = unimodular(rng, m.gens());
    let target = FpModule::new(m.ring().clone(), m.gens(), u.mul(m.relations())).expect("shape");
    ModuleMap::new(m.clone(), target, u).expect("unimodular change of generators")
}

/// `size` sequences cycling through `rings`, all `B` of order at most `max_order`.
pub fn ses_corpus<T: Scalar>(
    seed: u64,
    size: usize,
    rings: &[RingSpec<T>],
    max_order: u64,
) -> Result<Vec<ShortExactSequence<T>>> {
    let mut r = rng(seed);
    (0..size)
        .map(|i| random_ses(&mut r, &rings[i % rings.len()], max_order))
        .collect()
}

/// `size` finite modules cycling through the finite rings of `rings` (and `Z`, kept finite).
pub fn module_corpus<T: Scalar>(seed: u64, size: usize, rings: &[RingSpec<T>], max_order: u64) -> Vec<FpModule<T>> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < size {
        let m = random_module(&mut r, &rings[i % rings.len()], max_order);
        i += 1;
        if m.is_finite() {
            out.push(m);
        }
    }
    out
}

/// Every module `⊕ R/(d_i)` over `Z/m` of order at most `max_order`, as divisor chains `d_1 | d_2 | ...`.
pub fn all_modules<T: Scalar>(ring: &RingSpec<T>, max_order: u64) -> Result<Vec<FpModule<T>>> {
    let m = ring.modulus().ok_or(crate::Error::InfiniteRing)?;
    let ds: Vec<u64> = divisors(m)
        .into_iter()
        .filter_map(|d| d.to_u64())
        .filter(|d| *d > 1)
        .collect();
    let mut out = vec![FpModule::zero(ring)];
    let mut chains: Vec<(Vec<u64>, u64)> = vec![(Vec::new(), 1)];
    while let Some((chain, size)) = chains.pop() {
        for &d in &ds {
            let ok = chain.last().is_none_or(|l| d % l == 0) && size * d <= max_order;
            if ok {
                let mut c = chain.clone();
                c.push(d);
                let orders: Vec<T> = c.iter().map(|x| int(*x as i64)).collect();
                out.push(FpModule::from_orders(ring, &orders));
                chains.push((c, size * d));
            }
        }
    }
    out.sort_by_key(|m| {
        (
            m.order().and_then(|o| o.to_u64()).unwrap_or(u64::MAX),
            m.orders().iter().map(|d| d.to_u64().unwrap_or(0)).collect::<Vec<_>>(),
        )
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut r = rng(7);
        for n in 0..4 {
            let u: IntMatrix<i64> = unimodular(&mut r, n);
            assert_eq!(u.determinant().abs(), 1);
        }
    }

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let rings = standard_rings::<i64>();
        let a = ses_corpus(3, 40, &rings, 256).unwrap();
        let b = ses_corpus(3, 40, &rings, 256).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.b().relations(), y.b().relations());
            assert_eq!(x.incl().matrix(), y.incl().matrix());
            if let Some(o) = x.b().order() {
                assert!(o <= 256);
            }
        }
        let nontrivial = a.iter().filter(|s| !s.a().is_zero() && !s.c().is_zero()).count();
        assert!(nontrivial > 5);
    }

    #[test]
    fn all_modules_over_z4() {
        let ms = all_modules::<i64>(&RingSpec::IntegersMod(4), 16).unwrap();
        let orders: Vec<Vec<i64>> = ms.iter().map(|m| m.orders().to_vec()).collect();
        assert_eq!(orders.len(), 9);
        assert!(orders.contains(&vec![2, 4]));
        assert!(orders.contains(&vec![2, 2, 2, 2]));
        assert!(orders.contains(&vec![4, 4]));
    }

    #[test]
    fn random_iso_is_iso() {
        let mut r = rng(11);
        for ring in standard_rings::<i64>() {
            let m = random_module(&mut r, &ring, 64);
            let f = random_iso(&mut r, &m);
            assert!(f.is_isomorphism());
            assert!(f.target().is_isomorphic(&m));
        }
    }
}
