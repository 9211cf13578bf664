//! The integer scalar the whole crate is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer type.
///
/// Implemented for `i64`, `i128` and `num_bigint::BigInt`. Machine integers
/// are convenient for quick experiments but may overflow on large
/// presentations; the crate-root aliases use `BigInt`.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

pub(crate) fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("scalar type cannot represent small integer")
}

pub(crate) fn from_usize<T: Scalar>(v: usize) -> T {
    T::from_usize(v).expect("scalar type cannot represent index")
}

/// Least non-negative residue; `m = 0` leaves `a` unchanged.
pub(crate) fn reduce<T: Scalar>(a: &T, m: &T) -> T {
    if m.is_zero() {
        a.clone()
    } else {
        a.mod_floor(m)
    }
}

/// `true` if `m` divides `a`, with the convention that only `0` is divisible by `0`.
pub(crate) fn divides<T: Scalar>(m: &T, a: &T) -> bool {
    if m.is_zero() {
        a.is_zero()
    } else {
        a.mod_floor(m).is_zero()
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub(crate) fn inv_mod<T: Scalar>(a: &T, m: &T) -> Option<T> {
    let g = a.mod_floor(m).extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

/// A unit `u` of `Z/m` with `a * u = gcd(a, m) (mod m)`.
pub(crate) fn normalizing_unit<T: Scalar>(a: &T, m: &T) -> T {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return T::one();
    }
    let g = a.gcd(m);
    let a1 = a.clone() / g.clone();
    let m1 = m.clone() / g.clone();
    let u0 = if m1.is_one() {
        T::zero()
    } else {
        inv_mod(&a1, &m1).expect("cofactors are coprime")
    };
    // u0 + t*m1 is a unit mod m for some t < g
    let mut t = T::zero();
    loop {
        let u = u0.clone() + t.clone() * m1.clone();
        if u.gcd(m).is_one() {
            return u.mod_floor(m);
        }
        t = t + T::one();
        assert!(t <= g, "no normalizing unit found");
    }
}

/// Prime factorization by trial division, as `(p, e)` pairs in increasing `p`.
pub(crate) fn factorize<T: Scalar>(n: &T) -> Vec<(T, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p: T = int(2);
    while p.clone() * p.clone() <= n {
        let mut e = 0;
        while n.mod_floor(&p).is_zero() {
            n = n / p.clone();
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p = p + T::one();
    }
    if n > T::one() {
        out.push((n, 1));
    }
    out
}

pub(crate) fn pow<T: Scalar>(b: &T, e: u32) -> T {
    let mut r = T::one();
    for _ in 0..e {
        r = r * b.clone();
    }
    r
}

/// All positive divisors of `n > 0`, ascending.
pub(crate) fn divisors<T: Scalar>(n: &T) -> Vec<T> {
    let mut ds = vec![T::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for d in &ds {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q = q * p.clone();
            }
        }
        ds = next;
    }
    ds.sort();
    ds
}
