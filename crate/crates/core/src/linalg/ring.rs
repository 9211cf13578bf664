use std::fmt;

use crate::scalar::{reduce, Scalar};
use crate::{Error, Result};

/// The base ring: the integers or a finite cyclic ring `Z/m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec<T> {
    Integers,
    IntegersMod(T),
}

impl<T: Scalar> RingSpec<T> {
    pub fn integers() -> Self {
        RingSpec::Integers
    }

    pub fn modulo(m: T) -> Result<Self> {
        if m < T::one() + T::one() {
            return Err(Error::Invalid(format!("modulus must be at least 2, got {m}")));
        }
        Ok(RingSpec::IntegersMod(m))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, RingSpec::IntegersMod(_))
    }

    /// The modulus, or `0` for the integers.
    pub fn characteristic(&self) -> T {
        match self {
            RingSpec::Integers => T::zero(),
            RingSpec::IntegersMod(m) => m.clone(),
        }
    }

    pub fn modulus(&self) -> Option<&T> {
        match self {
            RingSpec::Integers => None,
            RingSpec::IntegersMod(m) => Some(m),
        }
    }

    /// Canonical representative of a ring element.
    pub fn reduce(&self, a: &T) -> T {
        reduce(a, &self.characteristic())
    }

    pub fn is_unit(&self, a: &T) -> bool {
        match self {
            RingSpec::Integers => a.abs().is_one(),
            RingSpec::IntegersMod(m) => a.gcd(m).is_one(),
        }
    }
}

impl<T: Scalar> fmt::Display for RingSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}
