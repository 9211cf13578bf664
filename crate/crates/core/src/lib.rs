//! Relative purity over `Z` and `Z/m`.
//!
//! Everything is generic over an exact integer [`Scalar`]; the aliases at
//! the crate root fix it to `BigInt`.

pub mod error;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use num_bigint::BigInt;

pub type Ring = linalg::RingSpec<BigInt>;
pub type Matrix = linalg::IntMatrix<BigInt>;

pub mod fpmod;

pub type Module = fpmod::FpModule<BigInt>;
pub type Map = fpmod::ModuleMap<BigInt>;

pub mod classes;
pub mod corpus;
pub mod purity;

pub type Class = classes::ModuleClass<BigInt>;
pub type Ses = purity::ShortExactSequence<BigInt>;

/// Enumeration limits shared by the finite searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest Hom module (or line count) enumerated element by element.
    pub hom: usize,
    /// Largest module whose submodules are listed.
    pub submodules: usize,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            hom: 4096,
            submodules: 64,
            seed: 0,
        }
    }
}

pub mod duality;
pub mod envelopes;
pub mod relhom;
pub mod suite;
