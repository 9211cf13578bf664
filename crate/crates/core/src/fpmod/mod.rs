//! Finitely presented modules, their maps and the functors on them.

mod hom;
mod map;
mod module;
mod sub;

pub use hom::{enumerate_homs, hom_module, HomModule};
pub use map::ModuleMap;
pub use module::{CanonicalForm, DirectSum, ElementIter, FpModule, ModuleElement};

#[cfg(test)]
mod tests;
