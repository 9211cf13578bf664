use crate::linalg::IntMatrix;
use crate::scalar::{reduce, Scalar};
use crate::{Error, Result};

use super::module::coordinate_tuples;
use super::{FpModule, ModuleMap};

#[derive(Debug, Clone)]
struct HomGen<T> {
    /// summand of the target
    row: usize,
    /// summand of the source
    col: usize,
    /// image of the source summand generator, in target summand coordinates
    entry: T,
}

/// `Hom(M, N)` as a module, with coordinates for its elements.
///
/// Both modules are read in summand coordinates: `M = ⊕ R/(a_j)`,
/// `N = ⊕ R/(b_i)`, and each pair with `gcd(a_j, b_i) ≠ 1` contributes a
/// cyclic generator `1 ↦ b_i / gcd`.
#[derive(Debug, Clone)]
pub struct HomModule<T> {
    source: FpModule<T>,
    target: FpModule<T>,
    module: FpModule<T>,
    gens: Vec<HomGen<T>>,
    orders: Vec<T>,
}

impl<T: Scalar> HomModule<T> {
    pub fn new(source: &FpModule<T>, target: &FpModule<T>) -> Result<Self> {
        source.same_ring(target)?;
        let a = source.orders();
        let b = target.orders();
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (i, bi) in b.iter().enumerate() {
            for (j, aj) in a.iter().enumerate() {
                if bi.is_zero() {
                    if aj.is_zero() {
                        gens.push(HomGen {
                            row: i,
                            col: j,
                            entry: T::one(),
                        });
                        orders.push(T::zero());
                    }
                    continue;
                }
                let o = aj.gcd(bi);
                if o.is_one() {
                    continue;
                }
                gens.push(HomGen {
                    row: i,
                    col: j,
                    entry: bi.clone() / o.clone(),
                });
                orders.push(o);
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            module: FpModule::from_orders(source.ring(), &orders),
            gens,
            orders,
        })
    }

    pub fn source(&self) -> &FpModule<T> {
        &self.source
    }

    pub fn target(&self) -> &FpModule<T> {
        &self.target
    }

    /// The module structure; its generators are [`HomModule::generators`].
    pub fn module(&self) -> &FpModule<T> {
        &self.module
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    /// Order of each generator (`0` for infinite order).
    pub fn generator_orders(&self) -> Vec<T> {
        self.orders.clone()
    }

    pub fn decode(&self, coords: &[T]) -> ModuleMap<T> {
        assert_eq!(coords.len(), self.gens.len(), "hom coordinates of wrong length");
        let rs = self.target.orders().len();
        let cs = self.source.orders().len();
        let mut h = IntMatrix::zeros(rs, cs);
        for (g, c) in self.gens.iter().zip(coords) {
            h.set(g.row, g.col, g.entry.clone() * c.clone());
        }
        let f = self.target.canon().from_can.mul(&h).mul(&self.source.canon().to_can);
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), f)
    }

    pub fn generator(&self, g: usize) -> ModuleMap<T> {
        let mut c = vec![T::zero(); self.gens.len()];
        c[g] = T::one();
        self.decode(&c)
    }

    pub fn generators(&self) -> Vec<ModuleMap<T>> {
        (0..self.gens.len()).map(|g| self.generator(g)).collect()
    }

    /// Coordinates of a map, reduced modulo generator orders.
    pub fn encode(&self, f: &ModuleMap<T>) -> Result<Vec<T>> {
        if f.source() != &self.source || f.target() != &self.target {
            return Err(Error::Shape("map does not belong to this Hom module".into()));
        }
        let h = f.canonical_matrix();
        let b = self.target.orders();
        let mut out = Vec::with_capacity(self.gens.len());
        for (g, o) in self.gens.iter().zip(&self.orders) {
            let v = reduce(h.get(g.row, g.col), &b[g.row]);
            if !v.mod_floor(&g.entry).is_zero() {
                return Err(Error::NotWellDefined("map is not a homomorphism".into()));
            }
            out.push(reduce(&(v / g.entry.clone()), o));
        }
        Ok(out)
    }

    pub fn is_finite(&self) -> bool {
        self.module.is_finite()
    }

    /// Every homomorphism, in lexicographic coordinate order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<ModuleMap<T>>> {
        coordinate_tuples(&self.orders, cap)
            .map_err(|e| match e {
                Error::ScaleExceeded { needed, cap, .. } => Error::ScaleExceeded {
                    what: "Hom enumeration".into(),
                    needed,
                    cap,
                },
                other => other,
            })
            .map(|tuples| tuples.iter().map(|c| self.decode(c)).collect())
    }

    /// `Hom(M, g): Hom(M, N) -> Hom(M, N')` for `g: N -> N'`, as a map of Hom modules.
    pub fn post_compose(&self, g: &ModuleMap<T>, codomain: &HomModule<T>) -> Result<ModuleMap<T>> {
        let cols: Result<Vec<Vec<T>>> = self
            .generators()
            .iter()
            .map(|f| codomain.encode(&g.compose(f)?))
            .collect();
        Ok(ModuleMap::new_unchecked(
            self.module.clone(),
            codomain.module.clone(),
            IntMatrix::from_cols(codomain.gens.len(), &cols?),
        ))
    }

    /// `Hom(f, N): Hom(M, N) -> Hom(M', N)` for `f: M' -> M`.
    pub fn pre_compose(&self, f: &ModuleMap<T>, codomain: &HomModule<T>) -> Result<ModuleMap<T>> {
        let cols: Result<Vec<Vec<T>>> = self
            .generators()
            .iter()
            .map(|h| codomain.encode(&h.compose(f)?))
            .collect();
        Ok(ModuleMap::new_unchecked(
            self.module.clone(),
            codomain.module.clone(),
            IntMatrix::from_cols(codomain.gens.len(), &cols?),
        ))
    }
}

/// `Hom(M, N)` as a module with decoder.
pub fn hom_module<T: Scalar>(m: &FpModule<T>, n: &FpModule<T>) -> Result<HomModule<T>> {
    HomModule::new(m, n)
}

/// Enumerates `Hom(M, N)` with a cap on its size.
pub fn enumerate_homs<T: Scalar>(m: &FpModule<T>, n: &FpModule<T>, cap: usize) -> Result<Vec<ModuleMap<T>>> {
    HomModule::new(m, n)?.enumerate(cap)
}
