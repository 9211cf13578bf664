use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::scale;
use crate::linalg::{kernel_basis, lattice_basis, smith_normal_form, IntMatrix, RingSpec};
use crate::scalar::{reduce, Scalar};
use crate::{Error, Result};

use super::map::ModuleMap;

/// Invariant-factor coordinates of a module.
///
/// `orders[i]` is the order of the `i`-th cyclic summand (`0` for a copy of
/// `Z`); `to_can` maps generator coordinates to summand coordinates and
/// `from_can` maps back.
#[derive(Debug, Clone)]
pub(crate) struct Canonical<T> {
    pub orders: Vec<T>,
    pub to_can: IntMatrix<T>,
    pub from_can: IntMatrix<T>,
}

/// The cokernel of `relations: R^k -> R^n` (columns are relations).
#[derive(Clone)]
pub struct FpModule<T> {
    ring: RingSpec<T>,
    gens: usize,
    relations: IntMatrix<T>,
    canon: Arc<OnceLock<Canonical<T>>>,
}

impl<T: PartialEq> PartialEq for FpModule<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens && self.relations == other.relations
    }
}

impl<T: Eq> Eq for FpModule<T> {}

impl<T: fmt::Debug> fmt::Debug for FpModule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {:?} over {:?}", self.relations, self.ring)
    }
}

impl<T: Scalar> fmt::Display for FpModule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .orders()
            .iter()
            .map(|d| match (&self.ring, d.is_zero()) {
                (RingSpec::Integers, true) => "Z".to_string(),
                _ => format!("Z/{d}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<T: Scalar> FpModule<T> {
    /// `relations` must have `gens` rows. Entries are reduced over `Z/m`.
    pub fn new(ring: RingSpec<T>, gens: usize, relations: IntMatrix<T>) -> Result<Self> {
        if relations.rows() != gens {
            return Err(Error::Shape(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                gens
            )));
        }
        let relations = relations.reduce_mod(&ring.characteristic());
        Ok(Self {
            ring,
            gens,
            relations,
            canon: Arc::new(OnceLock::new()),
        })
    }

    pub(crate) fn from_parts(ring: &RingSpec<T>, relations: IntMatrix<T>) -> Self {
        let gens = relations.rows();
        Self::new(ring.clone(), gens, relations).expect("shape is consistent by construction")
    }

    pub fn zero(ring: &RingSpec<T>) -> Self {
        Self::from_parts(ring, IntMatrix::zeros(0, 0))
    }

    /// `R^n` with `n` zero relations.
    pub fn free(ring: &RingSpec<T>, n: usize) -> Self {
        Self::from_parts(ring, IntMatrix::zeros(n, n))
    }

    /// `R/(d)` presented by the single relation `d`.
    pub fn cyclic(ring: &RingSpec<T>, d: T) -> Self {
        Self::from_parts(ring, IntMatrix::from_vec(1, 1, vec![d]))
    }

    /// `R/(d_1) + ... + R/(d_n)` with a square diagonal presentation.
    pub fn from_orders(ring: &RingSpec<T>, orders: &[T]) -> Self {
        let n = orders.len();
        Self::from_parts(ring, IntMatrix::diagonal(n, n, orders))
    }

    pub fn ring(&self) -> &RingSpec<T> {
        &self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix<T> {
        &self.relations
    }

    /// Integer lattice of relations: the stored ones plus `m·e_i` over `Z/m`.
    pub fn lattice(&self) -> IntMatrix<T> {
        match &self.ring {
            RingSpec::Integers => self.relations.clone(),
            RingSpec::IntegersMod(m) => self.relations.hstack(&IntMatrix::identity(self.gens).scale(m)),
        }
    }

    pub(crate) fn canon(&self) -> &Canonical<T> {
        self.canon.get_or_init(|| compute_canonical(self))
    }

    /// Orders of the cyclic summands in invariant-factor order; `0` is a copy of `Z`.
    pub fn orders(&self) -> &[T] {
        &self.canon().orders
    }

    pub fn is_zero(&self) -> bool {
        self.orders().is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.orders().iter().all(|d| !d.is_zero())
    }

    /// Cardinality, or `None` for an infinite module.
    pub fn order(&self) -> Option<T> {
        let mut n = T::one();
        for d in self.orders() {
            if d.is_zero() {
                return None;
            }
            n = n * d.clone();
        }
        Some(n)
    }

    /// Least positive `e` with `e·M = 0`, or `None` if `M` has a free summand over `Z`.
    pub fn exponent(&self) -> Option<T> {
        self.orders()
            .iter()
            .try_fold(T::one(), |acc, d| (!d.is_zero()).then(|| acc.lcm(d)))
    }

    /// Summand coordinates of `x`, each reduced modulo its order.
    pub fn canonical_coords(&self, x: &[T]) -> Vec<T> {
        let c = self.canon();
        c.to_can
            .mul_vec(x)
            .iter()
            .zip(&c.orders)
            .map(|(v, d)| reduce(v, d))
            .collect()
    }

    /// Generator coordinates of the element with summand coordinates `c`.
    pub fn from_canonical_coords(&self, c: &[T]) -> Vec<T> {
        let v = self.canon().from_can.mul_vec(c);
        let m = self.ring.characteristic();
        v.iter().map(|x| reduce(x, &m)).collect()
    }

    /// A fixed representative of the class of `x`.
    pub fn normal_form(&self, x: &[T]) -> Vec<T> {
        self.from_canonical_coords(&self.canonical_coords(x))
    }

    pub fn is_zero_element(&self, x: &[T]) -> bool {
        self.canonical_coords(x).iter().all(|v| v.is_zero())
    }

    pub fn elements_equal(&self, x: &[T], y: &[T]) -> bool {
        let d: Vec<T> = x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect();
        self.is_zero_element(&d)
    }

    pub fn element(&self, coords: Vec<T>) -> Result<ModuleElement<'_, T>> {
        if coords.len() != self.gens {
            return Err(Error::NotAnElement(format!(
                "{} coordinates for {} generators",
                coords.len(),
                self.gens
            )));
        }
        Ok(ModuleElement { parent: self, coords })
    }

    /// Invariant factors, free rank and a verified isomorphism to the canonical module.
    pub fn canonicalize(&self) -> CanonicalForm<T> {
        let c = self.canon();
        let target = self.canonical_module();
        let m = self.ring.characteristic();
        let iso = ModuleMap::new_unchecked(self.clone(), target.clone(), c.to_can.reduce_mod(&m));
        let inverse = ModuleMap::new_unchecked(target, self.clone(), c.from_can.reduce_mod(&m));
        debug_assert!(iso.is_well_defined() && inverse.is_well_defined());
        let free_value = match &self.ring {
            RingSpec::Integers => T::zero(),
            RingSpec::IntegersMod(m) => m.clone(),
        };
        CanonicalForm {
            invariant_factors: c.orders.iter().filter(|d| **d != free_value).cloned().collect(),
            free_rank: c.orders.iter().filter(|d| **d == free_value).count(),
            iso_to_canonical: iso,
            iso_from_canonical: inverse,
        }
    }

    /// `⊕ R/(d_i)` on the canonical orders.
    pub fn canonical_module(&self) -> Self {
        Self::from_orders(&self.ring, self.orders())
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.ring == other.ring && self.orders() == other.orders()
    }

    pub fn identity(&self) -> ModuleMap<T> {
        ModuleMap::identity(self)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<DirectSum<T>> {
        self.same_ring(other)?;
        let module = Self::from_parts(&self.ring, self.relations.block_diag(&other.relations));
        let (a, b) = (self.gens, other.gens);
        let n = a + b;
        let inj1 = IntMatrix::identity(n).select_cols(&(0..a).collect::<Vec<_>>());
        let inj2 = IntMatrix::identity(n).select_cols(&(a..n).collect::<Vec<_>>());
        Ok(DirectSum {
            injections: [
                ModuleMap::new_unchecked(self.clone(), module.clone(), inj1.clone()),
                ModuleMap::new_unchecked(other.clone(), module.clone(), inj2.clone()),
            ],
            projections: [
                ModuleMap::new_unchecked(module.clone(), self.clone(), inj1.transpose()),
                ModuleMap::new_unchecked(module.clone(), other.clone(), inj2.transpose()),
            ],
            module,
        })
    }

    /// Direct sum of a list, with no maps.
    pub fn sum_of(ring: &RingSpec<T>, parts: &[Self]) -> Self {
        let rel = parts
            .iter()
            .fold(IntMatrix::zeros(0, 0), |acc, p| acc.block_diag(&p.relations));
        Self::from_parts(ring, rel)
    }

    /// `M ⊗ N` on generators `e_i ⊗ f_j` (index `i·n_N + j`).
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let left = self.relations.kron(&IntMatrix::identity(other.gens));
        let right = IntMatrix::identity(self.gens).kron(&other.relations);
        Ok(Self::from_parts(&self.ring, left.hstack(&right)))
    }

    /// Coordinates of `x ⊗ y` in [`FpModule::tensor`].
    pub fn tensor_elements(x: &[T], y: &[T]) -> Vec<T> {
        IntMatrix::column_vector(x)
            .kron(&IntMatrix::column_vector(y))
            .entries()
            .to_vec()
    }

    /// `Coker μᵗ` for the stored presentation `μ`.
    pub fn transpose(&self) -> Self {
        Self::from_parts(&self.ring, self.relations.transpose())
    }

    /// The submodule generated by the columns of `gens`, with its inclusion.
    pub fn submodule(&self, gens: &IntMatrix<T>) -> Result<(Self, ModuleMap<T>)> {
        if gens.rows() != self.gens {
            return Err(Error::NotAnElement("generator of wrong length".into()));
        }
        let g = gens.cols();
        let sys = gens.hstack(&self.lattice());
        let ker = kernel_basis(&sys, &RingSpec::Integers);
        let proj = ker.select_rows(&(0..g).collect::<Vec<_>>());
        let rel = lattice_basis(&proj);
        let a = Self::from_parts(&self.ring, rel);
        let m = self.ring.characteristic();
        let incl = ModuleMap::new_unchecked(a.clone(), self.clone(), gens.reduce_mod(&m));
        Ok((a, incl))
    }

    /// `M / ⟨gens⟩` on the same generators, with the projection.
    pub fn quotient(&self, gens: &IntMatrix<T>) -> Result<(Self, ModuleMap<T>)> {
        if gens.rows() != self.gens {
            return Err(Error::NotAnElement("generator of wrong length".into()));
        }
        let c = Self::from_parts(&self.ring, self.relations.hstack(gens));
        let proj = ModuleMap::new_unchecked(self.clone(), c.clone(), IntMatrix::identity(self.gens));
        Ok((c, proj))
    }

    /// True if `x` lies in the submodule generated by the columns of `gens`.
    pub fn in_span(&self, gens: &IntMatrix<T>, x: &[T]) -> bool {
        let sys = gens.hstack(&self.lattice());
        crate::linalg::solve_linear(&sys, x, &RingSpec::Integers).is_some()
    }

    /// All elements in lexicographic order of summand coordinates.
    pub fn enumerate_elements(&self, cap: usize) -> Result<ElementIter<'_, T>> {
        let orders = self.orders().to_vec();
        let size = self.order().ok_or(Error::InfiniteModule)?;
        if size > crate::scalar::from_usize(cap) {
            return Err(scale("element enumeration", size, cap));
        }
        Ok(ElementIter {
            module: self,
            counter: Some(vec![T::zero(); orders.len()]),
            orders,
        })
    }

    pub(crate) fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

fn compute_canonical<T: Scalar>(m: &FpModule<T>) -> Canonical<T> {
    let n = m.gens;
    let snf = smith_normal_form(&m.lattice(), &RingSpec::Integers);
    let diag = snf.diagonal();
    let mut orders = Vec::new();
    let mut keep = Vec::new();
    for i in 0..n {
        let d = diag.get(i).cloned().unwrap_or_else(T::zero);
        if !d.is_one() {
            orders.push(d);
            keep.push(i);
        }
    }
    Canonical {
        orders,
        to_can: snf.u.select_rows(&keep),
        from_can: snf.u_inv.select_cols(&keep),
    }
}

/// Result of [`FpModule::canonicalize`].
#[derive(Debug, Clone)]
pub struct CanonicalForm<T> {
    /// Non-unit orders of the torsion-type summands `R/(d)`, `d ≠ 0` and `R/(d) ≇ R`.
    pub invariant_factors: Vec<T>,
    /// Number of summands isomorphic to `R`.
    pub free_rank: usize,
    pub iso_to_canonical: ModuleMap<T>,
    pub iso_from_canonical: ModuleMap<T>,
}

impl<T: Scalar> CanonicalForm<T> {
    /// Re-composes both isomorphisms against identities.
    pub fn verify(&self) -> bool {
        let src = self.iso_to_canonical.source();
        let tgt = self.iso_to_canonical.target();
        self.iso_to_canonical.is_well_defined()
            && self.iso_from_canonical.is_well_defined()
            && self
                .iso_from_canonical
                .compose(&self.iso_to_canonical)
                .is_ok_and(|f| f.equals(&src.identity()))
            && self
                .iso_to_canonical
                .compose(&self.iso_from_canonical)
                .is_ok_and(|f| f.equals(&tgt.identity()))
    }
}

#[derive(Debug, Clone)]
pub struct DirectSum<T> {
    pub module: FpModule<T>,
    pub injections: [ModuleMap<T>; 2],
    pub projections: [ModuleMap<T>; 2],
}

/// An element of a module, compared modulo relations.
#[derive(Debug, Clone)]
pub struct ModuleElement<'a, T> {
    pub parent: &'a FpModule<T>,
    pub coords: Vec<T>,
}

impl<T: Scalar> PartialEq for ModuleElement<'_, T> {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.parent.elements_equal(&self.coords, &other.coords)
    }
}

pub struct ElementIter<'a, T> {
    module: &'a FpModule<T>,
    orders: Vec<T>,
    counter: Option<Vec<T>>,
}

impl<T: Scalar> Iterator for ElementIter<'_, T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        let cur = self.counter.take()?;
        let out = self.module.from_canonical_coords(&cur);
        let mut nxt = cur;
        let mut i = nxt.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            nxt[i] = nxt[i].clone() + T::one();
            if nxt[i] < self.orders[i] {
                self.counter = Some(nxt);
                break;
            }
            nxt[i] = T::zero();
        }
        Some(out)
    }
}

/// Summand-coordinate tuples in the same order as [`ElementIter`].
pub(crate) fn coordinate_tuples<T: Scalar>(orders: &[T], cap: usize) -> Result<Vec<Vec<T>>> {
    let mut size = T::one();
    for d in orders {
        if d.is_zero() {
            return Err(Error::InfiniteModule);
        }
        size = size * d.clone();
    }
    if size > crate::scalar::from_usize(cap) {
        return Err(scale("coordinate enumeration", size, cap));
    }
    let mut out = vec![vec![]];
    for d in orders {
        let mut next = Vec::new();
        for v in &out {
            let mut x = T::zero();
            while x < *d {
                let mut w: Vec<T> = v.clone();
                w.push(x.clone());
                next.push(w);
                x = x + T::one();
            }
        }
        out = next;
    }
    Ok(out)
}
