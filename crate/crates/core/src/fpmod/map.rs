use crate::linalg::{kernel_basis, solve_linear, IntMatrix, RingSpec};
use crate::scalar::Scalar;
use crate::{Error, Result};

use super::FpModule;

/// A homomorphism given by images of source generators (columns of `matrix`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap<T> {
    source: FpModule<T>,
    target: FpModule<T>,
    matrix: IntMatrix<T>,
}

impl<T: Scalar> ModuleMap<T> {
    /// Checks shape and that relations of the source go to zero.
    pub fn new(source: FpModule<T>, target: FpModule<T>, matrix: IntMatrix<T>) -> Result<Self> {
        source.same_ring(&target)?;
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.gens(),
                source.gens()
            )));
        }
        let f = Self::new_unchecked(source, target, matrix);
        if !f.is_well_defined() {
            return Err(Error::NotWellDefined(format!("{:?}", f.matrix)));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: FpModule<T>, target: FpModule<T>, matrix: IntMatrix<T>) -> Self {
        debug_assert_eq!(matrix.rows(), target.gens());
        debug_assert_eq!(matrix.cols(), source.gens());
        let matrix = matrix.reduce_mod(&source.ring().characteristic());
        Self { source, target, matrix }
    }

    pub fn identity(m: &FpModule<T>) -> Self {
        Self::new_unchecked(m.clone(), m.clone(), IntMatrix::identity(m.gens()))
    }

    pub fn zero(source: &FpModule<T>, target: &FpModule<T>) -> Self {
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            IntMatrix::zeros(target.gens(), source.gens()),
        )
    }

    pub fn source(&self) -> &FpModule<T> {
        &self.source
    }

    pub fn target(&self) -> &FpModule<T> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix<T> {
        &self.matrix
    }

    pub fn is_well_defined(&self) -> bool {
        self.matrix
            .mul(self.source.relations())
            .columns()
            .iter()
            .all(|c| self.target.is_zero_element(c))
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let m = self.source.ring().characteristic();
        self.matrix
            .mul_vec(x)
            .iter()
            .map(|v| crate::scalar::reduce(v, &m))
            .collect()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::Shape("maps are not composable".into()));
        }
        Ok(Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            self.matrix.mul(&first.matrix),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.sub(&other.matrix),
        ))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(s))
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("maps have different source or target".into()));
        }
        Ok(())
    }

    /// Same homomorphism (images agree modulo target relations).
    pub fn equals(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self
                .matrix
                .sub(&other.matrix)
                .columns()
                .iter()
                .all(|c| self.target.is_zero_element(c))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_element(c))
    }

    /// Generators of the kernel, in source coordinates.
    pub fn kernel_gens(&self) -> IntMatrix<T> {
        let n = self.source.gens();
        let sys = self.matrix.hstack(&self.target.lattice());
        let ker = kernel_basis(&sys, &RingSpec::Integers);
        let proj = ker.select_rows(&(0..n).collect::<Vec<_>>());
        let cols: Vec<Vec<T>> = proj
            .columns()
            .into_iter()
            .map(|c| self.source.normal_form(&c))
            .filter(|c| c.iter().any(|v| !v.is_zero()))
            .collect();
        IntMatrix::from_cols(n, &cols)
    }

    /// A nonzero kernel element, if there is one.
    pub fn kernel_witness(&self) -> Option<Vec<T>> {
        self.kernel_gens().columns().into_iter().next()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_witness().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn kernel(&self) -> (FpModule<T>, ModuleMap<T>) {
        self.source
            .submodule(&self.kernel_gens())
            .expect("kernel generators have source length")
    }

    pub fn image(&self) -> (FpModule<T>, ModuleMap<T>) {
        self.target
            .submodule(&self.matrix)
            .expect("image generators have target length")
    }

    pub fn cokernel(&self) -> FpModule<T> {
        self.target
            .quotient(&self.matrix)
            .expect("image generators have target length")
            .0
    }

    /// `self ⊗ other` on the tensor presentations.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self::new_unchecked(
            self.source.tensor(&other.source)?,
            self.target.tensor(&other.target)?,
            self.matrix.kron(&other.matrix),
        ))
    }

    /// Matrix in summand coordinates of source and target.
    pub fn canonical_matrix(&self) -> IntMatrix<T> {
        let s = self.source.canon();
        let t = self.target.canon();
        let h = t.to_can.mul(&self.matrix).mul(&s.from_can);
        let rows: Vec<Vec<T>> = (0..h.rows())
            .map(|i| {
                h.row(i)
                    .iter()
                    .map(|v| crate::scalar::reduce(v, &t.orders[i]))
                    .collect()
            })
            .collect();
        IntMatrix::from_vec(h.rows(), h.cols(), rows.into_iter().flatten().collect())
    }

    /// Some `x` with `f(x) = y`, if `y` is in the image.
    pub fn preimage(&self, y: &[T]) -> Option<Vec<T>> {
        let n = self.source.gens();
        let sys = self.matrix.hstack(&self.target.lattice());
        let sol = solve_linear(&sys, y, &RingSpec::Integers)?;
        Some(self.source.normal_form(&sol.particular[..n]))
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_isomorphism() {
            return Err(Error::NotWellDefined("map is not an isomorphism".into()));
        }
        let t = self.target.gens();
        let cols: Vec<Vec<T>> = (0..t)
            .map(|i| {
                let mut e = vec![T::zero(); t];
                e[i] = T::one();
                self.preimage(&e).expect("surjective")
            })
            .collect();
        Ok(Self::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            IntMatrix::from_cols(self.source.gens(), &cols),
        ))
    }

    /// Same map with both ends replaced by isomorphic copies along `into_source⁻¹` and `into_target`.
    pub fn transport(&self, from_new_source: &Self, to_new_target: &Self) -> Result<Self> {
        to_new_target.compose(self)?.compose(from_new_source)
    }
}
