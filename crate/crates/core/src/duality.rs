//! Character modules `M⁺ = Hom(M, Q/Z)` of finite modules, and flatness.
//!
//! A finite `M` of exponent `e` only sees `(1/e)Z/Z ≅ Z/e` inside `Q/Z`.
//! Over `Z/m` we use `Hom_R(M, R)` with `R⁺ ≅ R`, `r ↦ r/m`.

use crate::classes::ModuleClass;
use crate::envelopes::is_s_pure_injective;
use crate::fpmod::{FpModule, HomModule, ModuleMap};
use crate::linalg::{IntMatrix, RingSpec};
use crate::purity::{is_s_pure, Criterion, ShortExactSequence};
use crate::relhom::is_s_pure_projective;
use crate::scalar::{reduce, Scalar};
use crate::{Caps, Error, Result};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone)]
pub struct DualModule<T> {
    original: FpModule<T>,
    hom: HomModule<T>,
    exponent: T,
}

fn character_target<T: Scalar>(m: &FpModule<T>) -> Result<(FpModule<T>, T)> {
    let e = m.exponent().ok_or(Error::InfiniteModule)?;
    let d = match m.ring() {
        RingSpec::IntegersMod(_) => FpModule::free(m.ring(), 1),
        RingSpec::Integers => FpModule::cyclic(m.ring(), e.clone()),
    };
    Ok((d, e))
}

/// `M⁺`, with non-degeneracy of the pairing checked.
pub fn pontryagin_dual<T: Scalar>(m: &FpModule<T>) -> Result<DualModule<T>> {
    let (d, exponent) = character_target(m)?;
    let hom = HomModule::new(m, &d)?;
    let dual = DualModule {
        original: m.clone(),
        hom,
        exponent,
    };
    if !dual.is_nondegenerate() {
        return Err(Error::TheoryViolation(format!("degenerate pairing on {m}")));
    }
    Ok(dual)
}

impl<T: Scalar> DualModule<T> {
    pub fn original(&self) -> &FpModule<T> {
        &self.original
    }

    pub fn dual(&self) -> &FpModule<T> {
        self.hom.module()
    }

    pub fn hom(&self) -> &HomModule<T> {
        &self.hom
    }

    /// Denominator of the pairing values.
    pub fn exponent(&self) -> &T {
        &self.exponent
    }

    /// The character with coordinates `phi`, as a map into `Z/m` or `Z/e`.
    pub fn character(&self, phi: &[T]) -> ModuleMap<T> {
        self.hom.decode(phi)
    }

    /// `⟨x, φ⟩ = n / exponent` in `Q/Z`; returns `n` in `[0, exponent)`.
    pub fn pair(&self, x: &[T], phi: &[T]) -> T {
        let v = self.hom.decode(phi).apply(x).pop().unwrap_or_else(T::zero);
        match self.original.ring() {
            RingSpec::IntegersMod(m) => {
                // v/m with e·v ≡ 0 mod m
                let v = reduce(&v, m);
                reduce(&(v * self.exponent.clone() / m.clone()), &self.exponent)
            }
            RingSpec::Integers => reduce(&v, &self.exponent),
        }
    }

    fn is_nondegenerate(&self) -> bool {
        let m = &self.original;
        let ring = m.ring();
        let d = self.hom.target();
        if self.dual().order() != m.order() {
            return false;
        }
        let k = self.hom.generator_count();
        let n = m.gens();
        let gens = self.hom.generators();
        // x ↦ (⟨x, φ_i⟩)_i
        let rows: Vec<Vec<T>> = gens.iter().map(|g| g.matrix().row(0)).collect();
        let left = IntMatrix::from_rows(&rows);
        let left = if k == 0 { IntMatrix::zeros(0, n) } else { left };
        let dk = FpModule::sum_of(ring, &vec![d.clone(); k]);
        let Ok(left) = ModuleMap::new(m.clone(), dk, left) else {
            return false;
        };
        // φ ↦ (⟨x_j, φ⟩)_j
        let dn = FpModule::sum_of(ring, &vec![d.clone(); n]);
        let right = IntMatrix::from_cols(n, &gens.iter().map(|g| g.matrix().row(0)).collect::<Vec<_>>());
        let Ok(right) = ModuleMap::new(self.dual().clone(), dn, right) else {
            return false;
        };
        left.is_injective() && right.is_injective()
    }
}

/// `f⁺: N⁺ → M⁺` for `f: M → N`, by precomposition.
pub fn dual_map<T: Scalar>(f: &ModuleMap<T>) -> Result<ModuleMap<T>> {
    let dm = pontryagin_dual(f.source())?;
    let dn = pontryagin_dual(f.target())?;
    let rescale = matches!(f.source().ring(), RingSpec::Integers);
    let cols = dn
        .hom
        .generators()
        .iter()
        .map(|psi| {
            let g = psi.compose(f)?;
            let g = if rescale {
                // values v/e_N read as (v·e_M/e_N)/e_M; exact since e_M kills M
                let mat = g.matrix().scale(&dm.exponent);
                let entries = mat.entries().iter().map(|v| v.clone() / dn.exponent.clone()).collect();
                ModuleMap::new(
                    f.source().clone(),
                    dm.hom.target().clone(),
                    IntMatrix::from_vec(1, f.source().gens(), entries),
                )?
            } else {
                g
            };
            dm.hom.encode(&g)
        })
        .collect::<Result<Vec<_>>>()?;
    ModuleMap::new(
        dn.dual().clone(),
        dm.dual().clone(),
        IntMatrix::from_cols(dm.hom.generator_count(), &cols),
    )
}

/// A pure sequence on which `M ⊗ −` fails to stay injective.
#[derive(Debug, Clone)]
pub struct FlatRefutation<T> {
    /// index into the sampled corpus
    pub sequence: usize,
    /// nonzero kernel element of `M ⊗ A → M ⊗ B`
    pub element: Vec<T>,
}

#[derive(Debug, Clone)]
pub struct FlatVerdict<T> {
    pub flat: bool,
    /// `tr(M)` is `S`-pure projective
    pub via_transpose: bool,
    /// `M⁺` is `S`-pure injective (finite rings only)
    pub via_dual: Option<bool>,
    pub sampled: usize,
    pub refutation: Option<FlatRefutation<T>>,
}

/// Tensors `M` against the `S`-pure members of `corpus` over the same ring.
pub fn sample_flatness<T: Scalar>(
    m: &FpModule<T>,
    class: &ModuleClass<T>,
    corpus: &[ShortExactSequence<T>],
) -> Result<(usize, Option<FlatRefutation<T>>)> {
    let mut sampled = 0;
    for (i, s) in corpus.iter().enumerate() {
        if s.ring() != m.ring() || !is_s_pure(s, class, Criterion::TransposeTensor)?.pure {
            continue;
        }
        sampled += 1;
        let t = m.identity().tensor(s.incl())?;
        if let Some(element) = t.kernel_witness() {
            return Ok((sampled, Some(FlatRefutation { sequence: i, element })));
        }
    }
    Ok((sampled, None))
}

/// Decides `S`-pure flatness of a finite module two ways and samples the corpus.
pub fn is_s_pure_flat<T: Scalar>(
    m: &FpModule<T>,
    class: &ModuleClass<T>,
    corpus: &[ShortExactSequence<T>],
    caps: &Caps,
) -> Result<FlatVerdict<T>> {
    if !m.is_finite() {
        return Err(Error::InfiniteModule);
    }
    let via_transpose = is_s_pure_projective(&m.transpose(), class, caps)?.projective;
    let via_dual = if m.ring().is_finite() {
        let d = pontryagin_dual(m)?;
        Some(is_s_pure_injective(d.dual(), class, caps)?.injective)
    } else {
        None
    };
    if via_dual.is_some_and(|v| v != via_transpose) {
        return Err(Error::TheoryViolation(format!(
            "flatness of {m}: transpose route says {via_transpose}, dual route says {}",
            !via_transpose
        )));
    }
    let (sampled, refutation) = sample_flatness(m, class, corpus)?;
    if via_transpose && refutation.is_some() {
        return Err(Error::TheoryViolation(format!(
            "{m} decided flat but a pure sequence refutes it"
        )));
    }
    Ok(FlatVerdict {
        flat: via_transpose,
        via_transpose,
        via_dual,
        sampled,
        refutation,
    })
}
