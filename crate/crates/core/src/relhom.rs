//! Relative homological algebra: precovers, resolutions, coresolutions and
//! `Ext` computed from both sides.

use std::fmt;

use crate::classes::ModuleClass;
use crate::corpus::all_modules;
use crate::envelopes::{is_s_pure_injective, pure_mono_verdict};
use crate::error::scale;
use crate::fpmod::{FpModule, HomModule, ModuleMap};
use crate::linalg::{kernel_basis, lattice_basis, IntMatrix, RingSpec};
use crate::purity::{Criterion, ShortExactSequence};
use crate::scalar::Scalar;
use crate::{Caps, Error, Result};

#[cfg(test)]
mod tests;

/// Distinct primary cyclic summands of the members, plus those of `R`.
pub fn projective_atoms<T: Scalar>(class: &ModuleClass<T>) -> Result<Vec<T>> {
    let r = FpModule::free(&class.ring, 1);
    if !class.contains_iso(&r) {
        return Err(Error::Invalid("class must contain R".into()));
    }
    let mut atoms: Vec<T> = r.primary_orders();
    for u in &class.members {
        atoms.extend(u.primary_orders());
    }
    atoms.sort();
    atoms.dedup();
    Ok(atoms)
}

/// Some `g: X → P` with `π∘g = h`, for `π: P → M` and `h: X → M`.
pub fn lift_along<T: Scalar>(pi: &ModuleMap<T>, h: &ModuleMap<T>) -> Result<Option<ModuleMap<T>>> {
    if pi.target() != h.target() {
        return Err(Error::Shape("maps have different targets".into()));
    }
    let hom_p = HomModule::new(h.source(), pi.source())?;
    let hom_m = HomModule::new(h.source(), h.target())?;
    let push = hom_p.post_compose(pi, &hom_m)?;
    let coords = hom_m.encode(h)?;
    Ok(push.preimage(&coords).map(|c| hom_p.decode(&c)))
}

/// `π: P → M` with `P` a sum of atoms and every map from a member lifting along `π`.
#[derive(Debug, Clone)]
pub struct Precover<T> {
    pub module: FpModule<T>,
    pub map: ModuleMap<T>,
    /// atom order of each summand of `P`
    pub atoms: Vec<T>,
}

fn build_precover<T: Scalar>(m: &FpModule<T>, atoms: &[T], caps: &Caps) -> Result<Precover<T>> {
    let ring = m.ring();
    let mut cols: Vec<Vec<T>> = Vec::new();
    let mut orders: Vec<T> = Vec::new();
    let map_of = |orders: &[T], cols: &[Vec<T>]| {
        ModuleMap::new(
            FpModule::from_orders(ring, orders),
            m.clone(),
            IntMatrix::from_cols(m.gens(), cols),
        )
    };
    for a in atoms {
        let x = FpModule::cyclic(ring, a.clone());
        let hom = HomModule::new(&x, m)?;
        for g in 0..hom.generator_count() {
            let h = hom.generator(g);
            if lift_along(&map_of(&orders, &cols)?, &h)?.is_some() {
                continue;
            }
            if cols.len() >= caps.hom {
                return Err(scale("precover summands", cols.len() + 1, caps.hom));
            }
            cols.push(h.matrix().column(0));
            orders.push(a.clone());
        }
    }
    let map = map_of(&orders, &cols)?;
    if !map.is_surjective() {
        return Err(Error::TheoryViolation(format!("precover of {m} is not onto")));
    }
    Ok(Precover {
        module: map.source().clone(),
        map,
        atoms: orders,
    })
}

/// `S`-pure projective precover; its kernel inclusion is checked to be `S`-pure.
pub fn precover<T: Scalar>(m: &FpModule<T>, class: &ModuleClass<T>, caps: &Caps) -> Result<Precover<T>> {
    if m.ring() != &class.ring {
        return Err(Error::RingMismatch);
    }
    let p = build_precover(m, &projective_atoms(class)?, caps)?;
    let (_, incl) = p.map.kernel();
    let seq = ShortExactSequence::new(incl, p.map.clone())?;
    if !crate::purity::is_s_pure(&seq, class, Criterion::default_for(m.ring()))?.pure {
        return Err(Error::TheoryViolation(format!("precover kernel of {m} is not S-pure")));
    }
    Ok(p)
}

#[derive(Debug, Clone)]
pub struct ProjectivityVerdict<T> {
    pub projective: bool,
    pub precover: Precover<T>,
    /// `s` with `π∘s = id`
    pub section: Option<ModuleMap<T>>,
}

/// `M` is `S`-pure projective iff its precover splits.
pub fn is_s_pure_projective<T: Scalar>(
    m: &FpModule<T>,
    class: &ModuleClass<T>,
    caps: &Caps,
) -> Result<ProjectivityVerdict<T>> {
    if m.ring() != &class.ring {
        return Err(Error::RingMismatch);
    }
    let p = build_precover(m, &projective_atoms(class)?, caps)?;
    let section = lift_along(&p.map, &m.identity())?;
    Ok(ProjectivityVerdict {
        projective: section.is_some(),
        precover: p,
        section,
    })
}

/// An exact dimension, or a lower bound when the search depth ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    Exact(usize),
    AtLeast(usize),
}

impl Dim {
    pub fn is_exact(self) -> bool {
        matches!(self, Dim::Exact(_))
    }

    fn sup(self, other: Dim) -> Dim {
        match (self, other) {
            (Dim::Exact(a), Dim::Exact(b)) => Dim::Exact(a.max(b)),
            (Dim::Exact(a), Dim::AtLeast(b)) | (Dim::AtLeast(b), Dim::Exact(a)) => Dim::AtLeast(a.max(b)),
            (Dim::AtLeast(a), Dim::AtLeast(b)) => Dim::AtLeast(a.max(b)),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Exact(n) => write!(f, "{n}"),
            Dim::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// `⋯ → P_1 → P_0 → M → 0`.
#[derive(Debug, Clone)]
pub struct Resolution<T> {
    pub module: FpModule<T>,
    pub terms: Vec<FpModule<T>>,
    pub augmentation: ModuleMap<T>,
    /// `differentials[n-1] = d_n: P_n → P_{n-1}`
    pub differentials: Vec<ModuleMap<T>>,
    /// `syzygies[n-1]` is `Ω_n → P_{n-1}`
    pub syzygies: Vec<ModuleMap<T>>,
    pub dimension: Dim,
}

/// `0 → N → I^0 → I^1 → ⋯`.
#[derive(Debug, Clone)]
pub struct Coresolution<T> {
    pub module: FpModule<T>,
    pub terms: Vec<FpModule<T>>,
    pub coaugmentation: ModuleMap<T>,
    /// `differentials[n] = ∂^n: I^n → I^{n+1}`
    pub differentials: Vec<ModuleMap<T>>,
    /// `cosyzygies[n-1]` is `I^{n-1} → Ω^{-n}`
    pub cosyzygies: Vec<ModuleMap<T>>,
    pub dimension: Dim,
}

/// Replaces a module by its canonical form along `f: X → Y` (source side).
fn canonical_source<T: Scalar>(f: &ModuleMap<T>) -> Result<ModuleMap<T>> {
    let c = f.source().canonicalize();
    f.compose(&c.iso_from_canonical)
}

fn canonical_target<T: Scalar>(f: &ModuleMap<T>) -> Result<ModuleMap<T>> {
    let c = f.target().canonicalize();
    c.iso_to_canonical.compose(f)
}

fn check_pure<T: Scalar>(f: &ModuleMap<T>, class: &ModuleClass<T>, what: &str) -> Result<()> {
    let pure = pure_mono_verdict(f, class, Criterion::default_for(f.source().ring()))?.is_some_and(|v| v.pure);
    if pure {
        Ok(())
    } else {
        Err(Error::TheoryViolation(format!("{what} is not an S-pure monomorphism")))
    }
}

/// Projective terms `P_0 … P_depth`, or fewer if some syzygy is `S`-pure projective.
pub fn resolve<T: Scalar>(m: &FpModule<T>, class: &ModuleClass<T>, depth: usize, caps: &Caps) -> Result<Resolution<T>> {
    if !class.ring.is_finite() {
        return Err(Error::InfiniteRing);
    }
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let mut syzygies: Vec<ModuleMap<T>> = Vec::new();
    let mut augmentation = None;
    let mut omega = m.clone();
    let mut dimension = Dim::AtLeast(depth + 1);
    for n in 0..=depth {
        let v = is_s_pure_projective(&omega, class, caps)?;
        let pi = if v.projective {
            dimension = Dim::Exact(n);
            let c = omega.canonicalize();
            c.iso_from_canonical
        } else {
            canonical_source(&v.precover.map)?
        };
        terms.push(pi.source().clone());
        match syzygies.last() {
            None => augmentation = Some(pi.clone()),
            Some(incl) => differentials.push(incl.compose(&pi)?),
        }
        if v.projective {
            break;
        }
        let (_, incl) = pi.kernel();
        let incl = canonical_source(&incl)?;
        check_pure(&incl, class, "syzygy inclusion")?;
        omega = incl.source().clone();
        syzygies.push(incl);
    }
    Ok(Resolution {
        module: m.clone(),
        terms,
        augmentation: augmentation.expect("at least one term"),
        differentials,
        syzygies,
        dimension,
    })
}

/// Injective terms `I^0 … I^depth`, or fewer if some cosyzygy is `S`-pure injective.
pub fn coresolve<T: Scalar>(
    n: &FpModule<T>,
    class: &ModuleClass<T>,
    depth: usize,
    caps: &Caps,
) -> Result<Coresolution<T>> {
    if !class.ring.is_finite() {
        return Err(Error::InfiniteRing);
    }
    let mut terms = Vec::new();
    let mut differentials = Vec::new();
    let mut cosyzygies: Vec<ModuleMap<T>> = Vec::new();
    let mut coaugmentation = None;
    let mut omega = n.clone();
    let mut dimension = Dim::AtLeast(depth + 1);
    for k in 0..=depth {
        let v = is_s_pure_injective(&omega, class, caps)?;
        let phi = if v.injective {
            dimension = Dim::Exact(k);
            omega.canonicalize().iso_to_canonical
        } else {
            canonical_target(&v.preenvelope.map)?
        };
        if !v.injective {
            check_pure(&phi, class, "cosyzygy embedding")?;
        }
        terms.push(phi.target().clone());
        match cosyzygies.last() {
            None => coaugmentation = Some(phi.clone()),
            Some(sigma) => differentials.push(phi.compose(sigma)?),
        }
        if v.injective {
            break;
        }
        let (_, proj) = phi.target().quotient(phi.matrix())?;
        let sigma = canonical_target(&proj)?;
        omega = sigma.target().clone();
        cosyzygies.push(sigma);
    }
    Ok(Coresolution {
        module: n.clone(),
        terms,
        coaugmentation: coaugmentation.expect("at least one term"),
        differentials,
        cosyzygies,
        dimension,
    })
}

/// `ker g / im f` for `X →f Y →g Z` with `g∘f = 0`.
pub fn homology<T: Scalar>(f: &ModuleMap<T>, g: &ModuleMap<T>) -> Result<FpModule<T>> {
    let y = f.target();
    if g.source() != y {
        return Err(Error::Shape("maps are not composable".into()));
    }
    if !g.compose(f)?.is_zero() {
        return Err(Error::NotExact("composite of complex maps is nonzero".into()));
    }
    let k = g.kernel_gens();
    let kc = k.cols();
    // c with K·c ∈ im f + lattice(Y)
    let sys = k.hstack(f.matrix()).hstack(&y.lattice());
    let ker = kernel_basis(&sys, &RingSpec::Integers);
    let rel = lattice_basis(&ker.select_rows(&(0..kc).collect::<Vec<_>>()));
    FpModule::new(y.ring().clone(), kc, rel)
}

/// `Ext^n_S(M, N)` from `Hom(P_•, N)` and from `Hom(M, I^•)`.
#[derive(Debug, Clone)]
pub struct ExtResult<T> {
    pub degree: usize,
    pub via_projective: FpModule<T>,
    pub via_injective: FpModule<T>,
}

impl<T: Scalar> ExtResult<T> {
    pub fn agree(&self) -> bool {
        self.via_projective.is_isomorphic(&self.via_injective)
    }
}

/// `H^n` of `Hom(P_•, N)`; `res` must reach `P_{n+1}` or stop earlier.
pub fn ext_via_projective<T: Scalar>(res: &Resolution<T>, target: &FpModule<T>, n: usize) -> Result<FpModule<T>> {
    let ring = target.ring();
    let zero = FpModule::zero(ring);
    let term = |k: usize| res.terms.get(k).cloned().unwrap_or_else(|| zero.clone());
    if res.terms.len() <= n + 1 && !res.dimension.is_exact() {
        return Err(Error::Invalid(format!("resolution too short for degree {n}")));
    }
    // δ^k = Hom(d_{k+1}, N): Hom(P_k, N) → Hom(P_{k+1}, N)
    let delta = |k: usize| -> Result<ModuleMap<T>> {
        let hk = HomModule::new(&term(k), target)?;
        let hk1 = HomModule::new(&term(k + 1), target)?;
        match res.differentials.get(k) {
            Some(d) => hk.pre_compose(d, &hk1),
            None => Ok(ModuleMap::zero(hk.module(), hk1.module())),
        }
    };
    let out = delta(n)?;
    let inc = if n == 0 {
        ModuleMap::zero(&zero, out.source())
    } else {
        delta(n - 1)?
    };
    homology(&inc, &out)
}

/// `H^n` of `Hom(M, I^•)`; `cores` must reach `I^{n+1}` or stop earlier.
pub fn ext_via_injective<T: Scalar>(source: &FpModule<T>, cores: &Coresolution<T>, n: usize) -> Result<FpModule<T>> {
    let ring = source.ring();
    let zero = FpModule::zero(ring);
    let term = |k: usize| cores.terms.get(k).cloned().unwrap_or_else(|| zero.clone());
    if cores.terms.len() <= n + 1 && !cores.dimension.is_exact() {
        return Err(Error::Invalid(format!("coresolution too short for degree {n}")));
    }
    let delta = |k: usize| -> Result<ModuleMap<T>> {
        let hk = HomModule::new(source, &term(k))?;
        let hk1 = HomModule::new(source, &term(k + 1))?;
        match cores.differentials.get(k) {
            Some(d) => hk.post_compose(d, &hk1),
            None => Ok(ModuleMap::zero(hk.module(), hk1.module())),
        }
    };
    let out = delta(n)?;
    let inc = if n == 0 {
        ModuleMap::zero(&zero, out.source())
    } else {
        delta(n - 1)?
    };
    homology(&inc, &out)
}

/// Both computations of `Ext^n`; disagreement is a theory violation.
pub fn rel_ext<T: Scalar>(
    m: &FpModule<T>,
    n_mod: &FpModule<T>,
    class: &ModuleClass<T>,
    n: usize,
    caps: &Caps,
) -> Result<ExtResult<T>> {
    let res = resolve(m, class, n + 1, caps)?;
    let cores = coresolve(n_mod, class, n + 1, caps)?;
    let out = ExtResult {
        degree: n,
        via_projective: ext_via_projective(&res, n_mod, n)?,
        via_injective: ext_via_injective(m, &cores, n)?,
    };
    if !out.agree() {
        return Err(Error::TheoryViolation(format!(
            "Ext^{n}({m}, {n_mod}) is {} via projectives but {} via injectives",
            out.via_projective, out.via_injective
        )));
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct DimRow<T> {
    pub module: FpModule<T>,
    pub projective: Dim,
    pub injective: Dim,
}

#[derive(Debug, Clone)]
pub struct DimReport<T> {
    pub order_bound: u64,
    pub depth: usize,
    pub rows: Vec<DimRow<T>>,
    pub global_projective: Dim,
    pub global_injective: Dim,
}

impl<T: Scalar> DimReport<T> {
    /// Both suprema resolved implies they are equal.
    pub fn consistent(&self) -> bool {
        match (self.global_projective, self.global_injective) {
            (Dim::Exact(a), Dim::Exact(b)) => a == b,
            _ => true,
        }
    }
}

/// Pure projective and injective dimensions of every nonzero module up to `order_bound`.
///
/// Dimensions below `depth` are exact; anything else is reported as `>= depth`.
pub fn pure_dims<T: Scalar>(
    ring: &RingSpec<T>,
    class: &ModuleClass<T>,
    order_bound: u64,
    depth: usize,
    caps: &Caps,
) -> Result<DimReport<T>> {
    if depth == 0 {
        return Err(Error::Invalid("depth must be positive".into()));
    }
    let mut rows = Vec::new();
    let mut gp = Dim::Exact(0);
    let mut gi = Dim::Exact(0);
    for m in all_modules(ring, order_bound)? {
        if m.is_zero() {
            continue;
        }
        let p = resolve(&m, class, depth - 1, caps)?.dimension;
        let i = coresolve(&m, class, depth - 1, caps)?.dimension;
        gp = gp.sup(p);
        gi = gi.sup(i);
        rows.push(DimRow {
            module: m,
            projective: p,
            injective: i,
        });
    }
    Ok(DimReport {
        order_bound,
        depth,
        rows,
        global_projective: gp,
        global_injective: gi,
    })
}
