//! Short exact sequences and four equivalent tests for `S`-purity.
//!
//! Per member `U` with stored presentation `μ_U` (`g` generators, `r`
//! relations):
//!
//! * (i) every generator of `Hom(U, C)` lifts to `Hom(U, B)`;
//! * (ii) `tr(U) ⊗ A → tr(U) ⊗ B` is injective;
//! * (iii) `μ(A^g) = A^r ∩ μ(B^g)` inside `B^r`, with `μ = μ_Uᵀ`;
//! * (iv) every system `Σ_i r_ij x_i = a_j` (with `(r_ij) = μ_U`) with
//!   constants in `A` and a solution in `B` has a solution in `A`.
//!
//! Tuples of elements are stacked into one integer vector, component-major,
//! so `μ` acts on `M^g` as `kron(μ, I)`.

use std::fmt;

use crate::classes::{transpose_class, ModuleClass};
use crate::fpmod::{FpModule, HomModule, ModuleMap};
use crate::linalg::{kernel_basis, Infeasibility, IntMatrix, LinearSystem, RingSpec, Solver};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// `0 → A → B → C → 0`, verified exact.
#[derive(Debug, Clone)]
pub struct ShortExactSequence<T> {
    a: FpModule<T>,
    b: FpModule<T>,
    c: FpModule<T>,
    incl: ModuleMap<T>,
    proj: ModuleMap<T>,
}

impl<T: Scalar> ShortExactSequence<T> {
    /// Checks injectivity, surjectivity and `im incl = ker proj`.
    pub fn new(incl: ModuleMap<T>, proj: ModuleMap<T>) -> Result<Self> {
        if incl.target() != proj.source() {
            return Err(Error::Shape("inclusion target is not projection source".into()));
        }
        if !incl.is_well_defined() || !proj.is_well_defined() {
            return Err(Error::NotWellDefined("sequence maps".into()));
        }
        if let Some(x) = incl.kernel_witness() {
            return Err(Error::NotExact(format!("inclusion kills {x:?}")));
        }
        if !proj.is_surjective() {
            return Err(Error::NotExact("projection is not onto".into()));
        }
        if !proj.compose(&incl)?.is_zero() {
            return Err(Error::NotExact("composite is nonzero".into()));
        }
        let b = incl.target().clone();
        for k in proj.kernel_gens().columns() {
            if !b.in_span(incl.matrix(), &k) {
                return Err(Error::NotExact(format!("kernel element {k:?} is not in the image")));
            }
        }
        Ok(Self {
            a: incl.source().clone(),
            b,
            c: proj.target().clone(),
            incl,
            proj,
        })
    }

    /// `A = ⟨a_gens⟩ ⊆ B` with its induced presentation and `C = B/A`.
    pub fn from_generators(b: &FpModule<T>, a_gens: &IntMatrix<T>) -> Result<Self> {
        let (a, incl) = b.submodule(a_gens)?;
        let (c, proj) = b.quotient(a_gens)?;
        Ok(Self {
            a,
            b: b.clone(),
            c,
            incl,
            proj,
        })
    }

    /// The split sequence `0 → A → A ⊕ C → C → 0`.
    pub fn split(a: &FpModule<T>, c: &FpModule<T>) -> Result<Self> {
        let s = a.direct_sum(c)?;
        let [i, _] = s.injections;
        let [_, p] = s.projections;
        Self::new(i, p)
    }

    pub fn a(&self) -> &FpModule<T> {
        &self.a
    }

    pub fn b(&self) -> &FpModule<T> {
        &self.b
    }

    pub fn c(&self) -> &FpModule<T> {
        &self.c
    }

    pub fn incl(&self) -> &ModuleMap<T> {
        &self.incl
    }

    pub fn proj(&self) -> &ModuleMap<T> {
        &self.proj
    }

    pub fn ring(&self) -> &RingSpec<T> {
        self.b.ring()
    }

    /// The same sequence with `B` replaced along an isomorphism `B → B'`.
    pub fn transport(&self, iso: &ModuleMap<T>) -> Result<Self> {
        let inv = iso.inverse()?;
        Self::new(iso.compose(&self.incl)?, self.proj.compose(&inv)?)
    }
}

/// `make_ses(B, a_gens)`.
pub fn make_ses<T: Scalar>(b: &FpModule<T>, a_gens: &IntMatrix<T>) -> Result<ShortExactSequence<T>> {
    ShortExactSequence::from_generators(b, a_gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    /// (i) `Hom(U, B) → Hom(U, C)` onto.
    DefinitionLift,
    /// (ii) `tr(U) ⊗ −` keeps the inclusion injective.
    TransposeTensor,
    /// (iii) `μ(A^g) = A^r ∩ μ(B^g)`.
    MatrixIntersection,
    /// (iv) solubility in `B` implies solubility in `A`.
    EquationTransfer,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::DefinitionLift,
        Criterion::TransposeTensor,
        Criterion::MatrixIntersection,
        Criterion::EquationTransfer,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Criterion::DefinitionLift => "i",
            Criterion::TransposeTensor => "ii",
            Criterion::MatrixIntersection => "iii",
            Criterion::EquationTransfer => "iv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == s)
    }

    /// Equation transfer over `Z`, lifting over `Z/m`.
    pub fn default_for<T: Scalar>(ring: &RingSpec<T>) -> Self {
        if ring.is_finite() {
            Criterion::DefinitionLift
        } else {
            Criterion::EquationTransfer
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

/// Data proving one member passes: lifts for (i), `A`-solutions for (iii)/(iv).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberWitness<T> {
    pub member: usize,
    pub solutions: Vec<Vec<T>>,
}

#[derive(Debug, Clone)]
pub enum PurityCertificate<T> {
    Pure(Vec<MemberWitness<T>>),
    /// A map `U → C` with no lift; the lift system is infeasible.
    UnliftableMap {
        member: usize,
        map: ModuleMap<T>,
        obstruction: Infeasibility<T>,
    },
    /// A nonzero element of `tr(U) ⊗ A` dying in `tr(U) ⊗ B`.
    TensorKernel {
        member: usize,
        element: Vec<T>,
    },
    /// `y ∈ A^r ∩ μ(B^g)` outside `μ(A^g)`, in `B`-coordinates.
    IntersectionGap {
        member: usize,
        element: Vec<T>,
        obstruction: Infeasibility<T>,
    },
    /// A system soluble in `B` and not in `A`.
    InsolubleSystem {
        member: usize,
        system: LinearSystem<T>,
        b_solution: Vec<Vec<T>>,
        obstruction: Infeasibility<T>,
    },
}

impl<T: Scalar> PurityCertificate<T> {
    pub fn member(&self) -> Option<usize> {
        match self {
            PurityCertificate::Pure(_) => None,
            PurityCertificate::UnliftableMap { member, .. }
            | PurityCertificate::TensorKernel { member, .. }
            | PurityCertificate::IntersectionGap { member, .. }
            | PurityCertificate::InsolubleSystem { member, .. } => Some(*member),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PurityVerdict<T> {
    pub pure: bool,
    pub criterion: Criterion,
    pub certificate: PurityCertificate<T>,
}

impl<T: Scalar> PurityVerdict<T> {
    /// Re-checks the certificate with plain solves, independent of how it was found.
    pub fn verify(&self, seq: &ShortExactSequence<T>, class: &ModuleClass<T>) -> bool {
        verify_certificate(seq, class, self.criterion, &self.certificate)
    }
}

fn identity_kron<T: Scalar>(q: usize, x: &IntMatrix<T>) -> IntMatrix<T> {
    IntMatrix::identity(q).kron(x)
}

fn vec_col_major<T: Scalar>(m: &IntMatrix<T>) -> Vec<T> {
    m.columns().into_iter().flatten().collect()
}

fn chunks<T: Clone>(v: &[T], size: usize) -> Vec<Vec<T>> {
    if size == 0 {
        return Vec::new();
    }
    v.chunks(size).map(|c| c.to_vec()).collect()
}

fn zero_block<T: Scalar>(r: usize, c: usize) -> IntMatrix<T> {
    IntMatrix::zeros(r, c)
}

/// `[μᵀ⊗I, -I⊗Λ_B, 0; I⊗P, 0, -I⊗Λ_C]` in unknowns `(vec F, Y, Z)`.
fn lift_system<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>) -> IntMatrix<T> {
    let mu = u.relations();
    let (g, r) = (mu.rows(), mu.cols());
    let lb = seq.b.lattice();
    let lc = seq.c.lattice();
    let nb = seq.b.gens();
    let top = mu
        .transpose()
        .kron(&IntMatrix::identity(nb))
        .hstack(&identity_kron(r, &lb).scale(&-T::one()))
        .hstack(&zero_block(r * nb, g * lc.cols()));
    let bottom = identity_kron(g, seq.proj.matrix())
        .hstack(&zero_block(g * seq.c.gens(), r * lb.cols()))
        .hstack(&identity_kron(g, &lc).scale(&-T::one()));
    top.vstack(&bottom)
}

fn lift_rhs<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>, h: &ModuleMap<T>) -> Vec<T> {
    let mut rhs = vec![T::zero(); u.relations().cols() * seq.b.gens()];
    rhs.extend(vec_col_major(h.matrix()));
    rhs
}

/// Matrices for (iii)/(iv) of one member.
struct Stacked<T> {
    g: usize,
    r: usize,
    /// `kron(μ, I_nB)`: `B^g → B^r`
    mu_b: IntMatrix<T>,
    /// `kron(I_r, G)`: `A^r → B^r`
    incl_r: IntMatrix<T>,
    /// `kron(I_r, Λ_B)`
    lat_b: IntMatrix<T>,
}

impl<T: Scalar> Stacked<T> {
    fn new(seq: &ShortExactSequence<T>, u: &FpModule<T>) -> Self {
        let mu = u.relations().transpose();
        let (r, g) = (mu.rows(), mu.cols());
        Self {
            g,
            r,
            mu_b: mu.kron(&IntMatrix::identity(seq.b.gens())),
            incl_r: identity_kron(r, seq.incl.matrix()),
            lat_b: identity_kron(r, &seq.b.lattice()),
        }
    }

    /// `[kron(μ, G) | kron(I_r, Λ_B)]`: solvable at `y` iff `y ∈ μ(A^g)` in `B^r`.
    fn image_of_a(&self, seq: &ShortExactSequence<T>) -> IntMatrix<T> {
        self.mu_b
            .mul(&identity_kron(self.g, seq.incl.matrix()))
            .hstack(&self.lat_b)
    }

    /// `[kron(I_r, G) | kron(I_r, Λ_B)]`: solvable at `y` iff `y ∈ A^r`.
    fn in_a(&self) -> IntMatrix<T> {
        self.incl_r.hstack(&self.lat_b)
    }
}

/// `[kron(μ, I_nA) | kron(I_r, Λ_A)]`: the system posed in `A`'s own presentation.
fn system_in_a<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>) -> IntMatrix<T> {
    let mu = u.relations().transpose();
    mu.kron(&IntMatrix::identity(seq.a.gens()))
        .hstack(&identity_kron(mu.rows(), &seq.a.lattice()))
}

type MemberResult<T> = Result<std::result::Result<Vec<Vec<T>>, PurityCertificate<T>>>;

fn trivially_pure<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>) -> bool {
    seq.a.is_zero() || u.is_zero() || seq.c.is_zero()
}

fn check_lift<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>, member: usize) -> MemberResult<T> {
    let hom_c = HomModule::new(u, &seq.c)?;
    let hom_b = HomModule::new(u, &seq.b)?;
    let post = hom_b.post_compose(&seq.proj, &hom_c)?;
    let mut lifts = Vec::new();
    for gi in 0..hom_c.generator_count() {
        let mut e = vec![T::zero(); hom_c.generator_count()];
        e[gi] = T::one();
        match post.preimage(&e) {
            Some(c) => lifts.push(vec_col_major(hom_b.decode(&c).matrix())),
            None => {
                let h = hom_c.generator(gi);
                let sys = lift_system(seq, u);
                let obstruction = Solver::new(&sys, &RingSpec::Integers)
                    .solve(&lift_rhs(seq, u, &h))
                    .err()
                    .ok_or_else(|| Error::CriteriaDisagree("lift found by direct solve".into()))?;
                return Ok(Err(PurityCertificate::UnliftableMap {
                    member,
                    map: h,
                    obstruction,
                }));
            }
        }
    }
    Ok(Ok(lifts))
}

fn check_tensor<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>, member: usize) -> MemberResult<T> {
    let t = u.transpose();
    let f = t.identity().tensor(&seq.incl)?;
    Ok(match f.kernel_witness() {
        None => Ok(Vec::new()),
        Some(element) => Err(PurityCertificate::TensorKernel { member, element }),
    })
}

fn check_intersection<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>, member: usize) -> MemberResult<T> {
    let s = Stacked::new(seq, u);
    let na = s.incl_r.cols();
    let sys = s
        .incl_r
        .hstack(&s.mu_b.scale(&-T::one()))
        .hstack(&s.lat_b.scale(&-T::one()));
    let ker = kernel_basis(&sys, &RingSpec::Integers);
    let target = Solver::new(&s.image_of_a(seq), &RingSpec::Integers);
    let mut sols = Vec::new();
    for col in ker.columns() {
        let y = s.incl_r.mul_vec(&col[..na]);
        match target.solve(&y) {
            Ok(x) => sols.push(x),
            Err(obstruction) => {
                return Ok(Err(PurityCertificate::IntersectionGap {
                    member,
                    element: y,
                    obstruction,
                }))
            }
        }
    }
    Ok(Ok(sols))
}

/// Generators `b` of `{b ∈ B^g : μb ∈ A^r}` with the constants `α ∈ A^r`, `Gα ≡ μb`.
fn equation_constants<T: Scalar>(seq: &ShortExactSequence<T>, s: &Stacked<T>) -> Result<Vec<(Vec<T>, Vec<T>)>> {
    let gb = s.mu_b.cols();
    let ra = s.incl_r.cols();
    let to_c = identity_kron(s.r, seq.proj.matrix()).mul(&s.mu_b);
    let sys = to_c.hstack(&identity_kron(s.r, &seq.c.lattice()).scale(&-T::one()));
    let ker = kernel_basis(&sys, &RingSpec::Integers);
    let express = Solver::new(&s.in_a(), &RingSpec::Integers);
    ker.columns()
        .into_iter()
        .map(|col| {
            let b = col[..gb].to_vec();
            let alpha = express
                .solve(&s.mu_b.mul_vec(&b))
                .map_err(|_| Error::NotExact("constants do not lie in A".into()))?;
            Ok((b, alpha[..ra].to_vec()))
        })
        .collect()
}

fn check_equations<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>, member: usize) -> MemberResult<T> {
    let s = Stacked::new(seq, u);
    let in_a = Solver::new(&system_in_a(seq, u), &RingSpec::Integers);
    let mut sols = Vec::new();
    for (b, alpha) in equation_constants(seq, &s)? {
        match in_a.solve(&alpha) {
            Ok(x) => sols.push(x),
            Err(obstruction) => {
                return Ok(Err(PurityCertificate::InsolubleSystem {
                    member,
                    system: LinearSystem {
                        coefficients: u.relations().clone(),
                        constants: chunks(&alpha, seq.a.gens()),
                    },
                    b_solution: chunks(&b, seq.b.gens()),
                    obstruction,
                }))
            }
        }
    }
    Ok(Ok(sols))
}

fn check_member<T: Scalar>(
    seq: &ShortExactSequence<T>,
    u: &FpModule<T>,
    member: usize,
    criterion: Criterion,
) -> MemberResult<T> {
    if u.ring() != seq.ring() {
        return Err(Error::RingMismatch);
    }
    if trivially_pure(seq, u) {
        return Ok(Ok(Vec::new()));
    }
    match criterion {
        Criterion::DefinitionLift => check_lift(seq, u, member),
        Criterion::TransposeTensor => check_tensor(seq, u, member),
        Criterion::MatrixIntersection => check_intersection(seq, u, member),
        Criterion::EquationTransfer => check_equations(seq, u, member),
    }
}

/// Decides `S`-purity of `seq` by one criterion.
pub fn is_s_pure<T: Scalar>(
    seq: &ShortExactSequence<T>,
    class: &ModuleClass<T>,
    criterion: Criterion,
) -> Result<PurityVerdict<T>> {
    let mut witnesses = Vec::new();
    for (i, u) in class.members.iter().enumerate() {
        match check_member(seq, u, i, criterion)? {
            Ok(solutions) => witnesses.push(MemberWitness { member: i, solutions }),
            Err(certificate) => {
                return Ok(PurityVerdict {
                    pure: false,
                    criterion,
                    certificate,
                });
            }
        }
    }
    Ok(PurityVerdict {
        pure: true,
        criterion,
        certificate: PurityCertificate::Pure(witnesses),
    })
}

/// Purity under the ring's default criterion.
pub fn is_s_pure_default<T: Scalar>(seq: &ShortExactSequence<T>, class: &ModuleClass<T>) -> Result<PurityVerdict<T>> {
    is_s_pure(seq, class, Criterion::default_for(seq.ring()))
}

/// Criterion (i) by listing `Hom(U, B)` and `Hom(U, C)` outright.
pub fn lift_by_enumeration<T: Scalar>(seq: &ShortExactSequence<T>, u: &FpModule<T>, cap: usize) -> Result<bool> {
    let hom_c = HomModule::new(u, &seq.c)?;
    let target = hom_c
        .module()
        .order()
        .ok_or(Error::InfiniteModule)?
        .to_usize()
        .unwrap_or(usize::MAX);
    let mut images = std::collections::HashSet::new();
    for f in HomModule::new(u, &seq.b)?.enumerate(cap)? {
        images.insert(hom_c.encode(&seq.proj.compose(&f)?)?);
        if images.len() == target {
            return Ok(true);
        }
    }
    Ok(images.len() == target)
}

fn verify_certificate<T: Scalar>(
    seq: &ShortExactSequence<T>,
    class: &ModuleClass<T>,
    criterion: Criterion,
    cert: &PurityCertificate<T>,
) -> bool {
    let z = RingSpec::Integers;
    let member = |i: usize| class.members.get(i);
    match cert {
        PurityCertificate::Pure(ws) => {
            ws.len() == class.len()
                && ws.iter().all(|w| match member(w.member) {
                    Some(u) => verify_witness(seq, u, criterion, &w.solutions),
                    None => false,
                })
        }
        PurityCertificate::UnliftableMap {
            member: i,
            map,
            obstruction,
        } => {
            let Some(u) = member(*i) else { return false };
            map.source() == u
                && map.target() == &seq.c
                && map.is_well_defined()
                && obstruction.verify(&lift_system(seq, u), &lift_rhs(seq, u, map), &z)
        }
        PurityCertificate::TensorKernel { member: i, element } => {
            let Some(u) = member(*i) else { return false };
            let t = u.transpose();
            let (Ok(ta), Ok(tb)) = (t.tensor(&seq.a), t.tensor(&seq.b)) else {
                return false;
            };
            if element.len() != ta.gens() {
                return false;
            }
            let image = identity_kron(t.gens(), seq.incl.matrix()).mul_vec(element);
            let nonzero = !Solver::new(&ta.lattice(), &z).is_solvable(element);
            let dies = Solver::new(&tb.lattice(), &z).is_solvable(&image);
            nonzero && dies
        }
        PurityCertificate::IntersectionGap {
            member: i,
            element,
            obstruction,
        } => {
            let Some(u) = member(*i) else { return false };
            let s = Stacked::new(seq, u);
            let in_b_image = Solver::new(&s.mu_b.hstack(&s.lat_b), &z).is_solvable(element);
            let in_a = Solver::new(&s.in_a(), &z).is_solvable(element);
            in_b_image && in_a && obstruction.verify(&s.image_of_a(seq), element, &z)
        }
        PurityCertificate::InsolubleSystem {
            member: i,
            system,
            b_solution,
            obstruction,
        } => {
            let Some(u) = member(*i) else { return false };
            if &system.coefficients != u.relations() {
                return false;
            }
            let s = Stacked::new(seq, u);
            let alpha: Vec<T> = system.constants.concat();
            let b: Vec<T> = b_solution.concat();
            if alpha.len() != s.incl_r.cols() || b.len() != s.mu_b.cols() {
                return false;
            }
            // μb - Gα ∈ Λ_B^r
            let diff: Vec<T> = s
                .mu_b
                .mul_vec(&b)
                .into_iter()
                .zip(s.incl_r.mul_vec(&alpha))
                .map(|(x, y)| x - y)
                .collect();
            Solver::new(&s.lat_b, &z).is_solvable(&diff) && obstruction.verify(&system_in_a(seq, u), &alpha, &z)
        }
    }
}

fn verify_witness<T: Scalar>(
    seq: &ShortExactSequence<T>,
    u: &FpModule<T>,
    criterion: Criterion,
    sols: &[Vec<T>],
) -> bool {
    if trivially_pure(seq, u) {
        return true;
    }
    let z = RingSpec::Integers;
    match criterion {
        Criterion::DefinitionLift => {
            let Ok(hom_c) = HomModule::new(u, &seq.c) else {
                return false;
            };
            if sols.len() != hom_c.generator_count() {
                return false;
            }
            sols.iter().enumerate().all(|(gi, f)| {
                if f.len() != seq.b.gens() * u.gens() {
                    return false;
                }
                let m = IntMatrix::from_cols(seq.b.gens(), &chunks(f, seq.b.gens()));
                match ModuleMap::new(u.clone(), seq.b.clone(), m) {
                    Ok(lift) => seq.proj.compose(&lift).is_ok_and(|h| h.equals(&hom_c.generator(gi))),
                    Err(_) => false,
                }
            })
        }
        Criterion::TransposeTensor => u
            .transpose()
            .identity()
            .tensor(&seq.incl)
            .is_ok_and(|f| f.is_injective()),
        Criterion::MatrixIntersection => {
            let s = Stacked::new(seq, u);
            let a = s.image_of_a(seq);
            let sys = s
                .incl_r
                .hstack(&s.mu_b.scale(&-T::one()))
                .hstack(&s.lat_b.scale(&-T::one()));
            let ker = kernel_basis(&sys, &z);
            ker.cols() == sols.len()
                && ker
                    .columns()
                    .iter()
                    .zip(sols)
                    .all(|(col, x)| x.len() == a.cols() && a.mul_vec(x) == s.incl_r.mul_vec(&col[..s.incl_r.cols()]))
        }
        Criterion::EquationTransfer => {
            let a_sys = system_in_a(seq, u);
            let Ok(consts) = equation_constants(seq, &Stacked::new(seq, u)) else {
                return false;
            };
            consts.len() == sols.len()
                && consts
                    .iter()
                    .zip(sols)
                    .all(|((_, alpha), x)| x.len() == a_sys.cols() && &a_sys.mul_vec(x) == alpha)
        }
    }
}

/// Outcome of [`purity_cross_check`].
#[derive(Debug, Clone)]
pub struct CrossCheck<T> {
    pub verdicts: Vec<PurityVerdict<T>>,
    /// Exhaustive `Hom` lifting per member, when it fit under the cap.
    pub enumerated: Option<bool>,
}

impl<T: Scalar> CrossCheck<T> {
    pub fn pure(&self) -> bool {
        self.verdicts[0].pure
    }
}

/// Runs all four criteria member by member; any disagreement is an error.
pub fn purity_cross_check<T: Scalar>(
    seq: &ShortExactSequence<T>,
    class: &ModuleClass<T>,
    hom_cap: usize,
) -> Result<CrossCheck<T>> {
    let mut enumerated = Some(true);
    for (i, u) in class.members.iter().enumerate() {
        let mut outcomes = Vec::new();
        for c in Criterion::ALL {
            outcomes.push((c, check_member(seq, u, i, c)?.is_ok()));
        }
        if outcomes.iter().any(|(_, v)| *v != outcomes[0].1) {
            return Err(Error::CriteriaDisagree(format!(
                "member {i} ({u}): {}",
                outcomes
                    .iter()
                    .map(|(c, v)| format!("{c}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )));
        }
        match lift_by_enumeration(seq, u, hom_cap) {
            Ok(v) => {
                if v != outcomes[0].1 {
                    return Err(Error::CriteriaDisagree(format!(
                        "member {i} ({u}): enumeration says {v}"
                    )));
                }
            }
            Err(Error::ScaleExceeded { .. }) | Err(Error::InfiniteModule) => enumerated = None,
            Err(e) => return Err(e),
        }
    }
    let verdicts = Criterion::ALL
        .into_iter()
        .map(|c| is_s_pure(seq, class, c))
        .collect::<Result<Vec<_>>>()?;
    let pure = verdicts[0].pure;
    if verdicts.iter().any(|v| v.pure != pure) {
        return Err(Error::CriteriaDisagree("class-level verdicts differ".into()));
    }
    Ok(CrossCheck {
        verdicts,
        enumerated: enumerated.map(|_| pure),
    })
}

/// Result of [`co26_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Co26Report {
    pub members: usize,
    pub pure_sequences: usize,
    pub tensor_checks: usize,
}

/// If `S ⊆ tr(S)`, checks that each member keeps every `S`-pure corpus inclusion injective.
pub fn co26_check<T: Scalar>(class: &ModuleClass<T>, corpus: &[ShortExactSequence<T>]) -> Result<Co26Report> {
    let tr = transpose_class(class);
    if let Some(u) = class.members.iter().find(|u| !tr.contains_iso(u)) {
        return Err(Error::InclusionFails(format!(
            "{u} is not isomorphic to the transpose of any member"
        )));
    }
    let mut report = Co26Report {
        members: class.len(),
        pure_sequences: 0,
        tensor_checks: 0,
    };
    for seq in corpus.iter().filter(|s| s.ring() == &class.ring) {
        if !is_s_pure(seq, class, Criterion::TransposeTensor)?.pure {
            continue;
        }
        report.pure_sequences += 1;
        for u in &class.members {
            report.tensor_checks += 1;
            if !u.identity().tensor(&seq.incl)?.is_injective() {
                return Err(Error::TheoryViolation(format!(
                    "{u} ⊗ − is not injective on a pure inclusion"
                )));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
