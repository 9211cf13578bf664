//! Exact solving of `A·x = b` over `Z` and `Z/m`.
//!
//! Systems over `Z/m` are lifted to `[A | m·I]` over `Z`, so one integer
//! Smith engine decides both rings.

use crate::linalg::{smith_normal_form, IntMatrix, RingSpec};
use crate::scalar::{divides, reduce, Scalar};

/// A rational row vector `y = multiplier / denominator` with `y·A` integral
/// and `y·b` not: no integer solution can exist.
///
/// Over `Z/m` the certificate refers to the lifted system `[A | m·I]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infeasibility<T> {
    pub multiplier: Vec<T>,
    pub denominator: T,
}

impl<T: Scalar> Infeasibility<T> {
    /// Plain arithmetic check, independent of any elimination.
    pub fn verify(&self, a: &IntMatrix<T>, b: &[T], ring: &RingSpec<T>) -> bool {
        if self.multiplier.len() != a.rows() || b.len() != a.rows() || self.denominator <= T::one() {
            return false;
        }
        let q = &self.denominator;
        let row = IntMatrix::from_vec(1, a.rows(), self.multiplier.clone());
        if !row.mul(a).entries().iter().all(|v| divides(q, v)) {
            return false;
        }
        if let RingSpec::IntegersMod(m) = ring {
            if !self.multiplier.iter().all(|y| divides(q, &(y.clone() * m.clone()))) {
                return false;
            }
        }
        let yb = row.mul_vec(b)[0].clone();
        !divides(q, &yb)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSolution<T> {
    pub particular: Vec<T>,
    /// Columns generate `{x : A·x = 0}` over the ring.
    pub nullspace: IntMatrix<T>,
}

/// A factored coefficient matrix answering many right-hand sides.
#[derive(Debug, Clone)]
pub struct Solver<T> {
    ring: RingSpec<T>,
    unknowns: usize,
    rows: usize,
    u: IntMatrix<T>,
    v: IntMatrix<T>,
    diag: Vec<T>,
}

impl<T: Scalar> Solver<T> {
    pub fn new(a: &IntMatrix<T>, ring: &RingSpec<T>) -> Self {
        let lifted = match ring {
            RingSpec::Integers => a.clone(),
            RingSpec::IntegersMod(m) => a.reduce_mod(m).hstack(&IntMatrix::identity(a.rows()).scale(m)),
        };
        let snf = smith_normal_form(&lifted, &RingSpec::Integers);
        let rank = snf.rank();
        let diag = snf.diagonal()[..rank].to_vec();
        Self {
            ring: ring.clone(),
            unknowns: a.cols(),
            rows: a.rows(),
            u: snf.u,
            v: snf.v,
            diag,
        }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// A particular solution, or a certificate that none exists.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>, Infeasibility<T>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let c = self.u.mul_vec(b);
        let mut y = vec![T::zero(); self.v.rows()];
        for (i, ci) in c.iter().enumerate() {
            if i < self.diag.len() {
                let d = &self.diag[i];
                if !divides(d, ci) {
                    return Err(Infeasibility {
                        multiplier: self.u.row(i),
                        denominator: d.clone(),
                    });
                }
                y[i] = ci.clone() / d.clone();
            } else if !ci.is_zero() {
                return Err(Infeasibility {
                    multiplier: self.u.row(i),
                    denominator: ci.abs() + T::one(),
                });
            }
        }
        let full = self.v.mul_vec(&y);
        let m = self.ring.characteristic();
        Ok(full[..self.unknowns].iter().map(|x| reduce(x, &m)).collect())
    }

    pub fn is_solvable(&self, b: &[T]) -> bool {
        self.solve(b).is_ok()
    }

    pub fn nullspace(&self) -> IntMatrix<T> {
        let m = self.ring.characteristic();
        let mut cols = Vec::new();
        for j in self.rank()..self.v.cols() {
            let col: Vec<T> = (0..self.unknowns).map(|i| reduce(self.v.get(i, j), &m)).collect();
            if col.iter().any(|x| !x.is_zero()) && !cols.contains(&col) {
                cols.push(col);
            }
        }
        IntMatrix::from_cols(self.unknowns, &cols)
    }
}

/// Solves `a·x = b` over `ring`: a particular solution plus nullspace generators.
pub fn solve_linear<T: Scalar>(a: &IntMatrix<T>, b: &[T], ring: &RingSpec<T>) -> Option<LinearSolution<T>> {
    solve_or_certify(a, b, ring).ok()
}

/// Like [`solve_linear`], returning an infeasibility certificate on failure.
pub fn solve_or_certify<T: Scalar>(
    a: &IntMatrix<T>,
    b: &[T],
    ring: &RingSpec<T>,
) -> Result<LinearSolution<T>, Infeasibility<T>> {
    let solver = Solver::new(a, ring);
    let particular = solver.solve(b)?;
    Ok(LinearSolution {
        particular,
        nullspace: solver.nullspace(),
    })
}

/// Columns generating `{x : a·x = 0}` over `ring`.
pub fn kernel_basis<T: Scalar>(a: &IntMatrix<T>, ring: &RingSpec<T>) -> IntMatrix<T> {
    Solver::new(a, ring).nullspace()
}

/// A basis of the integer lattice spanned by the columns of `gens`.
pub fn lattice_basis<T: Scalar>(gens: &IntMatrix<T>) -> IntMatrix<T> {
    let snf = smith_normal_form(gens, &RingSpec::Integers);
    let rank = snf.rank();
    let diag = snf.diagonal();
    let cols: Vec<Vec<T>> = (0..rank)
        .map(|j| snf.u_inv.column(j).into_iter().map(|x| x * diag[j].clone()).collect())
        .collect();
    IntMatrix::from_cols(gens.rows(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(m: i64) -> RingSpec<i64> {
        RingSpec::IntegersMod(m)
    }

    #[test]
    fn two_x_equals_one_mod_four() {
        let a = IntMatrix::from_i64(1, 1, &[2]);
        let err = solve_or_certify(&a, &[1], &zmod(4)).unwrap_err();
        assert!(err.verify(&a, &[1], &zmod(4)));
    }

    #[test]
    fn two_x_equals_zero_over_z() {
        let a = IntMatrix::from_i64(1, 1, &[2]);
        let s = solve_linear(&a, &[0], &RingSpec::Integers).unwrap();
        assert_eq!(s.particular, vec![0]);
        assert_eq!(s.nullspace.cols(), 0);
    }

    #[test]
    fn two_x_equals_two_mod_four() {
        // enumerate residues: x in {1, 3}
        let a = IntMatrix::from_i64(1, 1, &[2]);
        let s = solve_linear(&a, &[2], &zmod(4)).unwrap();
        assert!([1, 3].contains(&s.particular[0]));
        assert_eq!(s.nullspace, IntMatrix::from_i64(1, 1, &[2]));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::<i64>::from_i64(1, 1, &[2]), &RingSpec::Integers);
        assert_eq!(k.cols(), 0);
        let k = kernel_basis(&IntMatrix::from_i64(1, 1, &[2]), &zmod(4));
        assert_eq!(k, IntMatrix::from_i64(1, 1, &[2]));
        let k = kernel_basis(&IntMatrix::<i64>::from_i64(1, 2, &[1, 0]), &RingSpec::Integers);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0)[0], 0);
        assert_eq!(k.column(0)[1].abs(), 1);
    }

    #[test]
    fn lattice_basis_spans_same_lattice() {
        let g = IntMatrix::<i64>::from_i64(2, 3, &[2, 4, 6, 0, 6, 3]);
        let b = lattice_basis(&g);
        assert_eq!(b.cols(), 2);
        let sg = Solver::new(&g, &RingSpec::Integers);
        let sb = Solver::new(&b, &RingSpec::Integers);
        for c in b.columns() {
            assert!(sg.is_solvable(&c));
        }
        for c in g.columns() {
            assert!(sb.is_solvable(&c));
        }
    }

    use proptest::prelude::*;

    fn all_vectors(m: i64, k: usize) -> Vec<Vec<i64>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..m).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    proptest! {
        #[test]
        fn modular_verdict_matches_enumeration(
            m in 2i64..13,
            rows in 1usize..4,
            cols in 1usize..4,
            seed in proptest::collection::vec(0i64..1000, 16),
        ) {
            let ring = zmod(m);
            let a = IntMatrix::from_vec(rows, cols, (0..rows * cols).map(|i| seed[i] % m).collect());
            let b: Vec<i64> = (0..rows).map(|i| seed[12 + i] % m).collect();
            let brute = all_vectors(m, cols).into_iter().any(|x| {
                a.mul_vec(&x).iter().zip(&b).all(|(l, r)| (l - r).rem_euclid(m) == 0)
            });
            match solve_or_certify(&a, &b, &ring) {
                Ok(sol) => {
                    prop_assert!(brute);
                    let ax = a.mul_vec(&sol.particular);
                    prop_assert!(ax.iter().zip(&b).all(|(l, r)| (l - r).rem_euclid(m) == 0));
                    for v in sol.nullspace.columns() {
                        prop_assert!(a.mul_vec(&v).iter().all(|x| x.rem_euclid(m) == 0));
                    }
                    // nullspace generators reach every homogeneous solution
                    let kernel_size = all_vectors(m, cols).into_iter()
                        .filter(|x| a.mul_vec(x).iter().all(|v| v.rem_euclid(m) == 0))
                        .count();
                    let mut span = std::collections::HashSet::new();
                    span.insert(vec![0i64; cols]);
                    loop {
                        let before = span.len();
                        let cur: Vec<Vec<i64>> = span.iter().cloned().collect();
                        for x in cur {
                            for v in sol.nullspace.columns() {
                                span.insert(x.iter().zip(&v).map(|(p, q)| (p + q).rem_euclid(m)).collect());
                            }
                        }
                        if span.len() == before {
                            break;
                        }
                    }
                    prop_assert_eq!(span.len(), kernel_size);
                }
                Err(cert) => {
                    prop_assert!(!brute);
                    prop_assert!(cert.verify(&a, &b, &ring));
                }
            }
        }

        #[test]
        fn integer_certificates_verify(
            entries in proptest::collection::vec(-6i64..7, 6),
            b in proptest::collection::vec(-6i64..7, 2),
        ) {
            let a = IntMatrix::from_vec(2, 3, entries);
            let ring = RingSpec::Integers;
            match solve_or_certify(&a, &b, &ring) {
                Ok(sol) => prop_assert_eq!(a.mul_vec(&sol.particular), b),
                Err(cert) => prop_assert!(cert.verify(&a, &b, &ring)),
            }
        }
    }
}
