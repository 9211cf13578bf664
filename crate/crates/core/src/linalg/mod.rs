//! Exact integer and modular linear algebra.

mod matrix;
mod ring;
mod smith;
mod solve;

pub use matrix::IntMatrix;
pub use ring::RingSpec;
pub use smith::{smith_normal_form, SmithDecomposition};
pub use solve::{kernel_basis, lattice_basis, solve_linear, solve_or_certify, Infeasibility, LinearSolution, Solver};

/// Equations `sum_i r[i][j] * x_i = a_j` for `j` in `0..n`.
///
/// `coefficients` is the `k x n` matrix `(r_ij)`; each constant `a_j` is a
/// coordinate vector of an element of whatever module the system is posed in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem<T> {
    pub coefficients: IntMatrix<T>,
    pub constants: Vec<Vec<T>>,
}

impl<T> LinearSystem<T> {
    pub fn unknown_count(&self) -> usize {
        self.coefficients.rows()
    }

    pub fn equation_count(&self) -> usize {
        self.coefficients.cols()
    }
}
