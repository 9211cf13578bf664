//! Smith normal form with transforms over `Z` and `Z/m`.

use crate::linalg::{IntMatrix, RingSpec};
use crate::scalar::{inv_mod, normalizing_unit, Scalar};

/// `u · original · v = d` with `d` diagonal and a divisibility chain on the diagonal.
///
/// `u_inv` is the inverse of `u` (over the same ring); it is what turns a
/// change of generators back into the original coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition<T> {
    pub ring: RingSpec<T>,
    pub original: IntMatrix<T>,
    pub u: IntMatrix<T>,
    pub u_inv: IntMatrix<T>,
    pub d: IntMatrix<T>,
    pub v: IntMatrix<T>,
}

impl<T: Scalar> SmithDecomposition<T> {
    /// Diagonal entries `d[0], d[1], ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// Re-multiplies and checks `u · original · v = d` plus the divisibility chain.
    pub fn verify(&self) -> bool {
        let m = self.ring.characteristic();
        let lhs = self.u.mul(&self.original).mul(&self.v).reduce_mod(&m);
        if lhs != self.d.reduce_mod(&m) {
            return false;
        }
        let n = self.u.rows();
        if self.u.mul(&self.u_inv).reduce_mod(&m) != IntMatrix::identity(n) {
            return false;
        }
        let diag = self.diagonal();
        let chain = diag.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].mod_floor(&w[0]).is_zero()
            }
        });
        // off-diagonal entries vanish
        let offdiag = (0..self.d.rows()).all(|i| (0..self.d.cols()).all(|j| i == j || self.d.get(i, j).is_zero()));
        chain && offdiag
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
}

impl<T: Scalar> Work<T> {
    // row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &T) {
        for rows in [&mut self.a, &mut self.u] {
            let (src, dst) = pick(rows, t, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d = d.clone() - q.clone() * s.clone();
                }
            }
        }
        // inverse: column t of u_inv += q * column i
        for row in self.u_inv.iter_mut() {
            if !row[i].is_zero() {
                row[t] = row[t].clone() + q.clone() * row[i].clone();
            }
        }
    }

    // col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &T) {
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                if !row[t].is_zero() {
                    row[j] = row[j].clone() - q.clone() * row[t].clone();
                }
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for mat in [&mut self.a, &mut self.v] {
            for row in mat.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *v = -v.clone();
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -row[i].clone();
        }
    }
}

fn pick<T>(rows: &mut [Vec<T>], src: usize, dst: usize) -> (&Vec<T>, &mut Vec<T>) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = rows.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

fn to_rows<T: Scalar>(m: &IntMatrix<T>) -> Vec<Vec<T>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

fn from_rows<T: Scalar>(rows: Vec<Vec<T>>, cols: usize) -> IntMatrix<T> {
    let r = rows.len();
    IntMatrix::from_vec(r, cols, rows.into_iter().flatten().collect())
}

/// Smallest nonzero absolute value in the trailing block, ties by lowest `(row, col)`.
fn find_pivot<T: Scalar>(a: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| av < *b) {
                best = Some((i, j, av));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn integer_snf<T: Scalar>(a: &IntMatrix<T>) -> (IntMatrix<T>, IntMatrix<T>, IntMatrix<T>, IntMatrix<T>) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        a: to_rows(a),
        u: to_rows(&IntMatrix::identity(rows)),
        u_inv: to_rows(&IntMatrix::identity(rows)),
        v: to_rows(&IntMatrix::identity(cols)),
    };
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&w.a, t) else {
                return finish(w, rows, cols);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].clone() / w.a[t][t].clone();
                    w.row_axpy(i, t, &q);
                    clean &= w.a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].clone() / w.a[t][t].clone();
                    w.col_axpy(j, t, &q);
                    clean &= w.a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let p = w.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| w.a[i][t + 1..].iter().any(|v| !v.mod_floor(&p).is_zero()));
            match bad {
                Some(i) => {
                    // row_t += row_i
                    w.row_axpy(t, i, &-T::one());
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w, rows, cols)
}

fn finish<T: Scalar>(w: Work<T>, rows: usize, cols: usize) -> (IntMatrix<T>, IntMatrix<T>, IntMatrix<T>, IntMatrix<T>) {
    (
        from_rows(w.u, rows),
        from_rows(w.u_inv, rows),
        from_rows(w.a, cols),
        from_rows(w.v, cols),
    )
}

/// Smith normal form of `a` over `ring`.
///
/// Over `Z/m` the integer form of a lift is computed first; each diagonal
/// entry `d` is then replaced by its associate `gcd(d, m)` by scaling the
/// corresponding row of `u` with a unit.
pub fn smith_normal_form<T: Scalar>(a: &IntMatrix<T>, ring: &RingSpec<T>) -> SmithDecomposition<T> {
    let lifted = match ring {
        RingSpec::Integers => a.clone(),
        RingSpec::IntegersMod(m) => a.reduce_mod(m),
    };
    let (mut u, mut u_inv, mut d, v) = integer_snf(&lifted);
    let mut v = v;
    if let RingSpec::IntegersMod(m) = ring {
        for i in 0..d.rows().min(d.cols()) {
            let di = d.get(i, i).clone();
            let unit = normalizing_unit(&di, m);
            let unit_inv = inv_mod(&unit, m).expect("normalizing unit is a unit");
            d.set(i, i, (di * unit.clone()).mod_floor(m));
            for j in 0..u.cols() {
                let x = u.get(i, j).clone() * unit.clone();
                u.set(i, j, x);
            }
            for r in 0..u_inv.rows() {
                let x = u_inv.get(r, i).clone() * unit_inv.clone();
                u_inv.set(r, i, x);
            }
        }
        u = u.reduce_mod(m);
        u_inv = u_inv.reduce_mod(m);
        v = v.reduce_mod(m);
        d = d.reduce_mod(m);
        // gcd(d_i, m) | gcd(d_{i+1}, m) and only multiples of m reduce to 0,
        // so zeros stay at the tail of the chain.
    }
    SmithDecomposition {
        ring: ring.clone(),
        original: a.clone(),
        u,
        u_inv,
        d,
        v,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> RingSpec<i64> {
        RingSpec::Integers
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let a = IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]);
        let s = smith_normal_form(&a, &z());
        assert!(s.verify());
        assert_eq!(s.diagonal(), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_keeps_identities() {
        let a = IntMatrix::<i64>::zeros(2, 2);
        let s = smith_normal_form(&a, &z());
        assert_eq!(s.d, IntMatrix::zeros(2, 2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn two_four_six_eight() {
        let a = IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]);
        let s = smith_normal_form(&a, &z());
        assert!(s.verify());
        assert_eq!(s.diagonal(), vec![2, 4]);
    }

    #[test]
    fn modular_form_uses_gcd_with_modulus() {
        let ring = RingSpec::IntegersMod(12);
        let a = IntMatrix::from_i64(2, 3, &[4, 6, 0, 10, 8, 9]);
        let s = smith_normal_form(&a, &ring);
        assert!(s.verify());
        for d in s.diagonal() {
            assert!(d == 0 || 12 % d == 0, "{d} does not divide 12");
        }
    }

    #[test]
    fn rectangular_shapes() {
        for (r, c, e) in [
            (1, 3, vec![6, 10, 15]),
            (3, 1, vec![4, 6, 0]),
            (2, 3, vec![0, 0, 0, 0, 0, 7]),
            (0, 2, vec![]),
            (2, 0, vec![]),
        ] {
            let a = IntMatrix::<i64>::from_i64(r, c, &e);
            let s = smith_normal_form(&a, &z());
            assert!(s.verify(), "{a}");
        }
    }
}
