use std::collections::{BTreeSet, HashMap};

use crate::error::scale;
use crate::linalg::IntMatrix;
use crate::scalar::{factorize, from_usize, pow, reduce, Scalar};
use crate::{Error, Result};

use super::FpModule;

impl<T: Scalar> FpModule<T> {
    /// Orders of the primary cyclic summands `R/(p^e)`, ascending; `0` marks a copy of `Z`.
    pub fn primary_orders(&self) -> Vec<T> {
        let mut out = Vec::new();
        for d in self.orders() {
            if d.is_zero() {
                out.push(T::zero());
            } else {
                out.extend(factorize(d).into_iter().map(|(p, e)| pow(&p, e)));
            }
        }
        out.sort();
        out
    }

    /// One generator of every submodule of prime order, in generator coordinates.
    pub fn socle_lines(&self, cap: usize) -> Result<Vec<Vec<T>>> {
        if !self.is_finite() {
            return Err(Error::InfiniteModule);
        }
        let orders = self.orders().to_vec();
        let mut primes: BTreeSet<T> = BTreeSet::new();
        for d in &orders {
            primes.extend(factorize(d).into_iter().map(|(p, _)| p));
        }
        let mut out = Vec::new();
        for p in primes {
            // p-torsion basis: (d_i / p)·e_i
            let basis: Vec<usize> = (0..orders.len())
                .filter(|&i| orders[i].mod_floor(&p).is_zero())
                .collect();
            let pu = p.to_usize().unwrap_or(usize::MAX);
            let mut count: usize = 0;
            for lead in 0..basis.len() {
                let free = basis.len() - lead - 1;
                count = count.saturating_add(pu.saturating_pow(free as u32));
            }
            if out.len().saturating_add(count) > cap {
                return Err(scale("socle lines", out.len().saturating_add(count), cap));
            }
            for lead in 0..basis.len() {
                let rest = basis.len() - lead - 1;
                for tail in digit_tuples(pu, rest) {
                    let mut c = vec![T::zero(); orders.len()];
                    c[basis[lead]] = orders[basis[lead]].clone() / p.clone();
                    for (k, t) in tail.iter().enumerate() {
                        let i = basis[lead + 1 + k];
                        c[i] = from_usize::<T>(*t) * (orders[i].clone() / p.clone());
                    }
                    out.push(self.from_canonical_coords(&c));
                }
            }
        }
        Ok(out)
    }

    /// Generator matrices of every submodule containing the columns of `base`,
    /// ordered by size and then by sorted element list.
    pub fn submodules_containing(&self, base: &IntMatrix<T>, cap: usize) -> Result<Vec<IntMatrix<T>>> {
        let table = ElementTable::new(self, cap)?;
        let start = base
            .columns()
            .iter()
            .fold(table.zero_subgroup(), |s, c| table.join(&s, table.index_of(self, c)));
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue = vec![start.clone()];
        seen.insert(start);
        while let Some(s) = queue.pop() {
            for x in 0..table.len() {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let t = table.join(&s, x);
                if seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        let mut subs: Vec<Vec<usize>> = seen.into_iter().collect();
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(subs
            .iter()
            .map(|s| {
                let mut gens = base.columns();
                let mut span = base.columns().iter().fold(table.zero_subgroup(), |acc, c| {
                    table.join(&acc, table.index_of(self, c))
                });
                for &x in s {
                    if span.binary_search(&x).is_err() {
                        span = table.join(&span, x);
                        gens.push(self.from_canonical_coords(&table.elems[x]));
                    }
                }
                IntMatrix::from_cols(self.gens(), &gens)
            })
            .collect())
    }
}

fn digit_tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |d| {
                    let mut u = t.clone();
                    u.push(d);
                    u
                })
            })
            .collect();
    }
    out
}

/// Elements of a finite module in summand coordinates, with an index.
struct ElementTable<T> {
    orders: Vec<T>,
    elems: Vec<Vec<T>>,
    index: HashMap<Vec<T>, usize>,
}

impl<T: Scalar> ElementTable<T> {
    fn new(m: &FpModule<T>, cap: usize) -> Result<Self> {
        let orders = m.orders().to_vec();
        let size = m.order().ok_or(Error::InfiniteModule)?;
        if size > from_usize(cap) {
            return Err(scale("submodule enumeration", size, cap));
        }
        let elems: Vec<Vec<T>> = super::module::coordinate_tuples(&orders, cap)?;
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Self { orders, elems, index })
    }

    fn len(&self) -> usize {
        self.elems.len()
    }

    fn index_of(&self, m: &FpModule<T>, x: &[T]) -> usize {
        self.index[&m.canonical_coords(x)]
    }

    fn add(&self, i: usize, j: usize) -> usize {
        let s: Vec<T> = self.elems[i]
            .iter()
            .zip(&self.elems[j])
            .zip(&self.orders)
            .map(|((a, b), d)| reduce(&(a.clone() + b.clone()), d))
            .collect();
        self.index[&s]
    }

    fn zero_subgroup(&self) -> Vec<usize> {
        vec![self.index[&vec![T::zero(); self.orders.len()]]]
    }

    /// `S + ⟨x⟩` for a subgroup `S` given as a sorted index list.
    fn join(&self, s: &[usize], x: usize) -> Vec<usize> {
        if s.binary_search(&x).is_ok() {
            return s.to_vec();
        }
        let zero = self.zero_subgroup()[0];
        let mut multiples = vec![zero];
        let mut cur = x;
        while cur != zero {
            multiples.push(cur);
            cur = self.add(cur, x);
        }
        let mut out: BTreeSet<usize> = BTreeSet::new();
        for &a in s {
            for &k in &multiples {
                out.insert(self.add(a, k));
            }
        }
        out.into_iter().collect()
    }
}
