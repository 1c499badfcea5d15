//! Incremental row echelon basis.
//!
//! Rows are reduced against the basis in insertion order; each stored row
//! is normalized so its pivot (first nonzero entry) equals 1. Over `F_2`
//! rows are bit-packed.

use alloc::vec;
use alloc::vec::Vec;

use super::{dot, DenseMatrix, SparseMatrix};
use crate::ffield::{Fq, PrimeField};

#[derive(Clone, Debug)]
enum Store {
    Words { rows: Vec<Vec<Fq>>, acc: Vec<u64> },
    Bits { rows: Vec<Vec<u64>>, words: usize, scratch: Vec<u64> },
}

#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    cols: usize,
    pivots: Vec<usize>,
    store: Store,
}

impl Echelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        let store = if field.q() == 2 {
            let words = cols.div_ceil(64);
            Store::Bits { rows: Vec::new(), words, scratch: vec![0; words] }
        } else {
            Store::Words { rows: Vec::new(), acc: vec![0; cols] }
        };
        Echelon { field, cols, pivots: Vec::new(), store }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `row` against the basis and keep it if independent.
    pub fn insert(&mut self, row: &[Fq]) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        match &mut self.store {
            Store::Words { acc, .. } => {
                for (a, &x) in acc.iter_mut().zip(row) {
                    *a = x as u64;
                }
            }
            Store::Bits { scratch, .. } => {
                scratch.iter_mut().for_each(|w| *w = 0);
                for (j, &x) in row.iter().enumerate() {
                    if x & 1 == 1 {
                        scratch[j / 64] |= 1 << (j % 64);
                    }
                }
            }
        }
        self.reduce_loaded()
    }

    /// Same as [`Echelon::insert`] for a sparse row of `(column, value)` pairs.
    pub fn insert_sparse(&mut self, row: &[(u32, Fq)]) -> bool {
        match &mut self.store {
            Store::Words { acc, .. } => {
                acc.iter_mut().for_each(|a| *a = 0);
                for &(j, x) in row {
                    acc[j as usize] = x as u64;
                }
            }
            Store::Bits { scratch, .. } => {
                scratch.iter_mut().for_each(|w| *w = 0);
                for &(j, x) in row {
                    if x & 1 == 1 {
                        scratch[j as usize / 64] |= 1 << (j % 64);
                    }
                }
            }
        }
        self.reduce_loaded()
    }

    fn reduce_loaded(&mut self) -> bool {
        let f = self.field;
        match &mut self.store {
            Store::Words { rows, acc } => {
                let q = f.q() as u64;
                for (b, &p) in rows.iter().zip(&self.pivots) {
                    let v = acc[p] % q;
                    if v == 0 {
                        continue;
                    }
                    let g = q - v;
                    // entries stay below 2^64: at most `cols` additions of (q-1)^2
                    for (a, &x) in acc[p..].iter_mut().zip(&b[p..]) {
                        *a += g * x as u64;
                    }
                }
                let mut lead = None;
                for (j, a) in acc.iter_mut().enumerate() {
                    *a %= q;
                    if lead.is_none() && *a != 0 {
                        lead = Some(j);
                    }
                }
                let Some(p) = lead else {
                    return false;
                };
                let inv = f.inv(acc[p] as Fq) as u64;
                let mut row = vec![0 as Fq; self.cols];
                for j in p..self.cols {
                    row[j] = ((acc[j] * inv) % q) as Fq;
                }
                rows.push(row);
                self.pivots.push(p);
                true
            }
            Store::Bits { rows, words, scratch } => {
                for (b, &p) in rows.iter().zip(&self.pivots) {
                    if scratch[p / 64] >> (p % 64) & 1 == 1 {
                        let w0 = p / 64;
                        for (s, &x) in scratch[w0..].iter_mut().zip(&b[w0..]) {
                            *s ^= x;
                        }
                    }
                }
                let Some(w) = scratch.iter().position(|&x| x != 0) else {
                    return false;
                };
                let p = w * 64 + scratch[w].trailing_zeros() as usize;
                debug_assert_eq!(*words, scratch.len());
                rows.push(scratch.clone());
                self.pivots.push(p);
                true
            }
        }
    }

    /// Basis rows, in insertion order, as dense vectors.
    pub fn rows(&self) -> Vec<Vec<Fq>> {
        match &self.store {
            Store::Words { rows, .. } => rows.clone(),
            Store::Bits { rows, .. } => rows.iter().map(|r| unpack(r, self.cols)).collect(),
        }
    }

    /// Reduced row echelon form of the span, rows sorted by pivot.
    pub fn to_rref(&self) -> (DenseMatrix, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.pivots.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        match &self.store {
            Store::Words { rows, .. } => {
                let f = self.field;
                let q = f.q() as u64;
                let mut m: Vec<Vec<Fq>> = order.iter().map(|&i| rows[i].clone()).collect();
                // back substitution from the last pivot upwards
                for i in (0..m.len()).rev() {
                    let p = pivots[i];
                    let (upper, lower) = m.split_at_mut(i);
                    let prow = &lower[0];
                    for row in upper.iter_mut() {
                        let v = row[p] as u64;
                        if v == 0 {
                            continue;
                        }
                        let g = q - v;
                        for (x, &y) in row[p..].iter_mut().zip(&prow[p..]) {
                            *x = ((*x as u64 + g * y as u64) % q) as Fq;
                        }
                    }
                }
                (DenseMatrix::from_rows(f, &m).unwrap_or_else(|_| DenseMatrix::zeros(f, 0, self.cols)), pivots)
            }
            Store::Bits { rows, .. } => {
                let mut m: Vec<Vec<u64>> = order.iter().map(|&i| rows[i].clone()).collect();
                for i in (0..m.len()).rev() {
                    let p = pivots[i];
                    let (upper, lower) = m.split_at_mut(i);
                    let prow = &lower[0];
                    for row in upper.iter_mut() {
                        if row[p / 64] >> (p % 64) & 1 == 1 {
                            for (x, &y) in row[p / 64..].iter_mut().zip(&prow[p / 64..]) {
                                *x ^= y;
                            }
                        }
                    }
                }
                let dense: Vec<Vec<Fq>> = m.iter().map(|r| unpack(r, self.cols)).collect();
                let out = if dense.is_empty() {
                    DenseMatrix::zeros(self.field, 0, self.cols)
                } else {
                    DenseMatrix::from_rows(self.field, &dense).unwrap()
                };
                (out, pivots)
            }
        }
    }

    /// Basis of the right kernel of the inserted rows.
    pub fn kernel_basis(&self) -> Vec<Vec<Fq>> {
        let (m, pivots) = self.to_rref();
        if m.rows() == 0 {
            return (0..self.cols)
                .map(|i| {
                    let mut v = vec![0; self.cols];
                    v[i] = 1;
                    v
                })
                .collect();
        }
        super::kernel_from_rref(&m, &pivots)
    }
}

fn unpack(words: &[u64], cols: usize) -> Vec<Fq> {
    (0..cols).map(|j| (words[j / 64] >> (j % 64) & 1) as Fq).collect()
}

/// A matrix row that can be fed to an [`Echelon`].
pub trait RowView {
    fn insert_into(&self, e: &mut Echelon) -> bool;
    fn dot(&self, f: &PrimeField, v: &[Fq]) -> Fq;
}

impl RowView for &[Fq] {
    fn insert_into(&self, e: &mut Echelon) -> bool {
        e.insert(self)
    }
    fn dot(&self, f: &PrimeField, v: &[Fq]) -> Fq {
        dot(f, self, v)
    }
}

impl RowView for &[(u32, Fq)] {
    fn insert_into(&self, e: &mut Echelon) -> bool {
        e.insert_sparse(self)
    }
    fn dot(&self, f: &PrimeField, v: &[Fq]) -> Fq {
        let q = f.q() as u64;
        let s: u64 = self.iter().map(|&(j, x)| x as u64 * v[j as usize] as u64 % q).sum();
        (s % q) as Fq
    }
}

/// Outcome of [`probe_corank_one`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelProbe {
    /// Exact rank of the matrix.
    pub rank: usize,
    /// Rows fed to the elimination before the early stop.
    pub rows_eliminated: usize,
    /// The kernel generator when the kernel has dimension exactly one.
    pub kernel: Option<Vec<Fq>>,
}

/// Exact rank plus the kernel vector of a matrix expected to have corank 1.
///
/// Elimination stops once the rank reaches `cols - 1`; the remaining rows
/// are then only checked against the kernel vector, which settles whether
/// the rank is `cols - 1` or `cols`.
pub fn probe_corank_one<R: RowView>(
    field: PrimeField,
    cols: usize,
    rows: impl IntoIterator<Item = R>,
) -> KernelProbe {
    let mut e = Echelon::new(field, cols);
    let mut used = 0;
    let mut it = rows.into_iter();
    if cols == 0 {
        return KernelProbe { rank: 0, rows_eliminated: 0, kernel: None };
    }
    while e.rank() + 1 < cols {
        let Some(row) = it.next() else {
            break;
        };
        used += 1;
        row.insert_into(&mut e);
    }
    if e.rank() + 1 < cols {
        return KernelProbe { rank: e.rank(), rows_eliminated: used, kernel: None };
    }
    let v = e.kernel_basis().pop().expect("corank one kernel");
    for row in it {
        if row.dot(&field, &v) != 0 {
            return KernelProbe { rank: cols, rows_eliminated: used, kernel: None };
        }
    }
    KernelProbe { rank: cols - 1, rows_eliminated: used, kernel: Some(v) }
}

impl DenseMatrix {
    /// See [`probe_corank_one`].
    pub fn probe_corank_one(&self) -> KernelProbe {
        probe_corank_one(self.field(), self.cols(), (0..self.rows()).map(|i| self.row(i)))
    }
}

impl SparseMatrix {
    /// See [`probe_corank_one`].
    pub fn probe_corank_one(&self) -> KernelProbe {
        probe_corank_one(self.field(), self.cols(), (0..self.rows()).map(|i| self.row(i)))
    }

    /// Exact rank by incremental elimination.
    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.field(), self.cols());
        for i in 0..self.rows() {
            e.insert_sparse(self.row(i));
            if e.rank() == self.cols() {
                break;
            }
        }
        e.rank()
    }
}
