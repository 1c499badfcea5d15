use alloc::vec::Vec;

use super::DenseMatrix;
use crate::ffield::{Fq, PrimeField};

/// Row-compressed sparse matrix. Within a row, column indices are strictly
/// increasing and values are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<(u32, Fq)>>,
}

impl SparseMatrix {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        SparseMatrix { field, cols, rows: Vec::new() }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(u32, Fq)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Append a row given as unsorted `(column, value)` pairs. Duplicate
    /// columns are summed and zeros dropped.
    pub fn push_row(&mut self, mut entries: Vec<(u32, Fq)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let f = self.field;
        let mut out: Vec<(u32, Fq)> = Vec::with_capacity(entries.len());
        for (j, v) in entries {
            debug_assert!((j as usize) < self.cols);
            match out.last_mut() {
                Some(last) if last.0 == j => last.1 = f.add(last.1, v % f.q()),
                _ => out.push((j, v % f.q())),
            }
        }
        out.retain(|e| e.1 != 0);
        self.rows.push(out);
    }

    pub fn mul_vec(&self, v: &[Fq]) -> Vec<Fq> {
        let q = self.field.q() as u64;
        self.rows
            .iter()
            .map(|r| {
                let s: u64 = r.iter().map(|&(j, x)| x as u64 * v[j as usize] as u64).sum();
                (s % q) as Fq
            })
            .collect()
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let mut s = SparseMatrix::new(m.field(), m.cols());
        for i in 0..m.rows() {
            let row = m.row(i).iter().enumerate().filter(|e| *e.1 != 0).map(|(j, &x)| (j as u32, x)).collect();
            s.rows.push(row);
        }
        s
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.field, self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, x) in r {
                m.set(i, j as usize, x);
            }
        }
        m
    }

    /// Random matrix with roughly `per_row` nonzeros in each row.
    pub fn random<R: rand::Rng + ?Sized>(field: PrimeField, rows: usize, cols: usize, per_row: usize, rng: &mut R) -> Self {
        let mut s = SparseMatrix::new(field, cols);
        for _ in 0..rows {
            let entries = (0..per_row).map(|_| (rng.gen_range(0..cols) as u32, field.random_nonzero(rng))).collect();
            s.push_row(entries);
        }
        s
    }

    pub fn is_kernel_vector(&self, v: &[Fq]) -> bool {
        self.mul_vec(v).iter().all(|&x| x == 0)
    }
}
