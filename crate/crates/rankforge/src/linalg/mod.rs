//! Exact linear algebra over prime fields.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::ffield::{Fq, PrimeField};
use crate::{Error, Result};

mod echelon;
pub mod ext;
mod gf2;
mod sparse;
mod wiedemann;

pub use echelon::{probe_corank_one, Echelon, KernelProbe, RowView};
pub use sparse::SparseMatrix;
pub use wiedemann::{berlekamp_massey, wiedemann_kernel_element, WiedemannConfig};

/// Row-major dense matrix over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: DenseMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        DenseMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<Fq>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidDimensions("data length differs from rows * cols"));
        }
        if data.iter().any(|&x| x >= field.q()) {
            return Err(Error::FieldMismatch);
        }
        Ok(DenseMatrix { field, rows, cols, data })
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<Fq>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDimensions("ragged rows"));
        }
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_vec(field, rows.len(), cols, data)
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        DenseMatrix { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Fq] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        debug_assert!(v < self.field.q());
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [Fq] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> DenseMatrix {
        let mut s = Self::zeros(self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.set(a, b, self.get(i, j));
            }
        }
        s
    }

    pub fn mul_vec(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows).map(|i| dot(&self.field, self.row(i), v)).collect()
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let f = self.field;
        let q = f.q() as u64;
        let mut out = Self::zeros(f, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (s, &b) in acc.iter_mut().zip(other.row(k)) {
                    *s += a as u64 * b as u64;
                }
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|s| *s %= q);
                }
            }
            for (o, s) in out.row_mut(i).iter_mut().zip(&acc) {
                *o = (s % q) as Fq;
            }
        }
        out
    }

    pub fn add(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.field.add(a, b)).collect();
        DenseMatrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Fq) -> DenseMatrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, c)).collect();
        DenseMatrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form. The pivot of each step is the first
    /// nonzero entry of the leftmost remaining column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = if self.field.q() == 2 {
            gf2::rref_in_place(&mut m)
        } else {
            rref_in_place(&mut m)
        };
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.field.q() == 2 {
            return gf2::rank(self);
        }
        let mut e = Echelon::new(self.field, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i));
            if e.rank() == self.cols {
                break;
            }
        }
        e.rank()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn right_kernel(&self) -> Vec<Vec<Fq>> {
        let r = self.rref();
        kernel_from_rref(&r.matrix, &r.pivots)
    }

    /// Some solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Fq]) -> Option<Vec<Fq>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Self::zeros(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            aug.row_mut(i)[..self.cols].copy_from_slice(self.row(i));
            aug.set(i, self.cols, b[i]);
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix.get(i, self.cols);
        }
        Some(x)
    }
}

impl DenseMatrix {
    /// Determinant of a square matrix.
    pub fn det(&self) -> Fq {
        assert_eq!(self.rows, self.cols, "square matrix");
        let f = self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut det: Fq = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a.get(i, c) != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = a.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv);
            for i in c + 1..n {
                let g = f.mul(a.get(i, c), inv);
                if g == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(a.get(i, j), f.mul(g, a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    /// All maximal minors `det(M[.., T])` of a wide matrix, with `T`
    /// running over the `rows`-subsets of the columns in lexicographic order.
    pub fn maximal_minors(&self) -> Vec<Fq> {
        let rows: Vec<usize> = (0..self.rows).collect();
        crate::combin::subsets(self.cols, self.rows)
            .iter()
            .map(|t| self.submatrix(&rows, t).det())
            .collect()
    }
}

#[inline]
pub fn dot(f: &PrimeField, a: &[Fq], b: &[Fq]) -> Fq {
    let q = f.q() as u64;
    let mut acc = 0u64;
    for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
        acc += x as u64 * y as u64;
        if i % 4096 == 4095 {
            acc %= q;
        }
    }
    (acc % q) as Fq
}

fn rref_in_place(m: &mut DenseMatrix) -> Vec<usize> {
    let f = m.field;
    let q = f.q() as u64;
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c));
        for x in m.row_mut(r)[c..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let (head, tail) = m.data.split_at_mut(r * cols);
        let (prow, rest) = tail.split_at_mut(cols);
        let eliminate = |row: &mut [Fq]| {
            let v = row[c] as u64;
            if v == 0 {
                return;
            }
            let g = q - v;
            for (x, &y) in row[c..].iter_mut().zip(&prow[c..]) {
                *x = ((*x as u64 + g * y as u64) % q) as Fq;
            }
        };
        for row in head.chunks_mut(cols) {
            eliminate(row);
        }
        for row in rest.chunks_mut(cols) {
            eliminate(row);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel basis read off a matrix in reduced row echelon form.
pub(crate) fn kernel_from_rref(m: &DenseMatrix, pivots: &[usize]) -> Vec<Vec<Fq>> {
    let f = m.field;
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(m.get(i, free));
        }
        basis.push(v);
    }
    basis
}
