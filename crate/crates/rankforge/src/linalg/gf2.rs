//! Bit-packed elimination over `F_2`.

use alloc::vec;
use alloc::vec::Vec;

use super::DenseMatrix;

struct Packed {
    words: usize,
    data: Vec<u64>,
}

impl Packed {
    fn from_dense(m: &DenseMatrix) -> Self {
        let words = m.cols().div_ceil(64).max(1);
        let mut data = vec![0u64; words * m.rows()];
        for i in 0..m.rows() {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x == 1 {
                    data[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Packed { words, data }
    }

    #[inline]
    fn bit(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Gauss-Jordan elimination; returns pivot columns.
    fn rref(&mut self, rows: usize, cols: usize, full: bool) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.bit(i, c)) else {
                continue;
            };
            if p != r {
                for k in 0..w {
                    self.data.swap(p * w + k, r * w + k);
                }
            }
            let w0 = c / 64;
            let (head, tail) = self.data.split_at_mut(r * w);
            let (prow, rest) = tail.split_at_mut(w);
            let elim = |row: &mut [u64]| {
                if row[w0] >> (c % 64) & 1 == 1 {
                    for (x, &y) in row[w0..].iter_mut().zip(&prow[w0..]) {
                        *x ^= y;
                    }
                }
            };
            if full {
                head.chunks_mut(w).for_each(elim);
            }
            rest.chunks_mut(w).for_each(elim);
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

pub(super) fn rref_in_place(m: &mut DenseMatrix) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut p = Packed::from_dense(m);
    let pivots = p.rref(rows, cols, true);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, p.bit(i, j) as u32);
        }
    }
    pivots
}

pub(super) fn rank(m: &DenseMatrix) -> usize {
    let mut p = Packed::from_dense(m);
    p.rref(m.rows(), m.cols(), false).len()
}
