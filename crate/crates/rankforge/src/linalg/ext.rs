//! Small dense linear algebra over `F_{q^m}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::{ExtElement, ExtField};

/// Row-major matrix over an extension field.
pub type ExtMatrix = Vec<Vec<ExtElement>>;

/// Gauss-Jordan elimination in place; returns the pivot columns.
pub fn rref(field: &ExtField, m: &mut ExtMatrix, cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = field.inv(&m[r][c]);
        for x in m[r][c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                *x = field.sub(x, &field.mul(&g, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &ExtField, m: &ExtMatrix, cols: usize) -> usize {
    let mut a = m.clone();
    rref(field, &mut a, cols).len()
}

/// Basis of `{v : M v = 0}`.
pub fn right_kernel(field: &ExtField, m: &ExtMatrix, cols: usize) -> Vec<Vec<ExtElement>> {
    let mut a = m.clone();
    let pivots = rref(field, &mut a, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(&a[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// Basis of `{s : s M = 0}`.
pub fn left_kernel(field: &ExtField, m: &ExtMatrix, cols: usize) -> Vec<Vec<ExtElement>> {
    right_kernel(field, &transpose(m, cols), m.len())
}

pub fn transpose(m: &ExtMatrix, cols: usize) -> ExtMatrix {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Some `x` with `A x = b`, or `None` if inconsistent.
pub fn solve(field: &ExtField, a: &ExtMatrix, cols: usize, b: &[ExtElement]) -> Option<Vec<ExtElement>> {
    let mut aug: ExtMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(field, &mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![field.zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some(x)
}

/// Product `v M` of a row vector with a matrix.
pub fn vec_mul(field: &ExtField, v: &[ExtElement], m: &ExtMatrix, cols: usize) -> Vec<ExtElement> {
    let mut out = vec![field.zero(); cols];
    for (vi, row) in v.iter().zip(m) {
        if vi.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o = field.add(o, &field.mul(vi, x));
        }
    }
    out
}
