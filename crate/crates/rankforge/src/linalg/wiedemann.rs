//! Wiedemann's black-box kernel solver.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use super::{dot, SparseMatrix};
use crate::ffield::{Fq, PrimeField};
use crate::{rng_from_seed, Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct WiedemannConfig {
    /// Attempts with fresh randomness before giving up.
    pub max_attempts: usize,
    /// Least number of attempts that must agree on a unit-constant
    /// minimal polynomial before the kernel is declared trivial.
    pub trivial_confirmations: usize,
    /// Over small fields one attempt misses a nontrivial kernel with
    /// probability about `1 - (1 - 1/q)^2`; enough confirmations are
    /// required to push a false "trivial" verdict below `2^-false_trivial_bits`.
    pub false_trivial_bits: u32,
    /// Extra random rows mixed into each row of the square projector.
    pub projector_weight: usize,
}

impl Default for WiedemannConfig {
    fn default() -> Self {
        WiedemannConfig { max_attempts: 24, trivial_confirmations: 4, false_trivial_bits: 20, projector_weight: 8 }
    }
}

/// Connection polynomial `C` (with `C[0] = 1`) of the shortest linear
/// recurrence generating `s`. Its degree bound is `C.len() - 1`.
pub fn berlekamp_massey(f: &PrimeField, s: &[Fq]) -> Vec<Fq> {
    let mut c: Vec<Fq> = vec![1];
    let mut b: Vec<Fq> = vec![1];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last = 1 as Fq;
    for n in 0..s.len() {
        let mut d = s[n];
        for i in 1..=l.min(c.len() - 1) {
            d = f.add(d, f.mul(c[i], s[n - i]));
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = f.div(d, last);
        let prev = c.clone();
        if c.len() < b.len() + shift {
            c.resize(b.len() + shift, 0);
        }
        for (i, &bi) in b.iter().enumerate() {
            c[i + shift] = f.sub(c[i + shift], f.mul(coef, bi));
        }
        if 2 * l <= n {
            l = n + 1 - l;
            b = prev;
            last = d;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.resize(l + 1, 0);
    c
}

enum Attempt {
    Kernel(Vec<Fq>),
    Nonsingular,
    UnitConstant,
    Failed,
}

fn is_zero(v: &[Fq]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn axpy(f: &PrimeField, y: &mut [Fq], a: Fq, x: &[Fq]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = f.add(*yi, f.mul(a, xi));
    }
}

fn attempt<R: Rng, A: Fn(&[Fq]) -> Vec<Fq>>(f: &PrimeField, n: usize, apply: &A, rng: &mut R) -> Attempt {
    let u: Vec<Fq> = (0..n).map(|_| f.random(rng)).collect();
    let w: Vec<Fq> = (0..n).map(|_| f.random(rng)).collect();
    if is_zero(&w) {
        return Attempt::Failed;
    }
    let mut seq = Vec::with_capacity(2 * n);
    let mut v = w.clone();
    for i in 0..2 * n {
        seq.push(dot(f, &u, &v));
        if i + 1 < 2 * n {
            v = apply(&v);
        }
    }
    let c = berlekamp_massey(f, &seq);
    let l = c.len() - 1;
    if l == 0 {
        return Attempt::Failed;
    }
    // minimal polynomial: reversal of the connection polynomial
    let minpoly: Vec<Fq> = (0..=l).map(|i| c[l - i]).collect();
    let k0 = minpoly.iter().position(|&x| x != 0).unwrap();
    let g = &minpoly[k0..];
    // z = g(A) w by Horner
    let mut z: Vec<Fq> = w.iter().map(|&x| f.mul(x, g[g.len() - 1])).collect();
    for i in (0..g.len() - 1).rev() {
        z = apply(&z);
        axpy(f, &mut z, g[i], &w);
    }
    if k0 == 0 {
        if !is_zero(&z) {
            return Attempt::Failed;
        }
        return if l == n { Attempt::Nonsingular } else { Attempt::UnitConstant };
    }
    if is_zero(&z) {
        return Attempt::Failed;
    }
    for _ in 0..k0 {
        let y = apply(&z);
        if is_zero(&y) {
            return Attempt::Kernel(z);
        }
        z = y;
    }
    Attempt::Failed
}

/// A nonzero `v` with `M v = 0`.
///
/// Returns `Ok(None)` when the kernel is trivial: this is proven when the
/// recovered minimal polynomial has full degree with a nonzero constant
/// term, and otherwise accepted after `trivial_confirmations` independent
/// attempts agree. Rectangular input is squared up: taller matrices are
/// multiplied by a random sparse projector onto `cols` rows, wider ones are
/// padded with zero rows. Candidates are always checked against `M` itself.
pub fn wiedemann_kernel_element(m: &SparseMatrix, seed: u64, cfg: &WiedemannConfig) -> Result<Option<Vec<Fq>>> {
    let f = m.field();
    let (rows, cols) = (m.rows(), m.cols());
    if cols == 0 {
        return Ok(None);
    }
    let mut rng = rng_from_seed(seed);
    let needed = confirmations_needed(f.q(), cfg);
    let mut confirmations = 0;
    for _ in 0..cfg.max_attempts.max(2 * needed + 8) {
        let outcome = if rows == cols {
            attempt(&f, cols, &|x: &[Fq]| m.mul_vec(x), &mut rng)
        } else if rows < cols {
            let apply = |x: &[Fq]| {
                let mut y = m.mul_vec(x);
                y.resize(cols, 0);
                y
            };
            attempt(&f, cols, &apply, &mut rng)
        } else {
            let p = projector(&f, rows, cols, cfg.projector_weight, &mut rng);
            let apply = |x: &[Fq]| p.mul_vec(&m.mul_vec(x));
            attempt(&f, cols, &apply, &mut rng)
        };
        match outcome {
            Attempt::Kernel(v) => {
                if m.is_kernel_vector(&v) {
                    return Ok(Some(v));
                }
            }
            Attempt::Nonsingular => return Ok(None),
            Attempt::UnitConstant => {
                confirmations += 1;
                if confirmations >= needed {
                    return Ok(None);
                }
            }
            Attempt::Failed => {}
        }
    }
    Err(Error::RetriesExhausted)
}

fn confirmations_needed(q: u32, cfg: &WiedemannConfig) -> usize {
    let keep = 1.0 - 1.0 / q as f64;
    let miss = 1.0 - keep * keep;
    let per = -libm::log2(miss);
    let n = libm::ceil(cfg.false_trivial_bits as f64 / per) as usize;
    n.max(cfg.trivial_confirmations)
}

/// Random sparse `cols x rows` matrix in which every input row appears at
/// least once.
fn projector<R: Rng>(f: &PrimeField, rows: usize, cols: usize, weight: usize, rng: &mut R) -> SparseMatrix {
    let mut buckets: Vec<Vec<(u32, Fq)>> = vec![Vec::new(); cols];
    for j in 0..rows {
        buckets[j % cols].push((j as u32, f.random_nonzero(rng)));
    }
    let mut p = SparseMatrix::new(*f, rows);
    for mut b in buckets {
        for _ in 0..weight.min(rows) {
            b.push((rng.gen_range(0..rows) as u32, f.random_nonzero(rng)));
        }
        p.push_row(b);
    }
    p
}
