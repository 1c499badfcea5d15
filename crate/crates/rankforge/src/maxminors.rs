//! The MaxMinors linearization for overdetermined rank decoding.
//!
//! With the extended code `C + <y>` in systematic form, an error of weight
//! `r` is `e = beta S C` where `C` is `r x n` over `F_q`. All maximal minors
//! of `C H^T` vanish, and by Cauchy-Binet each of them is linear in the
//! maximal minors `c_T` of `C`. Unfolding the `F_{q^m}` coefficients gives
//! an `F_q`-linear system whose kernel, normalized at `c_{0..r-1} = 1`,
//! determines `C` up to the left action of `GL_r`.
//!
//! Columns are the `r`-subsets `T` of the code positions in lexicographic
//! order, so `T = {0, .., r-1}` is column 0. That column is kept in the
//! matrix; normalizing the kernel vector at it plays the role of the
//! affine constant.

use alloc::vec;
use alloc::vec::Vec;
use rand::seq::SliceRandom;

use crate::combin::{binom_big, lex_rank, lex_unrank, subsets, Binomials};
use crate::ffield::{rank_weight, ExtElement, ExtField, Fq};
use crate::instances::{solve_with_support, RdInstance};
use crate::linalg::ext::{self, ExtMatrix};
use crate::linalg::{DenseMatrix, SparseMatrix};
use crate::{rng_from_seed, Error, Result};

/// Largest number of hybrid guesses `q^{ar}` we are willing to enumerate.
pub const MAX_GUESSES: u128 = 1 << 20;

/// One MaxMinors equation over `F_{q^m}`: `(column of c_T, coefficient)`.
pub type ExtRow = Vec<(usize, ExtElement)>;

/// Unfolded MaxMinors system.
#[derive(Clone, Debug)]
pub struct MaxMinSystem {
    /// `m * binom(w, r)` rows; row `J_rank * m + i` is coordinate `i` of
    /// the equation for parity subset `J`.
    pub matrix: SparseMatrix,
    /// Code positions indexing the `c_T` (`n - p - a`).
    pub positions: usize,
    pub r: usize,
    /// Punctured coordinates (removed from the right end).
    pub p: usize,
    /// Specialized columns of `C` (guessed at the right end).
    pub a: usize,
}

impl MaxMinSystem {
    /// The subset `T` labelling column `col`.
    pub fn column_subset(&self, col: usize) -> Vec<usize> {
        let b = Binomials::new(self.positions);
        lex_unrank(&b, self.positions, self.r, col)
    }

    /// Column of `c_T` for a sorted subset `T`.
    pub fn column_of(&self, t: &[usize]) -> usize {
        let b = Binomials::new(self.positions);
        lex_rank(&b, self.positions, t)
    }
}

/// Cauchy-Binet coefficients of the maximal minors of `C h` for an
/// `N x w` matrix `h` (so `C` is `r x N`).
///
/// The first `dense` rows of `h` are arbitrary; every later row must be a
/// unit row, with row `dense + i` equal to `e_{offset + i}` for a common
/// offset. Equation `J` (an `r`-subset of the `w` columns, lexicographic)
/// lists the nonzero coefficients of `c_T`, `T` ranked among the
/// `r`-subsets of `0..N`. Only `T` whose unit part lies inside `J`
/// contribute, which keeps the rows sparse.
pub fn maxmin_coefficients(field: &ExtField, h: &ExtMatrix, w: usize, dense: usize, r: usize) -> Result<Vec<ExtRow>> {
    let n_pos = h.len();
    if r == 0 || r > w || r > n_pos || dense > n_pos || h.iter().any(|row| row.len() != w) {
        return Err(Error::InvalidDimensions("maxminors block shape"));
    }
    let units = n_pos - dense;
    let offset = unit_offset(h, dense, w)?;
    let binoms = Binomials::new(n_pos.max(w) + 1);
    let tables = minor_tables(field, &h[..dense], w, r, &binoms);

    let mut out = Vec::with_capacity(binoms.get(w, r) as usize);
    let mut rows_buf: Vec<usize> = Vec::with_capacity(r);
    for j in subsets(w, r) {
        let mut eq: ExtRow = Vec::new();
        let unit_pos: Vec<usize> = (0..r).filter(|&i| j[i] >= offset && j[i] < offset + units).collect();
        for mask in 0u32..(1 << unit_pos.len()) {
            let chosen: Vec<usize> =
                unit_pos.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &p)| p).collect();
            let s2 = chosen.len();
            let s1 = r - s2;
            if s1 > dense {
                continue;
            }
            let jc: Vec<usize> = (0..r).filter(|p| !chosen.contains(p)).map(|p| j[p]).collect();
            let jc_rank = lex_rank(&binoms, w, &jc);
            let parity = (0..s2).map(|i| s1 + i).sum::<usize>() + chosen.iter().sum::<usize>();
            let t2: Vec<usize> = chosen.iter().map(|&p| dense + j[p] - offset).collect();
            let width = binoms.get(w, s1) as usize;
            for t1 in subsets(dense, s1) {
                let minor = &tables[s1][lex_rank(&binoms, dense, &t1) * width + jc_rank];
                if minor.is_zero() {
                    continue;
                }
                rows_buf.clear();
                rows_buf.extend_from_slice(&t1);
                rows_buf.extend_from_slice(&t2);
                let coef = if parity % 2 == 1 { field.neg(minor) } else { minor.clone() };
                eq.push((lex_rank(&binoms, n_pos, &rows_buf), coef));
            }
        }
        eq.sort_unstable_by_key(|e| e.0);
        out.push(eq);
    }
    Ok(out)
}

fn unit_offset(h: &ExtMatrix, dense: usize, w: usize) -> Result<usize> {
    let Some(first) = h.get(dense) else {
        return Ok(0);
    };
    let offset = first.iter().position(|x| !x.is_zero()).unwrap_or(w);
    if offset + (h.len() - dense) > w {
        return Err(Error::Precondition("trailing rows are not unit rows"));
    }
    for (i, row) in h[dense..].iter().enumerate() {
        let ok = row.iter().enumerate().all(|(c, x)| {
            if c == offset + i {
                x.coords()[0] == 1 && x.coords()[1..].iter().all(|&v| v == 0)
            } else {
                x.is_zero()
            }
        });
        if !ok {
            return Err(Error::Precondition("trailing rows are not unit rows"));
        }
    }
    Ok(offset)
}

/// All `s x s` minors of `d` for `s = 0..=r`, flattened as
/// `[s][rank(rows) * binom(w, s) + rank(cols)]`, by Laplace expansion
/// along the first row.
fn minor_tables(field: &ExtField, d: &[Vec<ExtElement>], w: usize, r: usize, b: &Binomials) -> Vec<Vec<ExtElement>> {
    let t = d.len();
    let mut tables: Vec<Vec<ExtElement>> = vec![vec![field.one()]];
    for s in 1..=r.min(t) {
        let width = b.get(w, s) as usize;
        let prev_width = b.get(w, s - 1) as usize;
        let mut table = vec![field.zero(); b.get(t, s) as usize * width];
        let col_sets = subsets(w, s);
        for (ri, rows) in subsets(t, s).iter().enumerate() {
            let sub_rank = lex_rank(b, t, &rows[1..]);
            let top = &d[rows[0]];
            for (ci, cols) in col_sets.iter().enumerate() {
                let mut acc = field.zero();
                let mut rest: Vec<usize> = cols[1..].to_vec();
                for idx in 0..s {
                    if idx > 0 {
                        // rest = cols without cols[idx]
                        rest[idx - 1] = cols[idx - 1];
                    }
                    let a = &top[cols[idx]];
                    if a.is_zero() {
                        continue;
                    }
                    let sub = &tables[s - 1][sub_rank * prev_width + lex_rank(b, w, &rest)];
                    if sub.is_zero() {
                        continue;
                    }
                    let term = field.mul(a, sub);
                    acc = if idx % 2 == 0 { field.add(&acc, &term) } else { field.sub(&acc, &term) };
                }
                table[ri * width + ci] = acc;
            }
        }
        tables.push(table);
    }
    tables
}

/// Unfold `F_{q^m}` equations into `m` rows each over `F_q`.
pub fn unfold_rows(field: &ExtField, rows: &[ExtRow], cols: usize) -> SparseMatrix {
    let m = field.m();
    let mut out = SparseMatrix::new(*field.base(), cols);
    for eq in rows {
        for i in 0..m {
            out.push_row(eq.iter().filter(|e| e.1.coords()[i] != 0).map(|e| (e.0 as u32, e.1.coords()[i])).collect());
        }
    }
    out
}

fn check_overdetermined(m: usize, n_pos: usize, w: usize, r: usize) -> Result<()> {
    if r > w {
        return Err(Error::Precondition("fewer parity columns than r"));
    }
    let rows = binom_big(w as i64, r as i64) * m;
    let cols = binom_big(n_pos as i64, r as i64);
    if rows + 1u32 < cols {
        return Err(Error::Precondition("system is not overdetermined"));
    }
    Ok(())
}

/// The parity block `[-R ; I]` truncated to `positions` rows and `w` columns.
fn parity_block(inst: &RdInstance, sys: &crate::instances::Systematic, positions: usize, w: usize) -> ExtMatrix {
    let h = sys.parity_transpose(&inst.field, inst.n);
    h.into_iter().take(positions).map(|row| row[..w].to_vec()).collect()
}

/// MaxMinors system of `inst` punctured on its last `p` coordinates.
pub fn build_maxmin(inst: &RdInstance, p: usize) -> Result<MaxMinSystem> {
    let (n, k, r) = (inst.n, inst.k, inst.r);
    if n < k + 1 + r + p {
        return Err(Error::Precondition("need n - p - k - 1 >= r"));
    }
    let w = n - k - 1 - p;
    let sys = inst.systematic()?;
    let h = parity_block(inst, &sys, n - p, w);
    let rows = maxmin_coefficients(&inst.field, &h, w, k + 1, r)?;
    let cols = crate::combin::binom(n - p, r);
    Ok(MaxMinSystem { matrix: unfold_rows(&inst.field, &rows, cols), positions: n - p, r, p, a: 0 })
}

/// MaxMinors system with the last `a` columns of `C` fixed to `guess`
/// (`r x a` over `F_q`), expressed in the other `n - a` columns.
pub fn build_hybrid(inst: &RdInstance, a: usize, guess: &DenseMatrix) -> Result<MaxMinSystem> {
    let (n, k, r) = (inst.n, inst.k, inst.r);
    let w = n - k - 1;
    if a > w || n < a + (k + 1).max(r) || r > w {
        return Err(Error::Precondition("hybrid shape"));
    }
    if guess.rows() != r || guess.cols() != a {
        return Err(Error::InvalidDimensions("guess must be r x a"));
    }
    let sys = inst.systematic()?;
    let field = &inst.field;
    let mut h = parity_block(inst, &sys, n - a, w);
    // C_g H[n-a..] = [0 | C_g] = C* E with E supported on the first r rows
    for i in 0..r {
        for c in 0..a {
            let cell = &mut h[i][w - a + c];
            *cell = field.add(cell, &field.from_base(guess.get(i, c)));
        }
    }
    let rows = maxmin_coefficients(field, &h, w, (k + 1).max(r), r)?;
    let cols = crate::combin::binom(n - a, r);
    Ok(MaxMinSystem { matrix: unfold_rows(field, &rows, cols), positions: n - a, r, p: 0, a })
}

/// The coefficient matrix `C*` over the system's positions from a kernel
/// vector, normalized so that its columns `T0` form the identity, where
/// `T0` is the first subset with a nonzero entry in `v`. For `T0 = {0..r-1}`
/// this is `[I_r C']`.
pub fn read_coefficients(sys: &MaxMinSystem, field: &crate::PrimeField, v: &[Fq]) -> DenseMatrix {
    let (r, n_pos) = (sys.r, sys.positions);
    let b = Binomials::new(n_pos);
    let mut c = DenseMatrix::zeros(*field, r, n_pos);
    let Some(t0_rank) = v.iter().position(|&x| x != 0) else {
        return c;
    };
    let t0 = lex_unrank(&b, n_pos, r, t0_rank);
    let inv = field.inv(v[t0_rank]);
    let mut t = Vec::with_capacity(r);
    for (i, &ti) in t0.iter().enumerate() {
        c.set(i, ti, 1);
        for j in (0..n_pos).filter(|j| !t0.contains(j)) {
            t.clear();
            t.extend(t0.iter().copied().filter(|&x| x != ti));
            t.push(j);
            t.sort_unstable();
            let val = field.mul(v[lex_rank(&b, n_pos, &t)], inv);
            // moving column j from slot i to its sorted place crosses every
            // other element of T0 lying between t_i and j
            let (lo, hi) = if ti < j { (ti, j) } else { (j, ti) };
            let crossed = t0.iter().filter(|&&x| x > lo && x < hi).count();
            c.set(i, j, if crossed % 2 == 1 { field.neg(val) } else { val });
        }
    }
    c
}

/// Kernel direction of the system, scaled so its first nonzero entry is 1.
pub fn kernel_direction(sys: &MaxMinSystem) -> Result<Vec<Fq>> {
    let f = sys.matrix.field();
    let probe = sys.matrix.probe_corank_one();
    let cols = sys.matrix.cols();
    let Some(mut v) = probe.kernel else {
        if probe.rank == cols {
            return Err(Error::NoSolution);
        }
        return Err(Error::RankDeficient { rank: probe.rank, cols });
    };
    crate::supportminors::projective_normalize(&f, &mut v);
    Ok(v)
}

/// Recover the error from `C*` on the first `c_star.cols()` positions.
fn finish(inst: &RdInstance, c_star: &DenseMatrix) -> Result<Vec<ExtElement>> {
    let field = &inst.field;
    let (n, k, r) = (inst.n, inst.k, inst.r);
    let n_pos = c_star.cols();
    let w = n_pos - k - 1;
    let sys = inst.systematic()?;
    let h = parity_block(inst, &sys, n_pos, w);
    let c_ext: ExtMatrix =
        (0..r).map(|i| (0..n_pos).map(|j| field.from_base(c_star.get(i, j))).collect()).collect();
    let prod: ExtMatrix = c_ext.iter().map(|row| ext::vec_mul(field, row, &h, w)).collect();
    let mut ker = ext::left_kernel(field, &prod, w);
    if ker.len() != 1 {
        return Err(Error::RankDeficient { rank: r - ker.len(), cols: r });
    }
    let s = ker.pop().unwrap();
    let e_tilde = ext::vec_mul(field, &s, &c_ext, n_pos);
    let e_part = rescale_to_error(inst, &e_tilde)?;
    let e = if n_pos == n {
        e_part
    } else {
        // punctured: complete from the support of the retained part
        let rr = crate::ffield::mat(field, &e_part).transpose().rref();
        if rr.rank != r {
            return Err(Error::VerificationFailed);
        }
        let rows: Vec<usize> = (0..r).collect();
        let cols: Vec<usize> = (0..field.m()).collect();
        let basis = rr.matrix.submatrix(&rows, &cols);
        solve_with_support(inst, &basis).ok_or(Error::VerificationFailed)?
    };
    if rank_weight(field, &e) != r || !inst.is_solution(&e) {
        return Err(Error::VerificationFailed);
    }
    Ok(e)
}

/// Given `e_tilde = lambda e` on the first `e_tilde.len()` positions of an
/// element `lambda e` of `C + <y>`, solve `e_tilde = lambda y + u G` there
/// and return `e_tilde / lambda`.
pub(crate) fn rescale_to_error(inst: &RdInstance, e_tilde: &[ExtElement]) -> Result<Vec<ExtElement>> {
    let field = &inst.field;
    let n_pos = e_tilde.len();
    let k = inst.k;
    let gen: ExtMatrix = inst.extended_generator().into_iter().map(|row| row[..n_pos].to_vec()).collect();
    let gt = ext::transpose(&gen, n_pos);
    let x = ext::solve(field, &gt, k + 1, e_tilde).ok_or(Error::VerificationFailed)?;
    let lambda = &x[k];
    if lambda.is_zero() {
        return Err(Error::VerificationFailed);
    }
    let inv = field.inv(lambda);
    Ok(e_tilde.iter().map(|v| field.mul(v, &inv)).collect())
}

/// Run `attempt` on `inst` and, if it fails for a retryable reason, on up
/// to `rounds` random coordinate permutations of it. A full-rank system
/// (`NoSolution`) is final: permuting coordinates does not create solutions.
pub(crate) fn with_retries<F>(inst: &RdInstance, seed: u64, rounds: usize, mut attempt: F) -> Result<Vec<ExtElement>>
where
    F: FnMut(&RdInstance) -> Result<Vec<ExtElement>>,
{
    let n = inst.n;
    let mut rng = rng_from_seed(seed ^ 0x6d61_786d_696e);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut last = Error::RetriesExhausted;
    for round in 0..=rounds {
        if round > 0 {
            perm.shuffle(&mut rng);
        }
        let pinst = inst.permuted(&perm);
        match attempt(&pinst) {
            Ok(e) => {
                let mut out = vec![inst.field.zero(); n];
                for (j, &src) in perm.iter().enumerate() {
                    out[src] = e[j].clone();
                }
                return Ok(out);
            }
            Err(err @ (Error::Precondition(_) | Error::InvalidDimensions(_) | Error::Infeasible { .. } | Error::NoSolution)) => {
                return Err(err)
            }
            Err(err) => last = err,
        }
    }
    Err(last)
}

/// Algorithm for the overdetermined case, punctured on `p` coordinates.
pub fn solve_overdetermined(inst: &RdInstance, p: usize) -> Result<Vec<ExtElement>> {
    let (n, k, r) = (inst.n, inst.k, inst.r);
    if n < k + 1 + r + p {
        return Err(Error::Precondition("need n - p - k - 1 >= r"));
    }
    check_overdetermined(inst.m(), n - p, n - k - 1 - p, r)?;
    with_retries(inst, inst.seed.unwrap_or(0), n, |pi| {
        let sys = build_maxmin(pi, p)?;
        let v = kernel_direction(&sys)?;
        let c = read_coefficients(&sys, pi.field.base(), &v);
        finish(pi, &c)
    })
}

/// Hybrid attack: try every value of the last `a` columns of `C`.
pub fn solve_hybrid(inst: &RdInstance, a: usize) -> Result<Vec<ExtElement>> {
    if a == 0 {
        return solve_overdetermined(inst, 0);
    }
    let (n, k, r) = (inst.n, inst.k, inst.r);
    let w = n - k - 1;
    if a > w || n < a + (k + 1).max(r) {
        return Err(Error::Precondition("hybrid shape"));
    }
    check_overdetermined(inst.m(), n - a, w, r)?;
    let q = inst.q() as u128;
    let count = q.checked_pow((a * r) as u32).unwrap_or(u128::MAX);
    if count > MAX_GUESSES {
        return Err(Error::Infeasible { count, bound: MAX_GUESSES });
    }
    let base = *inst.field.base();
    // the guess needs an invertible leading block, which degenerate
    // supports only give for a few orderings
    with_retries(inst, inst.seed.unwrap_or(0), 4 * n, |pi| {
        let mut digits = vec![0 as Fq; a * r];
        for _ in 0..count {
            let guess = DenseMatrix::from_vec(base, r, a, digits.clone())?;
            if let Ok(e) = hybrid_attempt(pi, a, &guess) {
                return Ok(e);
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < base.q() {
                    break;
                }
                *d = 0;
            }
        }
        Err(Error::NotFound)
    })
}

fn hybrid_attempt(inst: &RdInstance, a: usize, guess: &DenseMatrix) -> Result<Vec<ExtElement>> {
    let sys = build_hybrid(inst, a, guess)?;
    let v = kernel_direction(&sys)?;
    // the guess is expressed relative to an identity on the first r columns
    if v[0] == 0 {
        return Err(Error::NoPivot);
    }
    let main = read_coefficients(&sys, inst.field.base(), &v);
    let (r, n) = (inst.r, inst.n);
    let mut c = DenseMatrix::zeros(*inst.field.base(), r, n);
    for i in 0..r {
        for j in 0..n - a {
            c.set(i, j, main.get(i, j));
        }
        for j in 0..a {
            c.set(i, n - a + j, guess.get(i, j));
        }
    }
    finish(inst, &c)
}

/// Outcome of the rank experiment on random planted instances.
#[derive(Clone, Debug, PartialEq)]
pub struct RankHeuristicReport {
    pub trials: usize,
    /// Trials whose system had rank `binom(n - p, r) - 1`.
    pub corank_one: usize,
    /// Observed ranks, one per trial.
    pub ranks: Vec<usize>,
    pub columns: usize,
}

impl RankHeuristicReport {
    pub fn frequency(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.corank_one as f64 / self.trials as f64
        }
    }
}

/// Measure how often the MaxMinors matrix of a random planted
/// `(q, m, n, k, r)` instance has corank exactly one. Trial `t` uses seed
/// `seed + t`.
pub fn verify_rank_heuristic(
    q: u32,
    m: usize,
    n: usize,
    k: usize,
    r: usize,
    trials: usize,
    seed: u64,
) -> Result<RankHeuristicReport> {
    if n < k + 1 + r {
        return Err(Error::Precondition("need n - k - 1 >= r"));
    }
    check_overdetermined(m, n, n - k - 1, r)?;
    let mut ranks = Vec::with_capacity(trials);
    let columns = crate::combin::binom(n, r);
    for t in 0..trials {
        let inst = crate::instances::gen_rd(q, m, n, k, r, seed.wrapping_add(t as u64))?;
        let sys = build_maxmin(&inst, 0)?;
        ranks.push(sys.matrix.probe_corank_one().rank);
    }
    let corank_one = ranks.iter().filter(|&&x| x + 1 == columns).count();
    Ok(RankHeuristicReport { trials, corank_one, ranks, columns })
}
