//! The Support Minors linearization for MinRank and, combined with
//! MaxMinors, for underdetermined rank decoding.
//!
//! For a solution `x` write `Σ x_i M_i = S C` with `C` of size `r x n`.
//! Every row `r_j` of the combination lies in the row space of `C`, so all
//! `(r+1)`-minors of `(r_j ; C)` vanish. Expanding along the first row gives
//! equations bilinear in `x` and the maximal minors `c_T` of `C`; these are
//! multiplied by monomials in `x` and linearized over `x^α c_T`.
//!
//! Column order: the `x`-part in graded lexicographic order (sorted
//! multisets for `q > b`, sorted sets of size `1..=b` for `q = 2`), crossed
//! with lexicographic `T`; column `x_index * binom(n', r) + rank(T)`.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};

use crate::combin::{binom, binom_big, lex_rank, lex_unrank, multiset_rank, multisets, subsets, Binomials};
use crate::ffield::{rank_weight, ExtElement, Fq, PrimeField};
use crate::instances::{rd_to_minrank, MinRankInstance, RdInstance};
use crate::linalg::{wiedemann_kernel_element, DenseMatrix, Echelon, SparseMatrix, WiedemannConfig};
use crate::maxminors::{maxmin_coefficients, rescale_to_error, unfold_rows, with_retries};
use crate::{Error, Result};

/// Systems with at most this many columns are solved by elimination.
pub const DENSE_COLUMN_LIMIT: usize = 6000;

/// How the `x`-part of the monomials is formed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Homogeneous of degree exactly `b` in `x`.
    Homogeneous,
    /// `q = 2`: multilinear of degree `1..=b` after `x_i^2 = x_i`.
    Boolean,
}

impl Regime {
    pub fn for_field(q: u32) -> Self {
        if q == 2 {
            Regime::Boolean
        } else {
            Regime::Homogeneous
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solver {
    Dense,
    Wiedemann,
    /// Dense up to [`DENSE_COLUMN_LIMIT`] columns, Wiedemann beyond.
    Auto,
}

/// A bilinear equation as `(x variable, rank of T, coefficient)` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearEq {
    pub terms: Vec<(u32, u32, Fq)>,
}

/// The degree-one Support Minors equations of a MinRank instance.
#[derive(Clone, Debug)]
pub struct SmBase {
    pub field: PrimeField,
    pub m: usize,
    /// Number of columns `n'` of the (restricted) instance.
    pub positions: usize,
    pub vars: usize,
    pub r: usize,
    /// Equation `j * binom(n', r+1) + rank(J)` for matrix row `j` and
    /// column subset `J`.
    pub equations: Vec<BilinearEq>,
}

/// `m binom(n, r+1)` bilinear equations: for each matrix row `j` and each
/// `(r+1)`-subset `J`, the cofactor expansion of `det((r_j ; C)[.., J])`
/// along its first row.
pub fn build_sm_base(inst: &MinRankInstance) -> Result<SmBase> {
    let (m, n, r) = (inst.m, inst.n, inst.r);
    if r + 1 > n {
        return Err(Error::Precondition("need r + 1 <= n"));
    }
    let f = inst.field;
    let b = Binomials::new(n);
    let col_sets = subsets(n, r + 1);
    let mut equations = Vec::with_capacity(m * col_sets.len());
    let mut rest = Vec::with_capacity(r);
    for j in 0..m {
        for set in &col_sets {
            let mut terms = Vec::with_capacity(inst.k() * (r + 1));
            for idx in 0..=r {
                rest.clear();
                rest.extend(set.iter().enumerate().filter(|e| e.0 != idx).map(|e| *e.1));
                let t = lex_rank(&b, n, &rest) as u32;
                for (i, a) in inst.mats.iter().enumerate() {
                    let v = a.get(j, set[idx]);
                    if v != 0 {
                        let c = if idx % 2 == 1 { f.neg(v) } else { v };
                        terms.push((i as u32, t, c));
                    }
                }
            }
            equations.push(BilinearEq { terms });
        }
    }
    Ok(SmBase { field: f, m, positions: n, vars: inst.k(), r, equations })
}

/// Index of the monomials `x^α c_T` at degree `b`.
#[derive(Clone, Debug)]
pub struct MonomialSpace {
    pub vars: usize,
    pub b: usize,
    pub regime: Regime,
    pub positions: usize,
    pub r: usize,
    binoms: Binomials,
    /// Number of `c_T`.
    t_count: usize,
    /// Boolean regime: first `x` index of each degree.
    offsets: Vec<usize>,
}

impl MonomialSpace {
    pub fn new(vars: usize, b: usize, regime: Regime, positions: usize, r: usize) -> Self {
        let binoms = Binomials::new((vars + b).max(positions) + 1);
        let t_count = binom(positions, r);
        let mut offsets = vec![0, 0];
        if regime == Regime::Boolean {
            for d in 1..=b {
                let last = *offsets.last().unwrap();
                offsets.push(last + binom(vars, d));
            }
        }
        MonomialSpace { vars, b, regime, positions, r, binoms, t_count, offsets }
    }

    /// Number of distinct `x`-parts.
    pub fn x_count(&self) -> usize {
        match self.regime {
            Regime::Homogeneous => binom(self.vars + self.b - 1, self.b),
            Regime::Boolean => self.offsets[self.b + 1],
        }
    }

    pub fn t_count(&self) -> usize {
        self.t_count
    }

    pub fn len(&self) -> usize {
        self.x_count() * self.t_count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of a sorted `x`-part: a multiset of size `b`, or a set of
    /// size `1..=b` in the Boolean regime.
    pub fn x_index(&self, xs: &[usize]) -> usize {
        match self.regime {
            Regime::Homogeneous => multiset_rank(&self.binoms, self.vars, xs),
            Regime::Boolean => self.offsets[xs.len()] + lex_rank(&self.binoms, self.vars, xs),
        }
    }

    pub fn column(&self, xs: &[usize], t_rank: usize) -> usize {
        self.x_index(xs) * self.t_count + t_rank
    }

    /// Inverse of [`column`](Self::column): the `x`-part and `T`.
    pub fn describe(&self, col: usize) -> (Vec<usize>, Vec<usize>) {
        let (xi, t) = (col / self.t_count, col % self.t_count);
        let t = lex_unrank(&self.binoms, self.positions, self.r, t);
        let xs = match self.regime {
            Regime::Homogeneous => {
                let s = lex_unrank(&self.binoms, self.vars + self.b - 1, self.b, xi);
                s.iter().enumerate().map(|(i, &v)| v - i).collect()
            }
            Regime::Boolean => {
                let d = (1..=self.b).find(|&d| xi < self.offsets[d + 1]).expect("column in range");
                lex_unrank(&self.binoms, self.vars, d, xi - self.offsets[d])
            }
        };
        (xs, t)
    }

    /// The value of every monomial at `x` and the minors `c` (indexed by
    /// rank of `T`).
    pub fn evaluate(&self, f: &PrimeField, x: &[Fq], c: &[Fq]) -> Vec<Fq> {
        (0..self.len())
            .map(|col| {
                let (xs, _) = self.describe(col);
                let xv = xs.iter().fold(1, |acc, &i| f.mul(acc, x[i]));
                f.mul(xv, c[col % self.t_count])
            })
            .collect()
    }
}

/// Where a row of a linearized system comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowOrigin {
    /// Base equation `equation` times the multiplier with index
    /// `multiplier` in the system's multiplier list.
    SupportMinors { equation: u32, multiplier: u32 },
    /// Unfolded MaxMinors row times an `x`-monomial.
    MaxMinors { row: u32, multiplier: u32 },
}

/// A linearized Support Minors system.
#[derive(Clone, Debug)]
pub struct SmSystem {
    pub matrix: SparseMatrix,
    pub space: MonomialSpace,
    pub origins: Vec<RowOrigin>,
}

impl SmSystem {
    pub fn b(&self) -> usize {
        self.space.b
    }

    /// Number of linear variables after any elimination.
    pub fn k_eff(&self) -> usize {
        self.space.vars
    }

    pub fn support_minors_rows(&self) -> usize {
        self.origins.iter().filter(|o| matches!(o, RowOrigin::SupportMinors { .. })).count()
    }
}

/// Multiply `xs` (sorted) by `x_i`, in place into `out`.
fn times_var(regime: Regime, xs: &[usize], i: usize, out: &mut Vec<usize>) {
    out.clear();
    out.extend_from_slice(xs);
    let pos = out.partition_point(|&v| v < i);
    if regime == Regime::Boolean && out.get(pos) == Some(&i) {
        return;
    }
    out.insert(pos, i);
}

/// Multipliers for the base equations: multisets of size `b-1`, or for
/// `q = 2` all sets of size `0..b`.
fn sm_multipliers(regime: Regime, vars: usize, b: usize) -> Vec<Vec<usize>> {
    match regime {
        Regime::Homogeneous => multisets(vars, b - 1),
        Regime::Boolean => (0..b).flat_map(|d| subsets(vars, d)).collect(),
    }
}

fn check_degree(b: usize, r: usize) -> Result<()> {
    if b == 0 || b >= r + 2 {
        return Err(Error::Precondition("need 1 <= b < r + 2"));
    }
    Ok(())
}

/// Linearize the base equations at degree `b`.
pub fn linearize(base: &SmBase, b: usize, regime: Regime) -> Result<SmSystem> {
    check_degree(b, base.r)?;
    let space = MonomialSpace::new(base.vars, b, regime, base.positions, base.r);
    let mut matrix = SparseMatrix::new(base.field, space.len());
    let mut origins = Vec::new();
    let mut xs = Vec::with_capacity(b);
    for (mi, mult) in sm_multipliers(regime, base.vars, b).iter().enumerate() {
        for (ei, eq) in base.equations.iter().enumerate() {
            let row = eq
                .terms
                .iter()
                .map(|&(i, t, c)| {
                    times_var(regime, mult, i as usize, &mut xs);
                    (space.column(&xs, t as usize) as u32, c)
                })
                .collect();
            matrix.push_row(row);
            origins.push(RowOrigin::SupportMinors { equation: ei as u32, multiplier: mi as u32 });
        }
    }
    Ok(SmSystem { matrix, space, origins })
}

/// Predicted number of independent equations at degree `b`: the
/// alternating sum over symmetric-tensor relations for `q > b`, and its
/// cumulative version over degrees `1..=b` for `q = 2`.
pub fn dexp(q: u32, m: usize, n: usize, k: usize, r: usize, b: usize) -> BigInt {
    let term = |i: usize, rest: BigUint| -> BigInt {
        let v = BigInt::from(binom_big(n as i64, (r + i) as i64) * binom_big((m + i - 1) as i64, i as i64) * rest);
        if i % 2 == 1 {
            v
        } else {
            -v
        }
    };
    let mut acc = BigInt::from(0);
    if q == 2 {
        for j in 1..=b {
            for i in 1..=j {
                acc += term(i, binom_big(k as i64, (j - i) as i64));
            }
        }
    } else {
        for i in 1..=b {
            acc += term(i, binom_big((k + b - i - 1) as i64, (b - i) as i64));
        }
    }
    acc
}

/// Number of monomials `x^α c_T` at degree `b`.
pub fn monomial_count(q: u32, n: usize, k: usize, r: usize, b: usize) -> BigUint {
    let t = binom_big(n as i64, r as i64);
    if q == 2 {
        (1..=b).map(|j| binom_big(k as i64, j as i64)).sum::<BigUint>() * t
    } else {
        binom_big((k + b - 1) as i64, b as i64) * t
    }
}

/// A nonzero kernel vector of the system.
pub fn solve_sm(sys: &SmSystem, solver: Solver, seed: u64) -> Result<Vec<Fq>> {
    let cols = sys.matrix.cols();
    let dense = match solver {
        Solver::Dense => true,
        Solver::Wiedemann => false,
        Solver::Auto => cols <= DENSE_COLUMN_LIMIT,
    };
    if dense {
        let probe = sys.matrix.probe_corank_one();
        return match probe.kernel {
            Some(v) => Ok(v),
            None if probe.rank == cols => Err(Error::NoSolution),
            None => Err(Error::RankDeficient { rank: probe.rank, cols }),
        };
    }
    match wiedemann_kernel_element(&sys.matrix, seed, &WiedemannConfig::default())? {
        Some(v) => Ok(v),
        None => Err(Error::NoSolution),
    }
}

/// Scale so that the first nonzero entry is 1.
pub fn projective_normalize(f: &PrimeField, x: &mut [Fq]) {
    if let Some(&lead) = x.iter().find(|&&v| v != 0) {
        let inv = f.inv(lead);
        x.iter_mut().for_each(|v| *v = f.mul(*v, inv));
    }
}

/// Read `x` off a kernel vector by quotients of entries sharing one `c_T`.
///
/// With degree-one monomials present (`b = 1`, or `q = 2`) `x_i` is the
/// entry of `x_i c_T0`. Otherwise `x_i = v[x_i x_i0^{b-1} c_T0] /
/// v[x_i0^b c_T0]`. Each pivot `(i0, T0)` with a nonzero entry is tried in
/// column order until `rank(Σ x_i M_i) <= r` holds on `check`.
pub fn extract_solution(sys: &SmSystem, v: &[Fq], check: &MinRankInstance) -> Result<Vec<Fq>> {
    let space = &sys.space;
    let f = sys.matrix.field();
    let (vars, b, tc) = (space.vars, space.b, space.t_count());
    let linear = b == 1 || space.regime == Regime::Boolean;
    let mut any_pivot = false;
    let mut xs = Vec::with_capacity(b);
    for t0 in 0..tc {
        let pivots: Vec<usize> = if linear { vec![0] } else { (0..vars).collect() };
        for i0 in pivots {
            let mut x = vec![0 as Fq; vars];
            if linear {
                for (i, xi) in x.iter_mut().enumerate() {
                    *xi = v[space.column(&[i], t0)];
                }
                if x.iter().all(|&e| e == 0) {
                    continue;
                }
            } else {
                let base: Vec<usize> = vec![i0; b - 1];
                times_var(space.regime, &base, i0, &mut xs);
                let den = v[space.column(&xs, t0)];
                if den == 0 {
                    continue;
                }
                let inv = f.inv(den);
                for (i, xi) in x.iter_mut().enumerate() {
                    times_var(space.regime, &base, i, &mut xs);
                    *xi = f.mul(v[space.column(&xs, t0)], inv);
                }
            }
            any_pivot = true;
            projective_normalize(&f, &mut x);
            if check.is_solution(&x) {
                return Ok(x);
            }
        }
    }
    Err(if any_pivot { Error::VerificationFailed } else { Error::NoPivot })
}

/// Support Minors attack on a MinRank instance using its first `n_prime`
/// columns.
pub fn solve_minrank(inst: &MinRankInstance, b: usize, n_prime: usize, solver: Solver, seed: u64) -> Result<Vec<Fq>> {
    check_degree(b, inst.r)?;
    if n_prime < inst.r + 1 || n_prime > inst.n {
        return Err(Error::Precondition("need r + 1 <= n' <= n"));
    }
    let sub = inst.restrict_columns(n_prime)?;
    let base = build_sm_base(&sub)?;
    let sys = linearize(&base, b, Regime::for_field(inst.field.q()))?;
    let v = solve_sm(&sys, solver, seed)?;
    extract_solution(&sys, &v, inst)
}

/// MinRank instance of `C + <y>` with the variables `x_{0,i}`, `i >= 1`,
/// eliminated: the first column of `S C` is specialized to `(*, 0, .., 0)`,
/// which forces them to zero in systematic form. Variable 0 is `x_{0,0}`
/// and `1 + (j-1) m + i` is `x_{j,i}`, so `K_eff = mk + 1`.
pub fn reduced_minrank(inst: &RdInstance) -> Result<MinRankInstance> {
    let full = rd_to_minrank(inst)?;
    let m = inst.m();
    let keep: Vec<usize> = core::iter::once(0).chain(m..full.k()).collect();
    let mats = keep.iter().map(|&i| full.mats[i].clone()).collect();
    let mut out = MinRankInstance::new(full.field, full.m, full.n, full.r, mats)?;
    out.seed = inst.seed;
    out.plant = inst.plant.as_ref().and_then(|p| {
        let field = &inst.field;
        let e0 = &p.e[0];
        if e0.is_zero() {
            return None;
        }
        let inv = field.inv(e0);
        let coords: Vec<Fq> = p.e[..=inst.k].iter().flat_map(|x| field.mul(x, &inv).into_coords()).collect();
        Some(keep.iter().map(|&i| coords[i]).collect())
    });
    Ok(out)
}

/// The combined system for an RD instance.
#[derive(Clone, Debug)]
pub struct RdCombinedSystem {
    pub system: SmSystem,
    /// The reduced MinRank instance on all `n` columns.
    pub minrank: MinRankInstance,
    pub n_prime: usize,
}

/// Support Minors rows of the reduced MinRank instance on the first
/// `n_prime` columns, followed by the MaxMinors rows of the code punctured
/// to `n_prime` positions, multiplied by every `x`-monomial of degree `b`
/// (`q > b`) or of degree `1..=b` (`q = 2`).
pub fn build_rd_sm(inst: &RdInstance, b: usize, n_prime: usize) -> Result<RdCombinedSystem> {
    let (n, k, r) = (inst.n, inst.k, inst.r);
    check_degree(b, r)?;
    if n_prime > n || n_prime < k + 1 + r {
        return Err(Error::Precondition("need k + 1 + r <= n' <= n"));
    }
    let red = reduced_minrank(inst)?;
    let base = build_sm_base(&red.restrict_columns(n_prime)?)?;
    let regime = Regime::for_field(inst.q());
    let mut system = linearize(&base, b, regime)?;

    let sys = inst.systematic()?;
    let w = n_prime - k - 1;
    let h: Vec<Vec<ExtElement>> =
        sys.parity_transpose(&inst.field, n).into_iter().take(n_prime).map(|row| row[..w].to_vec()).collect();
    let eqs = maxmin_coefficients(&inst.field, &h, w, k + 1, r)?;
    let unfolded = unfold_rows(&inst.field, &eqs, binom(n_prime, r));
    let mults: Vec<Vec<usize>> = match regime {
        Regime::Homogeneous => multisets(red.k(), b),
        Regime::Boolean => (1..=b).flat_map(|d| subsets(red.k(), d)).collect(),
    };
    for (mi, mult) in mults.iter().enumerate() {
        for ri in 0..unfolded.rows() {
            let row = unfolded
                .row(ri)
                .iter()
                .map(|&(t, c)| (system.space.column(mult, t as usize) as u32, c))
                .collect();
            system.matrix.push_row(row);
            system.origins.push(RowOrigin::MaxMinors { row: ri as u32, multiplier: mi as u32 });
        }
    }
    Ok(RdCombinedSystem { system, minrank: red, n_prime })
}

/// The codeword `Σ_j (Σ_i x_{j,i} α^i) g_j` for reduced variables `x`.
fn codeword(inst: &RdInstance, x: &[Fq]) -> Result<Vec<ExtElement>> {
    let field = &inst.field;
    let m = inst.m();
    let g = inst.systematic()?.generator(field, inst.n);
    let mut out = vec![field.zero(); inst.n];
    for (j, row) in g.iter().enumerate() {
        let coef = if j == 0 {
            field.from_base(x[0])
        } else {
            field.from_coords(x[1 + (j - 1) * m..1 + j * m].to_vec())?
        };
        if coef.is_zero() {
            continue;
        }
        for (o, gj) in out.iter_mut().zip(row) {
            *o = field.add(o, &field.mul(&coef, gj));
        }
    }
    Ok(out)
}

/// End-to-end attack on an RD instance with the combined system. Retries
/// on random coordinate permutations when the specialization fails.
pub fn solve_rd_combined(inst: &RdInstance, b: usize, n_prime: usize, solver: Solver) -> Result<Vec<ExtElement>> {
    check_degree(b, inst.r)?;
    if n_prime > inst.n || n_prime < inst.k + 1 + inst.r {
        return Err(Error::Precondition("need k + 1 + r <= n' <= n"));
    }
    let seed = inst.seed.unwrap_or(0);
    with_retries(inst, seed, inst.n, |pi| {
        let comb = build_rd_sm(pi, b, n_prime)?;
        let try_vector = |v: &[Fq]| -> Result<Vec<ExtElement>> {
            let x = extract_solution(&comb.system, v, &comb.minrank)?;
            let e = rescale_to_error(pi, &codeword(pi, &x)?)?;
            if rank_weight(&pi.field, &e) != pi.r || !pi.is_solution(&e) {
                return Err(Error::VerificationFailed);
            }
            Ok(e)
        };
        // a full-rank system here may only mean e_0 = 0 in this ordering
        match solve_sm(&comb.system, solver, seed) {
            Ok(v) => try_vector(&v),
            Err(Error::NoSolution) => Err(Error::NotFound),
            Err(err @ Error::RankDeficient { .. }) => {
                // near the rank Gilbert-Varshamov distance a second error of
                // weight r is not rare, and spurious directions appear too
                let Some(vectors) = small_kernel(&comb.system.matrix) else {
                    return Err(err);
                };
                vectors.iter().find_map(|v| try_vector(v).ok()).ok_or(err)
            }
            Err(e) => Err(e),
        }
    })
}

/// Largest number of projective kernel points [`small_kernel`] enumerates.
const KERNEL_ENUMERATION_LIMIT: u64 = 1024;

/// Every nonzero kernel vector up to scaling, or `None` if there are more
/// than [`KERNEL_ENUMERATION_LIMIT`] of them.
fn small_kernel(m: &SparseMatrix) -> Option<Vec<Vec<Fq>>> {
    let f = m.field();
    let mut ech = Echelon::new(f, m.cols());
    for i in 0..m.rows() {
        ech.insert_sparse(m.row(i));
    }
    let basis = ech.kernel_basis();
    let q = u64::from(f.q());
    let dim = u32::try_from(basis.len()).ok()?;
    let total = q.checked_pow(dim)?;
    if (total - 1) / (q - 1) > KERNEL_ENUMERATION_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    // coefficient vectors whose first nonzero entry is 1
    for idx in 1..total {
        let coeffs: Vec<Fq> = (0..dim).scan(idx, |rest, _| {
            let c = (*rest % q) as Fq;
            *rest /= q;
            Some(c)
        }).collect();
        if coeffs.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0 as Fq; m.cols()];
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = f.add(*vi, f.mul(*c, *bi));
                }
            }
        }
        out.push(v);
    }
    Some(out)
}

/// One cell of the rank experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DexpCell {
    pub q: u32,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub b: usize,
    pub planted: bool,
}

impl DexpCell {
    pub fn columns(&self) -> BigUint {
        monomial_count(self.q, self.n, self.k, self.r, self.b)
    }

    /// `min(dexp, columns - plant)`, except that a system already predicted
    /// to reach `columns - plant` at a smaller degree stays there.
    pub fn expected_rank(&self) -> BigUint {
        let plant = u32::from(self.planted);
        let full = |b: usize| -> BigInt {
            BigInt::from(monomial_count(self.q, self.n, self.k, self.r, b)) - plant
        };
        let saturated_below = (1..self.b).any(|b| dexp(self.q, self.m, self.n, self.k, self.r, b) >= full(b));
        let top = full(self.b);
        let e = if saturated_below { top } else { dexp(self.q, self.m, self.n, self.k, self.r, self.b).min(top) };
        e.max(BigInt::from(0)).to_biguint().unwrap()
    }
}

/// The grid `m in {7, 8}`, `r in {2, 3}`, `n in r+3..=r+5`, `K in 3..=20`,
/// `b in 1..=3` (all with `b < r + 2`).
pub fn dexp_grid(q: u32, planted: bool) -> Vec<DexpCell> {
    let mut out = Vec::new();
    for m in [7, 8] {
        for r in [2, 3] {
            for n in r + 3..=r + 5 {
                for k in 3..=20 {
                    for b in 1..=3 {
                        if b < r + 2 {
                            out.push(DexpCell { q, m, n, k, r, b, planted });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Measured outcome for one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DexpRow {
    pub cell: DexpCell,
    pub dexp: BigInt,
    pub columns: BigUint,
    pub expected: BigUint,
    /// Measured ranks, empty when the cell exceeds the column budget.
    pub measured: Vec<usize>,
}

impl DexpRow {
    /// `None` when not measured, else whether every trial matched.
    pub fn matches(&self) -> Option<bool> {
        if self.measured.is_empty() {
            return None;
        }
        Some(self.measured.iter().all(|&x| BigUint::from(x) == self.expected))
    }
}

/// Measure the rank of the linearized system on random instances.
/// Cells with more than `column_budget` monomials are reported unmeasured.
/// Trial `t` of cell `c` uses seed `seed + 1000 c + t`.
pub fn verify_dexp(cells: &[DexpCell], trials: usize, seed: u64, column_budget: usize) -> Result<Vec<DexpRow>> {
    let mut rows = Vec::with_capacity(cells.len());
    for (ci, cell) in cells.iter().enumerate() {
        check_degree(cell.b, cell.r)?;
        let columns = cell.columns();
        let mut measured = Vec::new();
        if columns <= BigUint::from(column_budget) {
            for t in 0..trials {
                let s = seed.wrapping_add(1000 * ci as u64 + t as u64);
                let inst = crate::instances::gen_minrank(cell.q, cell.m, cell.n, cell.k, cell.r, cell.planted, s)?;
                let base = build_sm_base(&inst)?;
                let sys = linearize(&base, cell.b, Regime::for_field(cell.q))?;
                measured.push(sys.matrix.probe_corank_one().rank);
            }
        }
        rows.push(DexpRow {
            cell: *cell,
            dexp: dexp(cell.q, cell.m, cell.n, cell.k, cell.r, cell.b),
            columns,
            expected: cell.expected_rank(),
            measured,
        });
    }
    Ok(rows)
}

/// Values `x^α c_T` of a planted MinRank solution, with `C` the reduced
/// row basis of `Σ x_i M_i` restricted to the system's columns.
pub fn plant_vector(space: &MonomialSpace, inst: &MinRankInstance, x: &[Fq]) -> Vec<Fq> {
    let f = inst.field;
    let sub = inst.restrict_columns(space.positions).expect("positions within instance");
    let rr = sub.combination(x).rref();
    let rows: Vec<usize> = (0..space.r).collect();
    let cols: Vec<usize> = (0..space.positions).collect();
    let c: DenseMatrix = if rr.rank >= space.r {
        rr.matrix.submatrix(&rows, &cols)
    } else {
        DenseMatrix::zeros(f, space.r, space.positions)
    };
    space.evaluate(&f, x, &c.maximal_minors())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_minrank;

    #[test]
    fn base_count() {
        let inst = gen_minrank(13, 7, 7, 5, 2, true, 3).unwrap();
        assert_eq!(build_sm_base(&inst).unwrap().equations.len(), 245);
    }

    #[test]
    fn dexp_single_term() {
        assert_eq!(dexp(13, 7, 7, 5, 2, 1), BigInt::from(245));
        assert_eq!(dexp(2, 7, 7, 5, 2, 1), BigInt::from(245));
    }

    #[test]
    fn monomial_roundtrip() {
        for regime in [Regime::Homogeneous, Regime::Boolean] {
            let s = MonomialSpace::new(5, 3, regime, 6, 2);
            for col in 0..s.len() {
                let (xs, t) = s.describe(col);
                let b = Binomials::new(6);
                assert_eq!(s.column(&xs, lex_rank(&b, 6, &t)), col);
            }
        }
    }

    #[test]
    fn solves_b1() {
        let inst = gen_minrank(13, 7, 7, 5, 2, true, 11).unwrap();
        let x = solve_minrank(&inst, 1, 7, Solver::Dense, 0).unwrap();
        assert!(inst.is_solution(&x));
    }
}
