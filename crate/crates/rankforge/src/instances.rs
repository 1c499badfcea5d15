//! Random RD and MinRank instances, the RD to MinRank embedding and
//! brute-force oracles.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::combin::{gaussian_binom, next_subset};
use crate::ffield::{mat, rank_weight, unmat, ExtElement, ExtField, Fq, PrimeField};
use crate::linalg::ext::{self, ExtMatrix};
use crate::linalg::DenseMatrix;
use crate::{rng_from_seed, Error, Result};

/// Planted error `e` with `Mat(e) = S C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdPlant {
    pub e: Vec<ExtElement>,
    /// `m x r` support basis over `F_q`.
    pub s: DenseMatrix,
    /// `r x n` coefficient matrix over `F_q`.
    pub c: DenseMatrix,
}

/// An `(m, n, k, r)` rank decoding instance: find `e` of rank weight `r`
/// with `y - e` in the code spanned by `code`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RdInstance {
    pub field: ExtField,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// `k` generator rows of length `n`.
    pub code: ExtMatrix,
    pub y: Vec<ExtElement>,
    pub seed: Option<u64>,
    pub plant: Option<RdPlant>,
}

/// Systematic data of the extended code `C + <y>`: generator `(I_{k+1} R)`
/// and parity check `(-R^T I_{n-k-1})`.
#[derive(Clone, Debug)]
pub struct Systematic {
    /// `(k+1) x (n-k-1)` block `R`.
    pub r_block: ExtMatrix,
}

impl Systematic {
    pub fn generator(&self, field: &ExtField, n: usize) -> ExtMatrix {
        let k1 = self.r_block.len();
        (0..k1)
            .map(|i| {
                let mut row = vec![field.zero(); n];
                row[i] = field.one();
                row[k1..].clone_from_slice(&self.r_block[i]);
                row
            })
            .collect()
    }

    /// The transposed parity-check matrix `[-R ; I]`, of size `n x (n-k-1)`.
    pub fn parity_transpose(&self, field: &ExtField, n: usize) -> ExtMatrix {
        let k1 = self.r_block.len();
        let w = n - k1;
        let mut h: ExtMatrix = self.r_block.iter().map(|row| row.iter().map(|x| field.neg(x)).collect()).collect();
        for i in 0..w {
            let mut row = vec![field.zero(); w];
            row[i] = field.one();
            h.push(row);
        }
        h
    }
}

impl RdInstance {
    pub fn new(field: ExtField, n: usize, k: usize, r: usize, code: ExtMatrix, y: Vec<ExtElement>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidDimensions("r must be positive"));
        }
        if k + 1 >= n {
            return Err(Error::InvalidDimensions("need k + 1 < n"));
        }
        if code.len() != k || code.iter().any(|row| row.len() != n) || y.len() != n {
            return Err(Error::InvalidDimensions("generator or target has the wrong shape"));
        }
        let m = field.m();
        if code.iter().flatten().chain(&y).any(|x| x.coords().len() != m) {
            return Err(Error::FieldMismatch);
        }
        Ok(RdInstance { field, n, k, r, code, y, seed: None, plant: None })
    }

    pub fn m(&self) -> usize {
        self.field.m()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Generator rows of `C + <y>`: the code rows followed by `y`.
    pub fn extended_generator(&self) -> ExtMatrix {
        let mut g = self.code.clone();
        g.push(self.y.clone());
        g
    }

    /// Systematic form of the extended code, if its leading block is invertible.
    pub fn systematic(&self) -> Result<Systematic> {
        let mut g = self.extended_generator();
        let pivots = ext::rref(&self.field, &mut g, self.n);
        if pivots.len() != self.k + 1 || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::NotSystematic);
        }
        let r_block = g.into_iter().map(|row| row[self.k + 1..].to_vec()).collect();
        Ok(Systematic { r_block })
    }

    /// Whether `v` lies in the code `C` (not the extended code).
    pub fn in_code(&self, v: &[ExtElement]) -> bool {
        if self.k == 0 {
            return v.iter().all(|x| x.is_zero());
        }
        let gt = ext::transpose(&self.code, self.n);
        ext::solve(&self.field, &gt, self.k, v).is_some()
    }

    /// `rank_weight(e) <= r` and `y - e` in `C`.
    pub fn is_solution(&self, e: &[ExtElement]) -> bool {
        if e.len() != self.n || rank_weight(&self.field, e) > self.r {
            return false;
        }
        let d: Vec<ExtElement> = self.y.iter().zip(e).map(|(a, b)| self.field.sub(a, b)).collect();
        self.in_code(&d)
    }

    /// Check the structural invariants and, if present, the plant.
    pub fn check_invariants(&self) -> Result<()> {
        let sys = self.systematic()?;
        let g = sys.generator(&self.field, self.n);
        let h = sys.parity_transpose(&self.field, self.n);
        for row in &g {
            let prod = ext::vec_mul(&self.field, row, &h, self.n - self.k - 1);
            if prod.iter().any(|x| !x.is_zero()) {
                return Err(Error::VerificationFailed);
            }
        }
        if let Some(p) = &self.plant {
            if p.s.rank() != self.r || p.c.rank() != self.r {
                return Err(Error::VerificationFailed);
            }
            if unmat(&self.field, &p.s.mul(&p.c)) != p.e {
                return Err(Error::VerificationFailed);
            }
            if rank_weight(&self.field, &p.e) != self.r || !self.is_solution(&p.e) {
                return Err(Error::VerificationFailed);
            }
        }
        Ok(())
    }

    /// The instance with coordinates reordered: new position `j` holds old
    /// position `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> RdInstance {
        let pv = |v: &[ExtElement]| perm.iter().map(|&j| v[j].clone()).collect::<Vec<_>>();
        let plant = self.plant.as_ref().map(|p| {
            let rows: Vec<usize> = (0..self.r).collect();
            RdPlant { e: pv(&p.e), s: p.s.clone(), c: p.c.submatrix(&rows, perm) }
        });
        RdInstance {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            r: self.r,
            code: self.code.iter().map(|row| pv(row)).collect(),
            y: pv(&self.y),
            seed: self.seed,
            plant,
        }
    }
}

/// Random `rows x cols` matrix of rank exactly `min(rows, cols)`.
fn random_full_rank<R: Rng>(f: PrimeField, rows: usize, cols: usize, rng: &mut R) -> DenseMatrix {
    loop {
        let a = DenseMatrix::random(f, rows, cols, rng);
        if a.rank() == rows.min(cols) {
            return a;
        }
    }
}

/// Random planted `(m, n, k, r)` instance over `F_{q^m}`.
pub fn gen_rd(q: u32, m: usize, n: usize, k: usize, r: usize, seed: u64) -> Result<RdInstance> {
    if r == 0 {
        return Err(Error::InvalidDimensions("r must be positive"));
    }
    if k + 1 >= n {
        return Err(Error::InvalidDimensions("need k + 1 < n"));
    }
    if r > m || r > n {
        return Err(Error::InvalidDimensions("need r <= min(m, n)"));
    }
    let base = PrimeField::new(q)?;
    let field = ExtField::with_default_modulus(base, m)?;
    let mut rng = rng_from_seed(seed);
    // an error vanishing on the first k + 1 positions never gives a
    // systematic extended code, so the error is redrawn along with the code
    loop {
        let s = random_full_rank(base, m, r, &mut rng);
        let c = random_full_rank(base, r, n, &mut rng);
        let e = unmat(&field, &s.mul(&c));
        let code: ExtMatrix = (0..k).map(|_| (0..n).map(|_| field.random(&mut rng)).collect()).collect();
        let mut y = e.clone();
        for row in &code {
            let u = field.random(&mut rng);
            for (yj, gj) in y.iter_mut().zip(row) {
                *yj = field.add(yj, &field.mul(&u, gj));
            }
        }
        let mut inst = RdInstance::new(field.clone(), n, k, r, code, y)?;
        if inst.systematic().is_err() {
            continue;
        }
        inst.seed = Some(seed);
        inst.plant = Some(RdPlant { e, s, c });
        return Ok(inst);
    }
}

/// A MinRank instance: find `x != 0` with `rank(Σ x_i M_i) <= r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinRankInstance {
    pub field: PrimeField,
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub mats: Vec<DenseMatrix>,
    pub seed: Option<u64>,
    pub plant: Option<Vec<Fq>>,
}

impl MinRankInstance {
    pub fn new(field: PrimeField, m: usize, n: usize, r: usize, mats: Vec<DenseMatrix>) -> Result<Self> {
        if mats.is_empty() {
            return Err(Error::InvalidDimensions("need at least one matrix"));
        }
        if mats.iter().any(|a| a.rows() != m || a.cols() != n || a.field() != field) {
            return Err(Error::InvalidDimensions("matrix shape or field differs"));
        }
        Ok(MinRankInstance { field, m, n, r, mats, seed: None, plant: None })
    }

    /// Number of matrices `K`.
    pub fn k(&self) -> usize {
        self.mats.len()
    }

    pub fn combination(&self, x: &[Fq]) -> DenseMatrix {
        let mut acc = DenseMatrix::zeros(self.field, self.m, self.n);
        for (a, &xi) in self.mats.iter().zip(x) {
            if xi != 0 {
                acc = acc.add(&a.scale(xi));
            }
        }
        acc
    }

    pub fn is_solution(&self, x: &[Fq]) -> bool {
        x.len() == self.k() && x.iter().any(|&v| v != 0) && self.combination(x).rank() <= self.r
    }

    /// The instance restricted to its first `cols` columns.
    pub fn restrict_columns(&self, cols: usize) -> Result<MinRankInstance> {
        if cols > self.n || cols == 0 {
            return Err(Error::InvalidDimensions("column subset out of range"));
        }
        let rows: Vec<usize> = (0..self.m).collect();
        let keep: Vec<usize> = (0..cols).collect();
        Ok(MinRankInstance {
            field: self.field,
            m: self.m,
            n: cols,
            r: self.r,
            mats: self.mats.iter().map(|a| a.submatrix(&rows, &keep)).collect(),
            seed: self.seed,
            plant: self.plant.clone(),
        })
    }

    pub fn check_invariants(&self) -> Result<()> {
        if let Some(x) = &self.plant {
            if !self.is_solution(x) {
                return Err(Error::VerificationFailed);
            }
        }
        Ok(())
    }
}

/// Whether a planted MinRank solution is expected to be unique up to
/// scaling: `K <= (m - r)(n - r)`.
pub fn uniqueness_expected(m: usize, n: usize, k: usize, r: usize) -> bool {
    r <= m.min(n) && k <= (m - r) * (n - r)
}

/// Random MinRank instance, optionally with a planted solution.
pub fn gen_minrank(q: u32, m: usize, n: usize, k: usize, r: usize, planted: bool, seed: u64) -> Result<MinRankInstance> {
    if k == 0 || m == 0 || n == 0 {
        return Err(Error::InvalidDimensions("need K, m, n >= 1"));
    }
    let f = PrimeField::new(q)?;
    let mut rng = rng_from_seed(seed);
    let mut mats: Vec<DenseMatrix> = (0..k).map(|_| DenseMatrix::random(f, m, n, &mut rng)).collect();
    let mut plant = None;
    if planted {
        let mut x: Vec<Fq> = (0..k).map(|_| f.random(&mut rng)).collect();
        x[k - 1] = f.random_nonzero(&mut rng);
        let a = DenseMatrix::random(f, m, r, &mut rng);
        let b = DenseMatrix::random(f, r, n, &mut rng);
        let target = a.mul(&b);
        let mut rest = DenseMatrix::zeros(f, m, n);
        for i in 0..k - 1 {
            rest = rest.add(&mats[i].scale(x[i]));
        }
        let diff = target.add(&rest.scale(f.neg(1)));
        mats[k - 1] = diff.scale(f.inv(x[k - 1]));
        plant = Some(x);
    }
    let mut inst = MinRankInstance::new(f, m, n, r, mats)?;
    inst.seed = Some(seed);
    inst.plant = plant;
    Ok(inst)
}

/// MinRank instance of the extended code: `K = m(k+1)` matrices
/// `Mat(α^i g_j)` over the systematic basis rows `g_j`, indexed `j*m + i`.
/// A planted error maps to `x_{j*m+i} = [α^i] e_j`.
pub fn rd_to_minrank(inst: &RdInstance) -> Result<MinRankInstance> {
    let field = &inst.field;
    let m = field.m();
    let g = inst.systematic()?.generator(field, inst.n);
    let mut mats = Vec::with_capacity(m * g.len());
    for row in &g {
        for i in 0..m {
            let a = field.alpha_pow(i);
            let v: Vec<ExtElement> = row.iter().map(|x| field.mul(&a, x)).collect();
            mats.push(mat(field, &v));
        }
    }
    let mut out = MinRankInstance::new(*field.base(), m, inst.n, inst.r, mats)?;
    out.seed = inst.seed;
    out.plant = inst
        .plant
        .as_ref()
        .map(|p| p.e[..=inst.k].iter().flat_map(|x| x.coords().iter().copied()).collect());
    Ok(out)
}

/// Default enumeration bound for the brute-force oracles.
pub const BRUTE_FORCE_BOUND: u128 = 1 << 24;

/// An error whose entries lie in the `F_q`-span of the rows of `support`
/// (each row an `F_q^m` coordinate vector) with `y - e` in the code, found
/// by solving the linear system `y = e + u G` over `F_q`.
pub fn solve_with_support(inst: &RdInstance, support: &DenseMatrix) -> Option<Vec<ExtElement>> {
    let field = &inst.field;
    let base = *field.base();
    let (m, n, k) = (inst.m(), inst.n, inst.k);
    let d = support.rows();
    // unknowns: C (d*n, index a*n + j) then u (k*m, index d*n + i*m + t)
    let ncols = d * n + k * m;
    let mut a = DenseMatrix::zeros(base, n * m, ncols);
    for (i, row) in inst.code.iter().enumerate() {
        for t in 0..m {
            let at = field.alpha_pow(t);
            for (j, gij) in row.iter().enumerate() {
                let v = field.mul(&at, gij);
                for (c, &x) in v.coords().iter().enumerate() {
                    a.set(j * m + c, d * n + i * m + t, x);
                }
            }
        }
    }
    for s_idx in 0..d {
        for j in 0..n {
            for c in 0..m {
                a.set(j * m + c, s_idx * n + j, support.get(s_idx, c));
            }
        }
    }
    let rhs: Vec<Fq> = inst.y.iter().flat_map(|x| x.coords().iter().copied()).collect();
    let sol = a.solve(&rhs)?;
    let c_mat = DenseMatrix::from_vec(base, d, n, sol[..d * n].to_vec()).ok()?;
    Some(unmat(field, &support.transpose().mul(&c_mat)))
}

/// Exhaustive search over `r`-dimensional supports.
pub fn brute_force_rd(inst: &RdInstance, bound: u128) -> Result<Option<Vec<ExtElement>>> {
    let field = &inst.field;
    let (q, m, n, r) = (inst.q(), inst.m(), inst.n, inst.r);
    if inst.in_code(&inst.y) {
        return Ok(Some(vec![field.zero(); n]));
    }
    let count = gaussian_binom(q as u64, m as u32, r as u32).unwrap_or(u128::MAX);
    if count > bound {
        return Err(Error::Infeasible { count, bound });
    }
    let base = *field.base();
    let mut piv: Vec<usize> = (0..r).collect();
    loop {
        // free entries of an r x m matrix in reduced echelon form with pivots `piv`
        let free: Vec<(usize, usize)> =
            (0..r).flat_map(|i| (piv[i] + 1..m).filter(|c| !piv.contains(c)).map(move |c| (i, c))).collect();
        let mut vals = vec![0 as Fq; free.len()];
        loop {
            let mut basis = DenseMatrix::zeros(base, r, m);
            for (i, &p) in piv.iter().enumerate() {
                basis.set(i, p, 1);
            }
            for (&(i, c), &v) in free.iter().zip(&vals) {
                basis.set(i, c, v);
            }
            if let Some(e) = solve_with_support(inst, &basis) {
                return Ok(Some(e));
            }
            // advance the free values as a base-q counter
            let mut i = 0;
            while i < vals.len() {
                vals[i] += 1;
                if vals[i] < q {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
            if i == vals.len() {
                break;
            }
        }
        if !next_subset(&mut piv, m) {
            break;
        }
    }
    Ok(None)
}

/// Exhaustive search over projective representatives (first nonzero
/// coordinate equal to 1), starting from `(1, 0, .., 0)`.
pub fn brute_force_minrank(inst: &MinRankInstance, bound: u128) -> Result<Option<Vec<Fq>>> {
    let q = inst.field.q() as u128;
    let kk = inst.k();
    let count = q
        .checked_pow(kk as u32)
        .map(|v| (v - 1) / (q - 1))
        .unwrap_or(u128::MAX);
    if count > bound {
        return Err(Error::Infeasible { count, bound });
    }
    for lead in 0..kk {
        let mut x = vec![0 as Fq; kk];
        x[lead] = 1;
        loop {
            if inst.combination(&x).rank() <= inst.r {
                return Ok(Some(x));
            }
            let mut i = lead + 1;
            while i < kk {
                x[i] += 1;
                if (x[i] as u128) < q {
                    break;
                }
                x[i] = 0;
                i += 1;
            }
            if i == kk {
                break;
            }
        }
    }
    Ok(None)
}
