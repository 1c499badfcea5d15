//! Bit-complexity estimates for the MaxMinors, hybrid, Support Minors and
//! combined attacks, with parameter search and published parameter sets.
//!
//! Costs are `log2` of operation counts in `F_q`. Binomials are exact big
//! integers and all validity conditions are integer comparisons; floating
//! point only enters when taking logarithms.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::combin::{binom_big, log2_big, log2_bigint};
use crate::supportminors::{dexp, monomial_count};
use crate::{Error, Result};

pub const DEFAULT_OMEGA: f64 = 2.81;

/// Size of the base field as far as the formulas care.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOrder {
    Small(u32),
    /// Larger than any degree considered; no field equations apply and
    /// exhaustive search over it is never worthwhile.
    Large,
}

impl FieldOrder {
    fn log2(self) -> f64 {
        match self {
            FieldOrder::Small(q) => libm::log2(q as f64),
            FieldOrder::Large => f64::INFINITY,
        }
    }

    /// The `q` handed to the counting functions, which only distinguish
    /// `q = 2` from the rest.
    fn counting_q(self) -> u32 {
        match self {
            FieldOrder::Small(q) => q,
            FieldOrder::Large => u32::MAX,
        }
    }

    /// Whether degree `b` stays in the regime without field equations.
    fn allows(self, b: usize) -> bool {
        match self {
            FieldOrder::Small(2) => true,
            FieldOrder::Small(q) => (q as usize) > b,
            FieldOrder::Large => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    Overdetermined,
    Punctured,
    Hybrid,
    SmMinRank,
    SmRdCombined,
    Combinatorial,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Overdetermined => "overdetermined",
            Variant::Punctured => "punctured",
            Variant::Hybrid => "hybrid",
            Variant::SmMinRank => "sm-minrank",
            Variant::SmRdCombined => "sm-rd-combined",
            Variant::Combinatorial => "combinatorial",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinearSolver {
    /// Dense elimination costed as `rows * cols^(omega - 1)`.
    Strassen,
    /// Sparse black-box solving costed as `density * cols^2`.
    Wiedemann,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttackPlan {
    pub variant: Variant,
    pub a: usize,
    pub p: usize,
    pub b: usize,
    pub n_prime: usize,
    pub omega: f64,
    pub solver: LinearSolver,
    pub log2_cost: f64,
    /// Short identifier of the cost formula.
    pub formula: &'static str,
}

impl AttackPlan {
    fn key(&self) -> (Variant, usize, usize, usize, usize) {
        (self.variant, self.a, self.p, self.b, self.n_prime)
    }

    /// Cheaper, with ties broken towards the smaller `(variant, a, p, b, n')`.
    pub fn better_than(&self, other: &AttackPlan) -> bool {
        match self.log2_cost.partial_cmp(&other.log2_cost) {
            Some(core::cmp::Ordering::Less) => true,
            Some(core::cmp::Ordering::Equal) => self.key() < other.key(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityReport {
    pub plans: Vec<AttackPlan>,
    /// `m binom(n-k-1, r) / (binom(n, r) - 1)`, when defined.
    pub ratio: Option<f64>,
}

impl ComplexityReport {
    pub fn best(&self) -> Option<&AttackPlan> {
        self.plans.iter().fold(None, |acc: Option<&AttackPlan>, p| match acc {
            Some(b) if !p.better_than(b) => Some(b),
            _ => Some(p),
        })
    }

    pub fn best_of(&self, variants: &[Variant]) -> Option<&AttackPlan> {
        self.plans.iter().filter(|p| variants.contains(&p.variant)).fold(None, |acc: Option<&AttackPlan>, p| {
            match acc {
                Some(b) if !p.better_than(b) => Some(b),
                _ => Some(p),
            }
        })
    }
}

fn b(n: usize, k: usize) -> BigUint {
    binom_big(n as i64, k as i64)
}

/// `m binom(n-k-1, r) / (binom(n, r) - 1)`.
pub fn overdetermination_ratio(m: usize, n: usize, k: usize, r: usize) -> Option<f64> {
    if n < k + 1 {
        return None;
    }
    let den = b(n, r) - BigUint::one();
    if den.is_zero() {
        return None;
    }
    let num = b(n - k - 1, r) * m;
    Some(libm::exp2(log2_big(&num) - log2_big(&den)))
}

/// `m binom(n-p-k-1, r) >= binom(n-p, r) - 1`.
pub fn is_overdetermined(m: usize, n: usize, k: usize, r: usize, p: usize) -> bool {
    if n < k + 1 + p + r {
        return false;
    }
    b(n - p - k - 1, r) * m + BigUint::one() >= b(n - p, r)
}

/// MaxMinors on the code punctured on `p` positions:
/// `m binom(n-p-k-1, r) binom(n-p, r)^(omega-1)`.
pub fn cost_overdetermined(m: usize, n: usize, k: usize, r: usize, p: usize, omega: f64) -> Result<f64> {
    if !is_overdetermined(m, n, k, r, p) {
        return Err(Error::Precondition("not overdetermined"));
    }
    Ok(libm::log2(m as f64) + log2_big(&b(n - p - k - 1, r)) + (omega - 1.0) * log2_big(&b(n - p, r)))
}

/// Whether fixing `a` columns of `C` makes the system overdetermined.
pub fn hybrid_valid(m: usize, n: usize, k: usize, r: usize, a: usize) -> bool {
    n >= k + 1 + r && n >= a + r && b(n - k - 1, r) * m + BigUint::one() >= b(n - a, r)
}

/// Smallest `a` with [`hybrid_valid`].
pub fn minimal_hybrid_a(m: usize, n: usize, k: usize, r: usize) -> Option<usize> {
    if n < k + 1 + r {
        return None;
    }
    (0..=n - k - 1).find(|&a| hybrid_valid(m, n, k, r, a))
}

/// `q^(ar) m binom(n-k-1, r) binom(n-a, r)^(omega-1)`.
pub fn cost_hybrid(q: FieldOrder, m: usize, n: usize, k: usize, r: usize, a: usize, omega: f64) -> Result<f64> {
    if !hybrid_valid(m, n, k, r, a) {
        return Err(Error::Precondition("specialization does not reach the overdetermined case"));
    }
    let guess = if a == 0 { 0.0 } else { (a * r) as f64 * q.log2() };
    Ok(guess + libm::log2(m as f64) + log2_big(&b(n - k - 1, r)) + (omega - 1.0) * log2_big(&b(n - a, r)))
}

/// Linearization condition for Support Minors on `n` columns at degree `b`.
pub fn sm_condition(q: FieldOrder, m: usize, n: usize, kk: usize, r: usize, deg: usize) -> bool {
    if deg == 0 || deg >= r + 2 || n < r + 1 || !q.allows(deg) {
        return false;
    }
    let cols = BigInt::from(monomial_count(q.counting_q(), n, kk, r, deg));
    cols - 1 <= dexp(q.counting_q(), m, n, kk, r, deg)
}

/// Smallest degree satisfying [`sm_condition`].
pub fn minimal_sm_degree(q: FieldOrder, m: usize, n: usize, kk: usize, r: usize) -> Option<usize> {
    (1..r + 2).find(|&d| sm_condition(q, m, n, kk, r, d))
}

/// Support Minors cost on `n_prime` columns at degree `b`. Wiedemann:
/// `K (r+1) cols^2`; dense: `cols^omega`.
pub fn cost_sm(
    q: FieldOrder,
    m: usize,
    n_prime: usize,
    kk: usize,
    r: usize,
    deg: usize,
    solver: LinearSolver,
    omega: f64,
) -> Result<f64> {
    if !sm_condition(q, m, n_prime, kk, r, deg) {
        return Err(Error::Precondition("linearization condition fails"));
    }
    let cols = log2_big(&monomial_count(q.counting_q(), n_prime, kk, r, deg));
    Ok(match solver {
        LinearSolver::Wiedemann => libm::log2((kk * (r + 1)) as f64) + 2.0 * cols,
        LinearSolver::Strassen => omega * cols,
    })
}

/// Monomial and equation counts of the combined RD system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedCounts {
    /// Monomials.
    pub a: BigUint,
    /// MaxMinors equations times monomials.
    pub b: BigUint,
    /// Independent Support Minors equations.
    pub c: BigInt,
}

/// Counts for the combined system with `K = mk + 1` after fixing `a`
/// columns of `C` and puncturing `p` positions.
pub fn combined_counts(
    q: FieldOrder,
    m: usize,
    n: usize,
    k: usize,
    r: usize,
    deg: usize,
    a: usize,
    p: usize,
) -> Option<CombinedCounts> {
    if n < k + 1 + r + p.max(a) {
        return None;
    }
    let nn = n - a - p;
    let nk1 = n - k - 1 - p;
    let kk = m * k + 1;
    let cq = q.counting_q();
    let xs: BigUint = if cq == 2 {
        (1..=deg).map(|j| b(kk, j)).sum()
    } else {
        b(kk + deg - 1, deg)
    };
    Some(CombinedCounts {
        a: monomial_count(cq, nn, kk, r, deg),
        b: b(nk1, r) * m * xs,
        c: dexp(cq, m, nn, kk, r, deg),
    })
}

/// `A - 1 <= B + C`.
pub fn combined_condition(q: FieldOrder, m: usize, n: usize, k: usize, r: usize, deg: usize, a: usize, p: usize) -> bool {
    if deg == 0 || deg >= r + 2 || !q.allows(deg) {
        return false;
    }
    match combined_counts(q, m, n, k, r, deg, a, p) {
        Some(c) => BigInt::from(c.a) - 1 <= BigInt::from(c.b) + c.c,
        None => false,
    }
}

pub fn minimal_combined_degree(q: FieldOrder, m: usize, n: usize, k: usize, r: usize, a: usize, p: usize) -> Option<usize> {
    (1..r + 2).find(|&d| combined_condition(q, m, n, k, r, d, a, p))
}

/// Combined attack cost: `q^(ar)` times either `D A^2` (Wiedemann, with
/// `D` the average number of monomials per equation) or
/// `(B + C) A^(omega-1)` (dense).
#[allow(clippy::too_many_arguments)]
pub fn cost_rd_combined(
    q: FieldOrder,
    m: usize,
    n: usize,
    k: usize,
    r: usize,
    deg: usize,
    a: usize,
    p: usize,
    solver: LinearSolver,
    omega: f64,
) -> Result<f64> {
    if !combined_condition(q, m, n, k, r, deg, a, p) {
        return Err(Error::Precondition("linearization condition fails"));
    }
    let c = combined_counts(q, m, n, k, r, deg, a, p).expect("valid shape");
    let eqs = BigInt::from(c.b.clone()) + &c.c;
    let guess = if a == 0 { 0.0 } else { (a * r) as f64 * q.log2() };
    let la = log2_big(&c.a);
    let body = match solver {
        LinearSolver::Strassen => log2_bigint(&eqs) + (omega - 1.0) * la,
        LinearSolver::Wiedemann => {
            let kk = m * k + 1;
            let num = BigInt::from(c.b * b(k + r + 1, r)) + &c.c * (kk * (r + 1));
            log2_bigint(&num) - log2_bigint(&eqs) + 2.0 * la
        }
    };
    Ok(guess + body)
}

/// Best known combinatorial attack: `(nm)^2 q^(r ceil(m(k+1)/n) - m)`.
pub fn cost_combinatorial(q: FieldOrder, m: usize, n: usize, k: usize, r: usize) -> f64 {
    let e = r as i64 * (m * (k + 1)).div_ceil(n) as i64 - m as i64;
    2.0 * libm::log2((n * m) as f64) + e as f64 * q.log2()
}

/// Non-homogeneous hybrid for the length-`3n` RQC setting. Not modeled.
pub fn cost_hybrid_nonhomogeneous() -> Result<f64> {
    Err(Error::Precondition("non-homogeneous hybrid is not modeled"))
}

fn plan(variant: Variant, a: usize, p: usize, deg: usize, n_prime: usize, omega: f64, solver: LinearSolver, cost: f64, formula: &'static str) -> AttackPlan {
    AttackPlan { variant, a, p, b: deg, n_prime, omega, solver, log2_cost: cost, formula }
}

/// Search limits for [`optimize_rd`].
#[derive(Clone, Copy, Debug)]
pub struct RdSearch {
    pub omega: f64,
    /// Largest `a` and `p` tried for the combined attack.
    pub max_shift: usize,
    /// Cost the combined attack with Wiedemann and dense elimination and
    /// keep the cheaper; otherwise Wiedemann only from `b >= 2`.
    pub free_solver: bool,
}

impl Default for RdSearch {
    fn default() -> Self {
        RdSearch { omega: DEFAULT_OMEGA, max_shift: 40, free_solver: true }
    }
}

/// All candidate plans for an `(m, n, k, r)` decoding instance over `F_q`:
/// the best puncturing, the minimal hybrid, and the combined attack for
/// each `a` (with `p = 0`) and each `p` (with `a = 0`) at its smallest
/// valid degree.
pub fn optimize_rd(q: FieldOrder, m: usize, n: usize, k: usize, r: usize, search: &RdSearch) -> ComplexityReport {
    let omega = search.omega;
    let mut plans = Vec::new();
    let mut best_p: Option<AttackPlan> = None;
    if n >= k + 1 + r {
        for p in 0..=n - k - 1 - r {
            if let Ok(c) = cost_overdetermined(m, n, k, r, p, omega) {
                let v = if p == 0 { Variant::Overdetermined } else { Variant::Punctured };
                let cand = plan(v, 0, p, 0, n - p, omega, LinearSolver::Strassen, c, "maxmin");
                if best_p.as_ref().is_none_or(|b| cand.better_than(b)) {
                    best_p = Some(cand);
                }
            }
        }
    }
    plans.extend(best_p);
    if let Some(a) = minimal_hybrid_a(m, n, k, r).filter(|&a| a > 0) {
        if let Ok(c) = cost_hybrid(q, m, n, k, r, a, omega) {
            plans.push(plan(Variant::Hybrid, a, 0, 0, n - a, omega, LinearSolver::Strassen, c, "hybrid"));
        }
    }
    let shifts = (0..=search.max_shift).map(|a| (a, 0)).chain((1..=search.max_shift).map(|p| (0, p)));
    for (a, p) in shifts {
        if a > 0 && q == FieldOrder::Large {
            continue;
        }
        let Some(deg) = minimal_combined_degree(q, m, n, k, r, a, p) else {
            continue;
        };
        let solvers: &[LinearSolver] = if search.free_solver {
            &[LinearSolver::Strassen, LinearSolver::Wiedemann]
        } else if deg >= 2 {
            &[LinearSolver::Wiedemann]
        } else {
            &[LinearSolver::Strassen]
        };
        let mut best: Option<AttackPlan> = None;
        for &s in solvers {
            if let Ok(c) = cost_rd_combined(q, m, n, k, r, deg, a, p, s, omega) {
                let cand = plan(Variant::SmRdCombined, a, p, deg, n - a - p, omega, s, c, "sm+maxmin");
                if best.as_ref().is_none_or(|b| cand.better_than(b)) {
                    best = Some(cand);
                }
            }
        }
        plans.extend(best);
    }
    ComplexityReport { plans, ratio: overdetermination_ratio(m, n, k, r) }
}

/// Support Minors on MinRank: for each `n'`, the smallest valid degree
/// with the Wiedemann cost.
pub fn optimize_minrank(q: FieldOrder, m: usize, n: usize, kk: usize, r: usize) -> ComplexityReport {
    let mut plans = Vec::new();
    for n_prime in r + 1..=n {
        if let Some(deg) = minimal_sm_degree(q, m, n_prime, kk, r) {
            if let Ok(c) = cost_sm(q, m, n_prime, kk, r, deg, LinearSolver::Wiedemann, DEFAULT_OMEGA) {
                plans.push(plan(Variant::SmMinRank, 0, 0, deg, n_prime, DEFAULT_OMEGA, LinearSolver::Wiedemann, c, "sm"));
            }
        }
    }
    ComplexityReport { plans, ratio: None }
}

/// A decoding parameter set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RdParams {
    pub name: &'static str,
    pub q: u32,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

pub const ROLLO_RQC: [RdParams; 13] = [
    RdParams { name: "Loidreau", q: 2, m: 128, n: 120, k: 80, r: 4 },
    RdParams { name: "ROLLO-I-128", q: 2, m: 79, n: 94, k: 47, r: 5 },
    RdParams { name: "ROLLO-I-192", q: 2, m: 89, n: 106, k: 53, r: 6 },
    RdParams { name: "ROLLO-I-256", q: 2, m: 113, n: 134, k: 67, r: 7 },
    RdParams { name: "ROLLO-II-128", q: 2, m: 83, n: 298, k: 149, r: 5 },
    RdParams { name: "ROLLO-II-192", q: 2, m: 107, n: 302, k: 151, r: 6 },
    RdParams { name: "ROLLO-II-256", q: 2, m: 127, n: 314, k: 157, r: 7 },
    RdParams { name: "ROLLO-III-128", q: 2, m: 101, n: 94, k: 47, r: 5 },
    RdParams { name: "ROLLO-III-192", q: 2, m: 107, n: 118, k: 59, r: 6 },
    RdParams { name: "ROLLO-III-256", q: 2, m: 131, n: 134, k: 67, r: 7 },
    RdParams { name: "RQC-I", q: 2, m: 97, n: 134, k: 67, r: 5 },
    RdParams { name: "RQC-II", q: 2, m: 107, n: 202, k: 101, r: 6 },
    RdParams { name: "RQC-III", q: 2, m: 137, n: 262, k: 131, r: 7 },
];

/// A MinRank parameter set with square `n x n` matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinRankParams {
    pub name: &'static str,
    pub q: FieldOrder,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

pub const GEMSS_RAINBOW: [MinRankParams; 12] = [
    MinRankParams { name: "GeMSS128", q: FieldOrder::Large, n: 174, k: 162, r: 34 },
    MinRankParams { name: "GeMSS192", q: FieldOrder::Large, n: 265, k: 243, r: 52 },
    MinRankParams { name: "GeMSS256", q: FieldOrder::Large, n: 354, k: 324, r: 73 },
    MinRankParams { name: "RedGeMSS128", q: FieldOrder::Large, n: 177, k: 162, r: 35 },
    MinRankParams { name: "RedGeMSS192", q: FieldOrder::Large, n: 266, k: 243, r: 53 },
    MinRankParams { name: "RedGeMSS256", q: FieldOrder::Large, n: 358, k: 324, r: 74 },
    MinRankParams { name: "BlueGeMSS128", q: FieldOrder::Large, n: 175, k: 162, r: 35 },
    MinRankParams { name: "BlueGeMSS192", q: FieldOrder::Large, n: 265, k: 243, r: 53 },
    MinRankParams { name: "BlueGeMSS256", q: FieldOrder::Large, n: 358, k: 324, r: 74 },
    MinRankParams { name: "Rainbow-Ia", q: FieldOrder::Small(16), n: 96, k: 33, r: 64 },
    MinRankParams { name: "Rainbow-IIIc", q: FieldOrder::Small(256), n: 140, k: 37, r: 104 },
    MinRankParams { name: "Rainbow-Vc", q: FieldOrder::Small(256), n: 188, k: 49, r: 140 },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Code length `2n`.
    Rollo,
    /// Code length `2n` for the hybrid and combined attacks, `3n` for the
    /// combinatorial one.
    Rqc,
}

/// Block-length parameters: the attacked code has dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockParams {
    pub name: &'static str,
    pub family: Family,
    pub q: u32,
    pub n: usize,
    pub m: usize,
    pub r: usize,
}

pub const NEW_PARAMS: [BlockParams; 6] = [
    BlockParams { name: "new2ROLLO-I-128", family: Family::Rollo, q: 2, n: 83, m: 73, r: 7 },
    BlockParams { name: "new2ROLLO-I-192", family: Family::Rollo, q: 2, n: 97, m: 89, r: 8 },
    BlockParams { name: "new2ROLLO-I-256", family: Family::Rollo, q: 2, n: 113, m: 103, r: 9 },
    BlockParams { name: "newRQC-I", family: Family::Rqc, q: 2, n: 113, m: 127, r: 7 },
    BlockParams { name: "newRQC-II", family: Family::Rqc, q: 2, n: 149, m: 151, r: 8 },
    BlockParams { name: "newRQC-III", family: Family::Rqc, q: 2, n: 179, m: 181, r: 9 },
];

/// The three estimates reported for a block-length parameter set.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockReport {
    pub params: BlockParams,
    /// Minimal hybrid (or plain, if already overdetermined) on length `2n`.
    pub hybrid: Option<AttackPlan>,
    /// Combined attack on length `2n` with `a = p = 0` at the smallest
    /// degree, dense for `b = 1` and Wiedemann above.
    pub under: Option<AttackPlan>,
    pub combinatorial: f64,
}

pub fn estimate_block(bp: &BlockParams, omega: f64) -> BlockReport {
    let q = FieldOrder::Small(bp.q);
    let (len, k, m, r) = (2 * bp.n, bp.n, bp.m, bp.r);
    let hybrid = minimal_hybrid_a(m, len, k, r).and_then(|a| {
        let c = cost_hybrid(q, m, len, k, r, a, omega).ok()?;
        let v = if a == 0 { Variant::Overdetermined } else { Variant::Hybrid };
        Some(plan(v, a, 0, 0, len - a, omega, LinearSolver::Strassen, c, "hybrid"))
    });
    let under = minimal_combined_degree(q, m, len, k, r, 0, 0).and_then(|deg| {
        let s = if deg == 1 { LinearSolver::Strassen } else { LinearSolver::Wiedemann };
        let c = cost_rd_combined(q, m, len, k, r, deg, 0, 0, s, omega).ok()?;
        Some(plan(Variant::SmRdCombined, 0, 0, deg, len, omega, s, c, "sm+maxmin"))
    });
    let comb_len = match bp.family {
        Family::Rollo => 2 * bp.n,
        Family::Rqc => 3 * bp.n,
    };
    BlockReport { params: *bp, hybrid, under, combinatorial: cost_combinatorial(q, m, comb_len, k, r) }
}

/// Largest prime strictly below `x`.
pub fn largest_prime_below(x: f64) -> Option<usize> {
    let mut c = libm::ceil(x) as i64 - 1;
    while c >= 2 {
        if (2..).take_while(|d: &i64| d * d <= c).all(|d| c % d != 0) {
            return Some(c as usize);
        }
        c -= 1;
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Plain MaxMinors, only where already overdetermined.
    Overdetermined,
    /// Cheapest of the best puncturing and the minimal hybrid.
    Optimized,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub log2_cost: f64,
}

/// Costs over even `n` in `range` with `k = n/2` and `m` the largest prime
/// below `n / ratio`.
pub fn sweep(q: u32, r: usize, ratio: f64, range: core::ops::RangeInclusive<usize>, mode: SweepMode, omega: f64) -> Vec<SweepPoint> {
    let fq = FieldOrder::Small(q);
    let mut out = Vec::new();
    for n in range.filter(|n| n % 2 == 0) {
        let k = n / 2;
        let Some(m) = largest_prime_below(n as f64 / ratio) else {
            continue;
        };
        if n < k + 1 + r {
            continue;
        }
        let cost = match mode {
            SweepMode::Overdetermined => cost_overdetermined(m, n, k, r, 0, omega).ok(),
            SweepMode::Optimized => {
                let punct = (0..=n - k - 1 - r).filter_map(|p| cost_overdetermined(m, n, k, r, p, omega).ok());
                let hyb = minimal_hybrid_a(m, n, k, r).and_then(|a| cost_hybrid(fq, m, n, k, r, a, omega).ok());
                punct.chain(hyb).reduce(f64::min)
            }
        };
        if let Some(c) = cost {
            out.push(SweepPoint { n, m, k, log2_cost: c });
        }
    }
    out
}

fn fmt_cost(c: f64) -> String {
    format!("{:.2}", c)
}

fn star(p: &AttackPlan) -> &'static str {
    if p.solver == LinearSolver::Wiedemann {
        "*"
    } else {
        ""
    }
}

/// Header and rows for the decoding table, as CSV.
pub fn render_rd_csv(rows: &[(RdParams, ComplexityReport)]) -> String {
    let mut s = String::from("scheme,params,ratio,a,p,b,n_prime,log2_cost,formula\n");
    for (pr, rep) in rows {
        if let Some(best) = rep.best() {
            let _ = writeln!(
                s,
                "{},\"({},{},{},{})\",{},{},{},{},{},{},{}",
                pr.name,
                pr.m,
                pr.n,
                pr.k,
                pr.r,
                rep.ratio.map_or(String::from("-"), |x| format!("{:.2}", x)),
                best.a,
                best.p,
                best.b,
                best.n_prime,
                fmt_cost(best.log2_cost),
                best.formula
            );
        }
    }
    s
}

/// Aligned text version of [`render_rd_csv`].
pub fn render_rd_text(rows: &[(RdParams, ComplexityReport)]) -> String {
    let mut s = format!(
        "{:<14} {:<18} {:>6} {:>3} {:>3} {:>2} {:>9}\n",
        "scheme", "(m,n,k,r)", "ratio", "a", "p", "b", "log2 cost"
    );
    for (pr, rep) in rows {
        if let Some(best) = rep.best() {
            let _ = writeln!(
                s,
                "{:<14} {:<18} {:>6} {:>3} {:>3} {:>2} {:>8}{}",
                pr.name,
                format!("({},{},{},{})", pr.m, pr.n, pr.k, pr.r),
                rep.ratio.map_or(String::from("-"), |x| format!("{:.2}", x)),
                best.a,
                best.p,
                best.b,
                fmt_cost(best.log2_cost),
                star(best)
            );
        }
    }
    s
}

pub fn render_minrank_csv(rows: &[(MinRankParams, ComplexityReport)]) -> String {
    let mut s = String::from("scheme,params,ratio,a,p,b,n_prime,log2_cost,formula\n");
    for (pr, rep) in rows {
        if let Some(best) = rep.best() {
            let q = match pr.q {
                FieldOrder::Small(q) => format!("{}", q),
                FieldOrder::Large => String::from("large"),
            };
            let _ = writeln!(
                s,
                "{},\"q={} n={} K={} r={}\",-,{},{},{},{},{},{}",
                pr.name,
                q,
                pr.n,
                pr.k,
                pr.r,
                best.a,
                best.p,
                best.b,
                best.n_prime,
                fmt_cost(best.log2_cost),
                best.formula
            );
        }
    }
    s
}

pub fn render_minrank_text(rows: &[(MinRankParams, ComplexityReport)]) -> String {
    let mut s = format!("{:<14} {:>5} {:>4} {:>4} {:>5} {:>2} {:>9}\n", "scheme", "n", "K", "r", "n'", "b", "log2 cost");
    for (pr, rep) in rows {
        if let Some(best) = rep.best() {
            let _ = writeln!(
                s,
                "{:<14} {:>5} {:>4} {:>4} {:>5} {:>2} {:>9}",
                pr.name,
                pr.n,
                pr.k,
                pr.r,
                best.n_prime,
                best.b,
                fmt_cost(best.log2_cost)
            );
        }
    }
    s
}

fn opt_cost(p: &Option<AttackPlan>) -> String {
    p.as_ref().map_or(String::from("-"), |p| format!("{}{}", fmt_cost(p.log2_cost), star(p)))
}

pub fn render_block_csv(rows: &[BlockReport]) -> String {
    let mut s = String::from("scheme,params,hybrid_a,hybrid_log2,under_b,under_log2,comb_log2\n");
    for r in rows {
        let p = &r.params;
        let _ = writeln!(
            s,
            "{},\"q={} n={} m={} r={}\",{},{},{},{},{}",
            p.name,
            p.q,
            p.n,
            p.m,
            p.r,
            r.hybrid.as_ref().map_or(String::from("-"), |h| format!("{}", h.a)),
            opt_cost(&r.hybrid),
            r.under.as_ref().map_or(String::from("-"), |h| format!("{}", h.b)),
            opt_cost(&r.under),
            fmt_cost(r.combinatorial)
        );
    }
    s
}

pub fn render_block_text(rows: &[BlockReport]) -> String {
    let mut s = format!(
        "{:<16} {:>4} {:>4} {:>2} {:>12} {:>4} {:>10} {:>3} {:>8}\n",
        "scheme", "n", "m", "r", "over/hybrid", "a", "under", "b", "comb"
    );
    for r in rows {
        let p = &r.params;
        let _ = writeln!(
            s,
            "{:<16} {:>4} {:>4} {:>2} {:>12} {:>4} {:>10} {:>3} {:>8}",
            p.name,
            p.n,
            p.m,
            p.r,
            opt_cost(&r.hybrid),
            r.hybrid.as_ref().map_or(String::from("-"), |h| format!("{}", h.a)),
            opt_cost(&r.under),
            r.under.as_ref().map_or(String::from("-"), |h| format!("{}", h.b)),
            fmt_cost(r.combinatorial)
        );
    }
    if rows.iter().any(|r| r.params.family == Family::Rqc) {
        s.push_str("non-homogeneous hybrid (length 3n): not modeled\n");
    }
    s
}

pub fn render_sweep_csv(points: &[SweepPoint]) -> String {
    let mut s = String::from("n,m,k,log2_cost\n");
    for p in points {
        let _ = writeln!(s, "{},{},{},{:.2}", p.n, p.m, p.k, p.log2_cost);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hybrid_zero_is_plain() {
        let a = cost_hybrid(FieldOrder::Small(2), 89, 106, 53, 6, 0, 2.81).unwrap();
        let b = cost_overdetermined(89, 106, 53, 6, 0, 2.81).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn primes_below() {
        assert_eq!(largest_prime_below(94.0 / 1.18), Some(79));
        assert_eq!(largest_prime_below(3.0), Some(2));
        assert_eq!(largest_prime_below(2.0), None);
    }

    #[test]
    fn comb_boundary() {
        // r * ceil(m(k+1)/n) = m: only the polynomial factor is left
        let c = cost_combinatorial(FieldOrder::Small(2), 4, 4, 1, 2);
        assert!((c - 8.0).abs() < 1e-12);
    }
}
