//! Binomial coefficients, subset enumeration and ranking.
//!
//! Subsets are sorted `usize` slices. Ranks follow lexicographic order, so
//! `{0, 1, .., k-1}` has rank 0.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

/// Table of small binomial coefficients, saturating at `u64::MAX`.
#[derive(Clone, Debug)]
pub struct Binomials {
    rows: Vec<Vec<u64>>,
}

impl Binomials {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut row = vec![1u64; n + 1];
            for k in 1..n {
                let prev = &rows[n - 1];
                row[k] = prev[k - 1].saturating_add(prev[k]);
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    #[inline]
    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.rows[n][k]
        }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }
}

/// Exact binomial as `u128`, `None` on overflow.
pub fn binom_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Small binomial as `usize`; panics on overflow.
pub fn binom(n: usize, k: usize) -> usize {
    let v = binom_u128(n as u64, k as u64).expect("binomial overflow");
    usize::try_from(v).expect("binomial overflow")
}

/// Exact binomial coefficient. Negative `n` or out-of-range `k` give 0.
pub fn binom_big(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Base-2 logarithm of a big unsigned integer; `-inf` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 63 {
        return libm::log2(x.to_u64().unwrap() as f64);
    }
    let shift = bits - 63;
    let top = (x >> shift).to_u64().unwrap();
    libm::log2(top as f64) + shift as f64
}

/// Base-2 logarithm of a positive big integer; NaN for negative input.
pub fn log2_bigint(x: &BigInt) -> f64 {
    match x.sign() {
        Sign::Minus => f64::NAN,
        Sign::NoSign => f64::NEG_INFINITY,
        Sign::Plus => log2_big(x.magnitude()),
    }
}

/// Lexicographic rank of a sorted `k`-subset of `{0..n-1}`.
#[inline]
pub fn lex_rank(b: &Binomials, n: usize, s: &[usize]) -> usize {
    let k = s.len();
    let mut colex = 0u64;
    for (i, &x) in s.iter().enumerate() {
        colex += b.get(n - 1 - x, k - i);
    }
    (b.get(n, k) - 1 - colex) as usize
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(b: &Binomials, n: usize, k: usize, rank: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut rank = rank as u64;
    let mut x = 0usize;
    for i in 0..k {
        loop {
            // subsets starting with x at position i
            let c = b.get(n - 1 - x, k - i - 1);
            if rank < c {
                break;
            }
            rank -= c;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    out
}

/// Advance a sorted `k`-subset of `{0..n-1}` to its lexicographic successor.
pub fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `k`-subsets of `{0..n-1}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        out.push(s.clone());
        if !next_subset(&mut s, n) {
            break;
        }
    }
    out
}

/// Advance a sorted multiset over `{0..vars-1}` to its lexicographic successor.
pub fn next_multiset(a: &mut [usize], vars: usize) -> bool {
    let mut i = a.len();
    while i > 0 {
        i -= 1;
        if a[i] + 1 < vars {
            a[i] += 1;
            let v = a[i];
            for x in a[i + 1..].iter_mut() {
                *x = v;
            }
            return true;
        }
    }
    false
}

/// All multisets of size `d` over `vars` variables, lexicographic.
pub fn multisets(vars: usize, d: usize) -> Vec<Vec<usize>> {
    if vars == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut a = vec![0usize; d];
    loop {
        out.push(a.clone());
        if !next_multiset(&mut a, vars) {
            break;
        }
    }
    out
}

/// Lexicographic rank of a sorted multiset of size `d` over `vars` variables.
#[inline]
pub fn multiset_rank(b: &Binomials, vars: usize, a: &[usize]) -> usize {
    let d = a.len();
    if d == 0 {
        return 0;
    }
    let mut buf = [0usize; 16];
    if d <= buf.len() {
        for (i, &x) in a.iter().enumerate() {
            buf[i] = x + i;
        }
        lex_rank(b, vars + d - 1, &buf[..d])
    } else {
        let s: Vec<usize> = a.iter().enumerate().map(|(i, &x)| x + i).collect();
        lex_rank(b, vars + d - 1, &s)
    }
}

/// Gaussian binomial coefficient `[m choose r]_q`, `None` on overflow.
pub fn gaussian_binom(q: u64, m: u32, r: u32) -> Option<u128> {
    if r > m {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num = num.checked_mul(q.checked_pow(m - i)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow(i + 1)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_roundtrip() {
        let b = Binomials::new(20);
        for (n, k) in [(6, 3), (9, 2), (7, 0), (5, 5)] {
            for (i, s) in subsets(n, k).iter().enumerate() {
                assert_eq!(lex_rank(&b, n, s), i);
                assert_eq!(&lex_unrank(&b, n, k, i), s);
            }
        }
    }

    #[test]
    fn multiset_ranks_are_dense() {
        let b = Binomials::new(30);
        let all = multisets(5, 3);
        assert_eq!(all.len(), binom(7, 3));
        for (i, a) in all.iter().enumerate() {
            assert_eq!(multiset_rank(&b, 5, a), i);
        }
    }

    #[test]
    fn big_binomials() {
        assert_eq!(binom_big(10, 3), BigUint::from(120u32));
        assert_eq!(binom_big(3, 5), BigUint::zero());
        assert_eq!(binom_u128(60, 30), Some(118264581564861424));
        let l = log2_big(&binom_big(200, 100));
        assert!((l - 195.85).abs() < 0.01, "{l}");
        assert_eq!(gaussian_binom(2, 7, 2), Some(2667));
    }
}
