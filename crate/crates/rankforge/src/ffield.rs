//! Prime fields `F_q` and extensions `F_{q^m}`.

use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use crate::linalg::DenseMatrix;
use crate::{Error, Result};

/// An element of a prime field, stored as its canonical representative.
pub type Fq = u32;

/// Largest supported prime. Keeping `q < 2^16` lets the linear algebra
/// accumulate products in `u64` without intermediate reductions.
pub const MAX_PRIME: u32 = 65521;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if q > MAX_PRIME || !is_prime(q) {
            return Err(Error::NotPrime(q as u64));
        }
        Ok(PrimeField { q })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        ((a as u64 * b as u64) % self.q as u64) as Fq
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> Fq {
        (x % self.q as u64) as Fq
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a % self.q;
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Fq) -> Fq {
        assert!(!a.is_multiple_of(self.q), "inverse of zero");
        self.pow(a, self.q as u64 - 2)
    }

    pub fn div(&self, a: Fq, b: Fq) -> Fq {
        self.mul(a, self.inv(b))
    }

    /// Map a signed integer into the field.
    pub fn from_i64(&self, v: i64) -> Fq {
        v.rem_euclid(self.q as i64) as Fq
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        rng.gen_range(0..self.q)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fq {
        rng.gen_range(1..self.q)
    }
}

/// Polynomials over `F_q` as ascending coefficient vectors without
/// trailing zeros.
mod poly {
    use super::{Fq, PrimeField};
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<Fq>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(f: &PrimeField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let n = a.len().max(b.len());
        let mut out = vec![0; n];
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out[i] = f.sub(x, y);
        }
        trim(&mut out);
        out
    }

    pub fn mul(f: &PrimeField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
        }
        let mut out: Vec<Fq> = acc.into_iter().map(|v| f.reduce(v)).collect();
        trim(&mut out);
        out
    }

    /// Remainder of `a` modulo a nonzero `b`, and the quotient.
    pub fn divrem(f: &PrimeField, a: &[Fq], b: &[Fq]) -> (Vec<Fq>, Vec<Fq>) {
        let mut r: Vec<Fq> = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead_inv = f.inv(b[db]);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut quot = vec![0; r.len() - db];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = f.mul(*r.last().unwrap(), lead_inv);
            quot[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
            }
            trim(&mut r);
        }
        trim(&mut quot);
        (quot, r)
    }

    pub fn rem(f: &PrimeField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        divrem(f, a, b).1
    }

    pub fn mulmod(f: &PrimeField, a: &[Fq], b: &[Fq], m: &[Fq]) -> Vec<Fq> {
        rem(f, &mul(f, a, b), m)
    }

    pub fn powmod(f: &PrimeField, a: &[Fq], mut e: u64, m: &[Fq]) -> Vec<Fq> {
        let mut base = rem(f, a, m);
        let mut acc = rem(f, &[1], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(f, &acc, &base, m);
            }
            base = mulmod(f, &base, &base, m);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(f: &PrimeField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        a
    }
}

/// Ben-Or irreducibility test for a monic polynomial of degree `m >= 1`.
fn is_irreducible(f: &PrimeField, modulus: &[Fq]) -> bool {
    let m = modulus.len() - 1;
    if m == 1 {
        return true;
    }
    if modulus[0] == 0 {
        return false;
    }
    let x: Vec<Fq> = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=m / 2 {
        h = poly::powmod(f, &h, f.q() as u64, modulus);
        let g = poly::gcd(f, &poly::sub(f, &h, &x), modulus);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The extension field `F_q[x]/(f)` with `deg f = m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    m: usize,
    modulus: Vec<Fq>,
}

/// An element of `F_{q^m}` as coordinates in the basis `(1, α, .., α^{m-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    coords: Vec<Fq>,
}

impl ExtElement {
    pub fn coords(&self) -> &[Fq] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Fq> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl ExtField {
    /// Build `F_{q^m}` from an ascending, monic modulus of degree `m`.
    pub fn new(base: PrimeField, modulus: Vec<Fq>) -> Result<Self> {
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::Reducible);
        }
        if modulus.iter().any(|&c| c >= base.q()) {
            return Err(Error::Reducible);
        }
        if !is_irreducible(&base, &modulus) {
            return Err(Error::Reducible);
        }
        Ok(ExtField { m: modulus.len() - 1, base, modulus })
    }

    /// `F_{q^m}` with the first irreducible monic modulus, ordering
    /// candidates by their coefficients read from `x^{m-1}` down to `x^0`.
    pub fn with_default_modulus(base: PrimeField, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDimensions("extension degree must be positive"));
        }
        let q = base.q();
        let mut low = vec![0 as Fq; m];
        loop {
            let mut candidate = low.clone();
            candidate.push(1);
            if (m == 1 || candidate[0] != 0) && is_irreducible(&base, &candidate) {
                return Ok(ExtField { base, m, modulus: candidate });
            }
            // increment low as a base-q number, least significant first
            let mut i = 0;
            loop {
                if i == m {
                    return Err(Error::Reducible);
                }
                low[i] += 1;
                if low[i] < q {
                    break;
                }
                low[i] = 0;
                i += 1;
            }
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[Fq] {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement { coords: vec![0; self.m] }
    }

    pub fn one(&self) -> ExtElement {
        self.from_base(1)
    }

    pub fn from_base(&self, c: Fq) -> ExtElement {
        let mut coords = vec![0; self.m];
        coords[0] = c % self.q();
        ExtElement { coords }
    }

    pub fn from_coords(&self, coords: Vec<Fq>) -> Result<ExtElement> {
        if coords.len() != self.m || coords.iter().any(|&c| c >= self.q()) {
            return Err(Error::FieldMismatch);
        }
        Ok(ExtElement { coords })
    }

    /// `α^i`, where `α` is the class of `x`.
    pub fn alpha_pow(&self, i: usize) -> ExtElement {
        let mut acc = self.one();
        let alpha = if self.m == 1 {
            // x reduces to -f_0 in degree one
            self.from_base(self.base.neg(self.modulus[0]))
        } else {
            let mut c = vec![0; self.m];
            c[1] = 1;
            ExtElement { coords: c }
        };
        for _ in 0..i {
            acc = self.mul(&acc, &alpha);
        }
        acc
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElement {
        ExtElement { coords: (0..self.m).map(|_| self.base.random(rng)).collect() }
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(&x, &y)| self.base.add(x, y)).collect();
        ExtElement { coords }
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(&x, &y)| self.base.sub(x, y)).collect();
        ExtElement { coords }
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        ExtElement { coords: a.coords.iter().map(|&x| self.base.neg(x)).collect() }
    }

    pub fn scale(&self, a: &ExtElement, c: Fq) -> ExtElement {
        ExtElement { coords: a.coords.iter().map(|&x| self.base.mul(x, c)).collect() }
    }

    /// Product reduced modulo the defining polynomial.
    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        debug_assert_eq!(a.coords.len(), self.m);
        debug_assert_eq!(b.coords.len(), self.m);
        let m = self.m;
        let f = &self.base;
        let q = f.q() as u64;
        let mut acc = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coords.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
        }
        let mut red: Vec<u64> = acc.into_iter().map(|v| v % q).collect();
        // x^m = -(f_0 + .. + f_{m-1} x^{m-1})
        for d in (m..2 * m - 1).rev() {
            let c = red[d];
            if c == 0 {
                continue;
            }
            red[d] = 0;
            for i in 0..m {
                let fi = self.modulus[i] as u64;
                if fi != 0 {
                    red[d - m + i] = (red[d - m + i] + (q - fi) * c) % q;
                }
            }
        }
        red.truncate(m);
        ExtElement { coords: red.into_iter().map(|v| v as Fq).collect() }
    }

    /// Checked multiplication that rejects operands of the wrong size.
    pub fn try_mul(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement> {
        if a.coords.len() != self.m || b.coords.len() != self.m {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul(a, b))
    }

    /// Inverse through the extended Euclidean algorithm. Panics on zero.
    pub fn inv(&self, a: &ExtElement) -> ExtElement {
        assert!(!a.is_zero(), "inverse of zero");
        let f = &self.base;
        // invariant: s * a == r mod modulus
        let mut r0 = self.modulus.clone();
        let mut r1 = a.coords.clone();
        poly::trim(&mut r1);
        let mut s0: Vec<Fq> = Vec::new();
        let mut s1: Vec<Fq> = vec![1];
        while r1.len() > 1 {
            let (quot, rem) = poly::divrem(f, &r0, &r1);
            let s2 = poly::sub(f, &s0, &poly::mul(f, &quot, &s1));
            r0 = core::mem::replace(&mut r1, rem);
            s0 = core::mem::replace(&mut s1, s2);
        }
        let c = f.inv(r1[0]);
        let mut coords = vec![0; self.m];
        for (i, &v) in s1.iter().enumerate() {
            coords[i] = f.mul(v, c);
        }
        ExtElement { coords }
    }

    pub fn div(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.mul(a, &self.inv(b))
    }

    /// The element `Σ_i c_i α^i` for an F_q column `c` of length `m`.
    pub fn from_column(&self, c: &[Fq]) -> ExtElement {
        ExtElement { coords: c.to_vec() }
    }
}

/// Coordinate rows of F_{q^m} coefficients: row `k` holds the `k`-th
/// coordinate of every entry.
pub fn unfold(field: &ExtField, coeffs: &[ExtElement]) -> Vec<Vec<Fq>> {
    let mut rows = vec![vec![0; coeffs.len()]; field.m()];
    for (j, a) in coeffs.iter().enumerate() {
        for (k, &c) in a.coords().iter().enumerate() {
            rows[k][j] = c;
        }
    }
    rows
}

/// The `m x n` coordinate matrix whose column `j` holds `v_j`.
pub fn mat(field: &ExtField, v: &[ExtElement]) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(*field.base(), field.m(), v.len());
    for (j, a) in v.iter().enumerate() {
        for (i, &c) in a.coords().iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

/// Inverse of [`mat`]: read the columns of an `m x n` matrix as elements.
pub fn unmat(field: &ExtField, a: &DenseMatrix) -> Vec<ExtElement> {
    (0..a.cols()).map(|j| field.from_column(&a.column(j))).collect()
}

/// Rank over `F_q` of the coordinate matrix of `v`.
pub fn rank_weight(field: &ExtField, v: &[ExtElement]) -> usize {
    mat(field, v).rank()
}
