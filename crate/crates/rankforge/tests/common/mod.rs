//! Independent reference computations shared by the integration tests.
//! Nothing here calls into the library's elimination or minor code.
#![allow(dead_code)]

use rand::Rng;
use rankforge::{DenseMatrix, ExtElement, ExtField, Fq, PrimeField};

/// All permutations of `0..n` with their signs (+1 even, -1 odd).
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<(Vec<usize>, bool)>) {
        let n = used.len();
        if prefix.len() == n {
            let inversions =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| prefix[i] > prefix[j]).count();
            out.push((prefix.clone(), inversions % 2 == 0));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Leibniz determinant over `F_q`.
pub fn leibniz(f: &PrimeField, a: &[Vec<Fq>]) -> Fq {
    let n = a.len();
    permutations(n).into_iter().fold(0, |acc, (p, even)| {
        let prod = (0..n).fold(1, |x, i| f.mul(x, a[i][p[i]]));
        if even {
            f.add(acc, prod)
        } else {
            f.sub(acc, prod)
        }
    })
}

/// Leibniz determinant over `F_{q^m}`.
pub fn leibniz_ext(f: &ExtField, a: &[Vec<ExtElement>]) -> ExtElement {
    let n = a.len();
    permutations(n).into_iter().fold(f.zero(), |acc, (p, even)| {
        let prod = (0..n).fold(f.one(), |x, i| f.mul(&x, &a[i][p[i]]));
        if even {
            f.add(&acc, &prod)
        } else {
            f.sub(&acc, &prod)
        }
    })
}

/// Lexicographic `k`-subsets of `0..n`.
pub fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Maximal minors of an `r x n` matrix by Leibniz, in lex order of the
/// column subsets.
pub fn minors(f: &PrimeField, c: &[Vec<Fq>]) -> Vec<Fq> {
    let r = c.len();
    let n = c.first().map_or(0, |row| row.len());
    lex_subsets(n, r)
        .into_iter()
        .map(|t| {
            let sub: Vec<Vec<Fq>> = c.iter().map(|row| t.iter().map(|&j| row[j]).collect()).collect();
            leibniz(f, &sub)
        })
        .collect()
}

/// Rank by fraction-free elimination: rows are combined as
/// `a_pp * row_i - a_ip * row_p`, never dividing.
pub fn rank_fraction_free(f: &PrimeField, rows: &[Vec<Fq>]) -> usize {
    let mut a: Vec<Vec<Fq>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            for j in 0..cols {
                row[j] = f.sub(f.mul(pivot[c], row[j]), f.mul(lead, pivot[j]));
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_of(m: &DenseMatrix) -> usize {
    rank_fraction_free(&m.field(), &m.to_rows())
}

/// Whether `u` and `v` are nonzero multiples of each other.
pub fn proportional(f: &PrimeField, u: &[Fq], v: &[Fq]) -> bool {
    let Some(i) = u.iter().position(|&x| x != 0) else {
        return false;
    };
    if v[i] == 0 {
        return false;
    }
    let s = f.div(v[i], u[i]);
    u.iter().zip(v).all(|(&a, &b)| f.mul(a, s) == b)
}

/// Polynomial remainder over `F_q`, coefficients lowest degree first.
fn poly_rem(f: &PrimeField, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = f.inv(b[db]);
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            let c = f.mul(lead, inv);
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
            }
        }
        r.pop();
    }
    r
}

/// Irreducibility by trial division with every monic polynomial of degree
/// `1..=deg/2`.
pub fn irreducible_by_trial_division(f: &PrimeField, poly: &[Fq]) -> bool {
    let d = poly.len() - 1;
    let q = f.q() as usize;
    for dd in 1..=d / 2 {
        for idx in 0..q.pow(dd as u32) {
            let mut g: Vec<Fq> = (0..dd).map(|i| ((idx / q.pow(i as u32)) % q) as Fq).collect();
            g.push(1);
            if poly_rem(f, poly, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Random sparse `rows x cols` system whose last column is adjusted so that
/// a random `v` with `v[cols-1] = 1` is in the kernel.
pub fn planted_kernel_system(f: PrimeField, rows: usize, cols: usize, per_row: usize, seed: u64) -> (rankforge::SparseMatrix, Vec<Fq>) {
    let mut rng = rankforge::rng_from_seed(seed);
    let mut v: Vec<Fq> = (0..cols).map(|_| f.random(&mut rng)).collect();
    v[cols - 1] = 1;
    let base = rankforge::SparseMatrix::random(f, rows, cols, per_row, &mut rng);
    let mut out = rankforge::SparseMatrix::new(f, cols);
    for i in 0..base.rows() {
        let mut entries: Vec<(u32, Fq)> = base.row(i).iter().copied().filter(|e| e.0 as usize != cols - 1).collect();
        let dot = entries.iter().fold(0, |acc, &(j, a)| f.add(acc, f.mul(a, v[j as usize])));
        if dot != 0 {
            entries.push((cols as u32 - 1, f.neg(dot)));
        }
        out.push_row(entries);
    }
    (out, v)
}

/// Random sparse system with more rows than columns and no planted kernel.
pub fn random_tall_system(f: PrimeField, cols: usize, per_row: usize, seed: u64) -> rankforge::SparseMatrix {
    let mut rng = rankforge::rng_from_seed(seed);
    rankforge::SparseMatrix::random(f, cols + cols / 2, cols, per_row, &mut rng)
}

/// Coefficients against `det(h[T, J])` and the identity
/// `det((C h)[.., J]) = Σ_T det(C[.., T]) det(h[T, J])`.
pub fn cauchy_binet_trials(count: usize, seed: u64) -> usize {
    let mut rng = rankforge::rng_from_seed(seed);
    let mut checked = 0;
    for _ in 0..count {
        let q = [2, 3, 13][rng.gen_range(0..3)];
        let m = rng.gen_range(2..6);
        let f = ExtField::with_default_modulus(PrimeField::new(q).unwrap(), m).unwrap();
        let base = *f.base();
        let r = rng.gen_range(1..4);
        let w = rng.gen_range(r..r + 3);
        let dense = rng.gen_range(r.min(2)..5);
        let offset = rng.gen_range(0..2).min(w);
        let units = rng.gen_range(0..=w - offset);
        let n_pos = dense + units;
        if n_pos < r {
            continue;
        }
        let mut h: Vec<Vec<_>> = (0..dense).map(|_| (0..w).map(|_| f.random(&mut rng)).collect()).collect();
        for i in 0..units {
            h.push((0..w).map(|c| if c == offset + i { f.one() } else { f.zero() }).collect());
        }
        let eqs = rankforge::maxminors::maxmin_coefficients(&f, &h, w, dense, r).unwrap();
        let ts = lex_subsets(n_pos, r);
        let js = lex_subsets(w, r);
        assert_eq!(eqs.len(), js.len());
        let ji = rng.gen_range(0..js.len());
        let j = &js[ji];
        let eq = &eqs[ji];
        for (ti, t) in ts.iter().enumerate() {
            let sub: Vec<Vec<_>> = t.iter().map(|&a| j.iter().map(|&b| h[a][b].clone()).collect()).collect();
            let want = leibniz_ext(&f, &sub);
            let got = eq.iter().find(|e| e.0 == ti).map_or(f.zero(), |e| e.1.clone());
            assert_eq!(got, want, "T={t:?} J={j:?}");
        }
        let c = DenseMatrix::random(base, r, n_pos, &mut rng);
        let ct = minors(&base, &c.to_rows());
        let lhs = eq.iter().fold(f.zero(), |acc, (ti, coef)| f.add(&acc, &f.scale(coef, ct[*ti])));
        let ch: Vec<Vec<_>> = (0..r)
            .map(|i| {
                j.iter()
                    .map(|&col| (0..n_pos).fold(f.zero(), |acc, a| f.add(&acc, &f.scale(&h[a][col], c.get(i, a)))))
                    .collect()
            })
            .collect();
        assert_eq!(lhs, leibniz_ext(&f, &ch));
        checked += 1;
    }
    checked
}


/// Evaluate `Σ_{j,k} S_jk det((r_j ; r_k ; C)[.., J])` through the library's
/// degree-one equations, expanding along `r_k`. Returns the number of
/// points where a symmetric `S` gave zero and the number where a
/// non-symmetric `S` gave nonzero (the relation is not vacuous).
pub fn symmetric_tensor_trials(points: usize, seed: u64) -> (usize, usize) {
    let mut rng = rankforge::rng_from_seed(seed);
    let (mut zero, mut nonzero) = (0, 0);
    for t in 0..points {
        let f = PrimeField::new(13).unwrap();
        let r = rng.gen_range(1..4);
        let n = rng.gen_range(r + 2..r + 5);
        let m = rng.gen_range(3..6);
        let k = rng.gen_range(2..6);
        let inst = rankforge::instances::gen_minrank(13, m, n, k, r, false, seed.wrapping_add(t as u64)).unwrap();
        let base = rankforge::supportminors::build_sm_base(&inst).unwrap();
        let x: Vec<Fq> = (0..k).map(|_| f.random(&mut rng)).collect();
        let c: Vec<Fq> = (0..lex_subsets(n, r).len()).map(|_| f.random(&mut rng)).collect();
        let rows = inst.combination(&x);
        let small = lex_subsets(n, r + 1);
        let eval = |j: usize, set: &[usize]| -> Fq {
            let idx = j * small.len() + small.iter().position(|s| s == set).unwrap();
            base.equations[idx]
                .terms
                .iter()
                .fold(0, |acc, &(i, tt, coef)| f.add(acc, f.mul(coef, f.mul(x[i as usize], c[tt as usize]))))
        };
        let big = lex_subsets(n, r + 2);
        let j_set = &big[rng.gen_range(0..big.len())];
        let relation = |s: &dyn Fn(usize, usize) -> Fq| -> Fq {
            let mut total = 0;
            for j in 0..m {
                for kk in 0..m {
                    let w = s(j, kk);
                    if w == 0 {
                        continue;
                    }
                    for idx in 0..j_set.len() {
                        let rest: Vec<usize> = j_set.iter().enumerate().filter(|e| e.0 != idx).map(|e| *e.1).collect();
                        let term = f.mul(rows.get(kk, j_set[idx]), eval(j, &rest));
                        let term = if idx % 2 == 1 { f.neg(term) } else { term };
                        total = f.add(total, f.mul(w, term));
                    }
                }
            }
            total
        };
        let mut sym = vec![vec![0; m]; m];
        let mut any = vec![vec![0; m]; m];
        for a in 0..m {
            for b in 0..m {
                any[a][b] = f.random(&mut rng);
                if b >= a {
                    sym[a][b] = f.random(&mut rng);
                    sym[b][a] = sym[a][b];
                }
            }
        }
        if relation(&|a, b| sym[a][b]) == 0 {
            zero += 1;
        }
        if relation(&|a, b| any[a][b]) != 0 {
            nonzero += 1;
        }
    }
    (zero, nonzero)
}

/// Scale the first nonzero entry to 1.
pub fn normalized(f: &PrimeField, x: &[Fq]) -> Vec<Fq> {
    let mut v = x.to_vec();
    if let Some(&lead) = v.iter().find(|&&a| a != 0) {
        let inv = f.inv(lead);
        v.iter_mut().for_each(|a| *a = f.mul(*a, inv));
    }
    v
}
