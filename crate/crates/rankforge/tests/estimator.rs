use rankforge::estimator::*;
use rankforge::Error;

const Q2: FieldOrder = FieldOrder::Small(2);

/// log2 binom(n, k) by a running product.
fn lb(n: usize, k: usize) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64).log2() - ((i + 1) as f64).log2()).sum()
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn maxminors_cost_by_hand() {
    for (m, n, k, r, p) in [(79, 94, 47, 5, 0), (79, 94, 47, 5, 9), (128, 120, 80, 4, 3), (83, 298, 149, 5, 40)] {
        let want = (m as f64).log2() + lb(n - p - k - 1, r) + 1.81 * lb(n - p, r);
        let got = cost_overdetermined(m, n, k, r, p, 2.81).unwrap();
        assert!(close(got, want, 1e-9), "{got} {want}");
    }
    // ROLLO-I-256 is underdetermined without specialization
    assert!(matches!(cost_overdetermined(113, 134, 67, 7, 0, 2.81), Err(Error::Precondition(_))));
}

#[test]
fn overdetermination_matches_counts() {
    for (m, n, k, r) in [(79, 94, 47, 5), (113, 134, 67, 7), (7, 8, 3, 2), (4, 8, 3, 2)] {
        let lhs = m as u128 * binom(n - k - 1, r);
        let rhs = binom(n, r) - 1;
        assert_eq!(is_overdetermined(m, n, k, r, 0), lhs >= rhs);
        let ratio = overdetermination_ratio(m, n, k, r).unwrap();
        assert!(close(ratio, lhs as f64 / rhs as f64, 1e-9));
    }
    let r = overdetermination_ratio(79, 94, 47, 5).unwrap();
    assert!(close(r, 1.97, 0.005), "{r}");
}

#[test]
fn hybrid_degenerates_to_plain() {
    for (m, n, k, r) in [(79, 94, 47, 5), (89, 106, 53, 6)] {
        let plain = cost_overdetermined(m, n, k, r, 0, 2.81).unwrap();
        assert_eq!(cost_hybrid(Q2, m, n, k, r, 0, 2.81).unwrap(), plain);
        assert_eq!(minimal_hybrid_a(m, n, k, r), Some(0));
    }
    assert_eq!(minimal_hybrid_a(113, 134, 67, 7), Some(8));
    assert!(!hybrid_valid(113, 134, 67, 7, 7));
    assert!(matches!(cost_hybrid(Q2, 113, 134, 67, 7, 7, 2.81), Err(Error::Precondition(_))));
    let c = cost_hybrid(Q2, 113, 134, 67, 7, 8, 2.81).unwrap();
    let want = 56.0 + 113f64.log2() + lb(66, 7) + 1.81 * lb(126, 7);
    assert!(close(c, want, 1e-9));
    assert!(close(c, 158.05, 0.01), "{c}");
    // each guessed column costs q^r but shrinks the matrix
    let c9 = cost_hybrid(Q2, 113, 134, 67, 7, 9, 2.81).unwrap();
    assert!(c9 > c);
    let c3 = cost_hybrid(FieldOrder::Small(3), 113, 134, 67, 7, 8, 2.81).unwrap();
    assert!(close(c3 - c, 56.0 * (3f64.log2() - 1.0), 1e-9));
}

#[test]
fn support_minors_condition() {
    let q13 = FieldOrder::Small(13);
    // 245 independent equations against 5 * 21 = 105 monomials
    assert!(sm_condition(q13, 7, 7, 5, 2, 1));
    assert_eq!(minimal_sm_degree(q13, 7, 7, 5, 2), Some(1));
    // 28 equations for 30 monomials at b = 1
    assert!(!sm_condition(q13, 7, 4, 5, 2, 1));
    assert_eq!(minimal_sm_degree(q13, 7, 4, 5, 2), Some(2));
    // q must exceed b outside characteristic two
    assert!(!sm_condition(FieldOrder::Small(3), 7, 4, 5, 2, 3));
    assert!(!sm_condition(q13, 7, 7, 5, 2, 4));
    let cols: f64 = 5.0 * 21.0;
    let w = cost_sm(q13, 7, 7, 5, 2, 1, LinearSolver::Wiedemann, 2.81).unwrap();
    assert!(close(w, (15f64).log2() + 2.0 * cols.log2(), 1e-9));
    let d = cost_sm(q13, 7, 7, 5, 2, 1, LinearSolver::Strassen, 2.81).unwrap();
    assert!(close(d, 2.81 * cols.log2(), 1e-9));
}

#[test]
fn combined_counts_by_hand() {
    // q = 2, (m, n, k, r) = (10, 9, 5, 2), b = 1: K = 51
    let c = combined_counts(Q2, 10, 9, 5, 2, 1, 0, 0).unwrap();
    assert_eq!(c.a, (51 * binom(9, 2)).into());
    assert_eq!(c.b, (10 * binom(3, 2) * 51).into());
    assert_eq!(c.c, (10 * binom(9, 3)).into());
    // a and p both shrink the length, only p shrinks n - k - 1
    let ca = combined_counts(Q2, 10, 12, 5, 2, 1, 2, 0).unwrap();
    let cp = combined_counts(Q2, 10, 12, 5, 2, 1, 0, 2).unwrap();
    assert_eq!(ca.a, cp.a);
    assert_eq!(ca.b, (10 * binom(6, 2) * 51).into());
    assert_eq!(cp.b, (10 * binom(4, 2) * 51).into());
    assert!(combined_counts(Q2, 10, 9, 5, 2, 1, 0, 2).is_none());
}

#[test]
fn combined_cost_by_hand() {
    let (m, n, k, r) = (113, 134, 67, 7);
    assert!(!combined_condition(Q2, m, n, k, r, 1, 0, 0));
    assert_eq!(minimal_combined_degree(Q2, m, n, k, r, 0, 0), Some(2));
    let kk = (m * k + 1) as u128;
    let xs = kk + kk * (kk - 1) / 2;
    let a = (binom(n, r) * xs) as f64;
    let bb = (m as u128 * binom(n - k - 1, r) * xs) as f64;
    let cc = dexp_q2_b2(m, n, kk as usize, r);
    let strassen = (bb + cc).log2() + 1.81 * a.log2();
    let s = cost_rd_combined(Q2, m, n, k, r, 2, 0, 0, LinearSolver::Strassen, 2.81).unwrap();
    assert!(close(s, strassen, 1e-6), "{s} {strassen}");
    let per_row = (bb * binom(k + r + 1, r) as f64 + cc * (kk as f64) * (r + 1) as f64) / (bb + cc);
    let wied = per_row.log2() + 2.0 * a.log2();
    let w = cost_rd_combined(Q2, m, n, k, r, 2, 0, 0, LinearSolver::Wiedemann, 2.81).unwrap();
    assert!(close(w, wied, 1e-6), "{w} {wied}");
    assert!(close(w, 154.0, 1.0), "{w}");
}

/// Independent equations at b = 2 over F_2: both layers of degree-1 and
/// degree-2 products, minus the symmetric-tensor relations.
fn dexp_q2_b2(m: usize, n: usize, kk: usize, r: usize) -> f64 {
    let one = (m as u128 * binom(n, r + 1)) as f64;
    one + one * kk as f64 - (binom(n, r + 2) * binom(m + 1, 2)) as f64
}

#[test]
fn combinatorial_by_hand() {
    let c = cost_combinatorial(Q2, 79, 94, 47, 5);
    let e = 5 * (79 * 48_usize).div_ceil(94) - 79;
    assert!(close(c, 2.0 * (94.0 * 79.0f64).log2() + e as f64, 1e-9));
    assert!(matches!(cost_hybrid_nonhomogeneous(), Err(Error::Precondition(_))));
}

#[test]
fn reports_pick_the_cheapest() {
    let rep = optimize_rd(Q2, 113, 134, 67, 7, &RdSearch::default());
    let best = rep.best().unwrap();
    assert!(rep.plans.iter().all(|p| p.log2_cost >= best.log2_cost));
    let hyb = rep.best_of(&[Variant::Hybrid]).unwrap();
    assert_eq!(hyb.a, 8);
    assert_eq!(best.variant, Variant::SmRdCombined);
    // a plan that ties keeps the smaller key
    let mut twin = best.clone();
    twin.p += 1;
    assert!(best.better_than(&twin) && !twin.better_than(best));
    let restricted = optimize_rd(Q2, 113, 134, 67, 7, &RdSearch { free_solver: false, ..RdSearch::default() });
    assert!(restricted.best().unwrap().log2_cost >= best.log2_cost);
}

#[test]
fn large_field_skips_guessing() {
    let rep = optimize_rd(FieldOrder::Large, 113, 134, 67, 7, &RdSearch::default());
    assert!(rep.plans.iter().all(|p| p.a == 0 || p.log2_cost.is_infinite()));
    let mr = optimize_minrank(FieldOrder::Large, 174, 174, 162, 34);
    let b = mr.best().unwrap();
    assert_eq!((b.n_prime, b.b), (61, 2));
}

#[test]
fn sweep_point() {
    let pts = sweep(2, 5, 1.18, 90..=100, SweepMode::Overdetermined, 2.81);
    assert!(pts.iter().all(|p| p.n % 2 == 0 && p.k == p.n / 2));
    let p = pts.iter().find(|p| p.n == 94).unwrap();
    assert_eq!(p.m, 79);
    assert!(close(p.log2_cost, cost_overdetermined(79, 94, 47, 5, 0, 2.81).unwrap(), 1e-12));
    let opt = sweep(2, 5, 1.18, 90..=100, SweepMode::Optimized, 2.81);
    for (a, b) in pts.iter().zip(&opt) {
        assert!(b.log2_cost <= a.log2_cost);
    }
}

#[test]
fn renderers() {
    let rows: Vec<_> = ROLLO_RQC[..3]
        .iter()
        .map(|pr| (*pr, optimize_rd(FieldOrder::Small(pr.q), pr.m, pr.n, pr.k, pr.r, &RdSearch::default())))
        .collect();
    let csv = render_rd_csv(&rows);
    assert_eq!(csv.lines().count(), 4);
    assert!(csv.starts_with("scheme,"));
    let blocks: Vec<_> = NEW_PARAMS.iter().map(|bp| estimate_block(bp, 2.81)).collect();
    let text = render_block_text(&blocks);
    assert!(text.contains("not modeled"));
    assert!(text.contains('*'));
    assert_eq!(render_block_csv(&blocks).lines().count(), 7);
}
