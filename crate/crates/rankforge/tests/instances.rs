mod common;

use rankforge::ffield::{mat, rank_weight};
use rankforge::instances::*;
use rankforge::Error;

#[test]
fn rd_generation_is_deterministic_and_valid() {
    let a = gen_rd(2, 7, 8, 3, 2, 11).unwrap();
    let b = gen_rd(2, 7, 8, 3, 2, 11).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, gen_rd(2, 7, 8, 3, 2, 12).unwrap());
    a.check_invariants().unwrap();
    let plant = a.plant.as_ref().unwrap();
    assert_eq!(rank_weight(&a.field, &plant.e), 2);
    assert_eq!(common::rank_of(&mat(&a.field, &plant.e)), 2);
    assert!(a.is_solution(&plant.e));
    // y - e in C, y itself is not a low-weight error in general
    assert!(!a.is_solution(&a.y) || rank_weight(&a.field, &a.y) <= 2);
}

#[test]
fn rd_generation_redraws_errors_hidden_from_the_leading_block() {
    // with q = 2, k = 1, r = 2 about one error in 2^4 vanishes on the first
    // two positions; those draws cannot give a systematic extended code
    let mut hidden = 0;
    for seed in 0..200 {
        let inst = gen_rd(2, 5, 6, 1, 2, seed).unwrap();
        inst.check_invariants().unwrap();
        let e = &inst.plant.as_ref().unwrap().e;
        hidden += usize::from(e[..2].iter().all(|x| x.is_zero()));
    }
    assert_eq!(hidden, 0);
}

#[test]
fn rd_rejects_bad_shapes() {
    assert!(matches!(gen_rd(2, 7, 8, 3, 0, 1), Err(Error::InvalidDimensions(_))));
    assert!(matches!(gen_rd(2, 7, 8, 7, 2, 1), Err(Error::InvalidDimensions(_))));
    assert!(matches!(gen_rd(2, 3, 8, 3, 4, 1), Err(Error::InvalidDimensions(_))));
    assert!(matches!(gen_rd(4, 7, 8, 3, 2, 1), Err(Error::NotPrime(_))));
}

#[test]
fn systematic_form_spans_the_extended_code() {
    let inst = gen_rd(3, 5, 9, 4, 2, 5).unwrap();
    let f = &inst.field;
    let sys = inst.systematic().unwrap();
    let g = sys.generator(f, inst.n);
    let ht = sys.parity_transpose(f, inst.n);
    // G H^T = 0
    for row in &g {
        for c in 0..inst.n - inst.k - 1 {
            let dot = (0..inst.n).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&row[j], &ht[j][c])));
            assert!(dot.is_zero());
        }
    }
    // y is in the span of the systematic rows
    let mut all = g.clone();
    all.push(inst.y.clone());
    assert_eq!(rankforge::linalg::ext::rank(f, &all, inst.n), inst.k + 1);
}

#[test]
fn rd_permutation_keeps_the_solution() {
    let inst = gen_rd(2, 7, 8, 3, 2, 3).unwrap();
    let perm = [3, 0, 7, 1, 6, 2, 5, 4];
    let p = inst.permuted(&perm);
    let e = &inst.plant.as_ref().unwrap().e;
    let pe: Vec<_> = perm.iter().map(|&j| e[j].clone()).collect();
    assert!(p.is_solution(&pe));
}

#[test]
fn brute_force_rd_finds_the_plant() {
    for seed in 0..5 {
        let inst = gen_rd(2, 7, 8, 3, 2, seed).unwrap();
        let e = brute_force_rd(&inst, BRUTE_FORCE_BOUND).unwrap().expect("planted");
        assert!(inst.is_solution(&e));
        assert_eq!(&e, &inst.plant.as_ref().unwrap().e);
    }
}

#[test]
fn brute_force_bound_is_enforced() {
    let inst = gen_rd(2, 23, 30, 15, 3, 1).unwrap();
    assert!(matches!(brute_force_rd(&inst, BRUTE_FORCE_BOUND), Err(Error::Infeasible { .. })));
}

#[test]
fn solve_with_the_planted_support() {
    let inst = gen_rd(2, 11, 12, 5, 3, 2).unwrap();
    let plant = inst.plant.as_ref().unwrap();
    let e = solve_with_support(&inst, &plant.s.transpose()).unwrap();
    assert_eq!(e, plant.e);
}

#[test]
fn minrank_plant_has_low_rank() {
    for seed in 0..10 {
        let inst = gen_minrank(13, 7, 7, 5, 2, true, seed).unwrap();
        inst.check_invariants().unwrap();
        let x = inst.plant.as_ref().unwrap();
        assert!(common::rank_of(&inst.combination(x)) <= 2);
        assert!(inst.is_solution(x));
    }
}

#[test]
fn minrank_brute_force_agrees() {
    let f = rankforge::PrimeField::new(5).unwrap();
    for seed in 0..5 {
        let inst = gen_minrank(5, 4, 4, 3, 1, true, seed).unwrap();
        let mut x = brute_force_minrank(&inst, BRUTE_FORCE_BOUND).unwrap().expect("planted");
        let mut p = inst.plant.clone().unwrap();
        rankforge::supportminors::projective_normalize(&f, &mut x);
        rankforge::supportminors::projective_normalize(&f, &mut p);
        assert_eq!(x, p);
    }
    // random 4x4 matrices over F_5 are unlikely to span a rank-1 matrix
    let none = (0..10)
        .filter(|&s| brute_force_minrank(&gen_minrank(5, 4, 4, 2, 1, false, s).unwrap(), BRUTE_FORCE_BOUND).unwrap().is_none())
        .count();
    assert!(none >= 8, "{none}");
}

#[test]
fn rd_to_minrank_maps_the_plant() {
    let inst = gen_rd(2, 7, 8, 3, 2, 4).unwrap();
    let mr = rd_to_minrank(&inst).unwrap();
    assert_eq!(mr.k(), 7 * 4);
    let x = mr.plant.as_ref().unwrap();
    let comb = mr.combination(x);
    // Σ x_{j,i} Mat(α^i g_j) = Mat(e), since e = Σ e_j g_j
    assert_eq!(comb, mat(&inst.field, &inst.plant.as_ref().unwrap().e));
    assert!(mr.is_solution(x));
}
