mod common;

use rankforge::instances::{brute_force_rd, gen_rd, BRUTE_FORCE_BOUND};
use rankforge::maxminors::*;
use rankforge::{DenseMatrix, Error};

#[test]
fn plant_minors_are_in_the_kernel() {
    for (seed, p) in [(1, 0), (2, 0), (3, 1), (4, 1)] {
        let inst = gen_rd(2, 7, 8, 3, 2, seed).unwrap();
        let sys = build_maxmin(&inst, p).unwrap();
        let c = &inst.plant.as_ref().unwrap().c;
        let cols: Vec<usize> = (0..inst.n - p).collect();
        let rows: Vec<usize> = (0..inst.r).collect();
        let v = common::minors(&c.field(), &c.submatrix(&rows, &cols).to_rows());
        assert_eq!(sys.matrix.cols(), v.len());
        assert!(sys.matrix.is_kernel_vector(&v));
    }
    let inst = gen_rd(13, 5, 9, 3, 2, 7).unwrap();
    let sys = build_maxmin(&inst, 0).unwrap();
    let v = common::minors(&inst.field.base().clone(), &inst.plant.as_ref().unwrap().c.to_rows());
    assert!(sys.matrix.is_kernel_vector(&v));
}

#[test]
fn coefficients_follow_cauchy_binet() {
    assert!(common::cauchy_binet_trials(80, 21) >= 50);
}

#[test]
fn kernel_reads_off_the_plant() {
    for seed in 0..6 {
        let inst = gen_rd(2, 7, 8, 3, 2, seed).unwrap();
        let c = &inst.plant.as_ref().unwrap().c;
        let sys = build_maxmin(&inst, 0).unwrap();
        let v = kernel_direction(&sys).unwrap();
        let lead: Vec<usize> = (0..2).collect();
        assert_eq!(v[0] == 1, c.submatrix(&lead, &lead).det() != 0);
        let c_star = read_coefficients(&sys, &c.field(), &v);
        assert_eq!(c_star.rref().matrix, c.rref().matrix);
        // the minors of C* reproduce v
        assert_eq!(common::minors(&c.field(), &c_star.to_rows()), v);
    }
}

#[test]
fn variants_agree_with_brute_force() {
    for seed in 0..8 {
        let inst = gen_rd(2, 7, 8, 3, 2, seed).unwrap();
        let bf = brute_force_rd(&inst, BRUTE_FORCE_BOUND).unwrap().unwrap();
        let e0 = solve_overdetermined(&inst, 0).unwrap();
        assert_eq!(e0, bf);
        assert_eq!(solve_hybrid(&inst, 1).unwrap(), e0);
        assert_eq!(solve_hybrid(&inst, 0).unwrap(), e0);
        // one punctured position leaves 21 equations for 21 unknowns: the
        // rank condition may fail, but a returned error must agree
        match solve_overdetermined(&inst, 1) {
            Ok(e) => assert_eq!(e, e0),
            Err(err) => assert!(matches!(err, Error::RankDeficient { .. }), "{err:?}"),
        }
    }
}

#[test]
fn maximal_puncturing_with_slack() {
    // w = 5: p = 2 keeps 33 equations for 28 unknowns
    for seed in 0..6 {
        let inst = gen_rd(2, 11, 10, 4, 2, seed).unwrap();
        let e0 = solve_overdetermined(&inst, 0).unwrap();
        assert_eq!(solve_overdetermined(&inst, 2).unwrap(), e0);
        assert!(matches!(solve_overdetermined(&inst, 3), Err(Error::Precondition(_))));
    }
}

#[test]
fn larger_field_and_q13() {
    let inst = gen_rd(13, 5, 9, 3, 2, 3).unwrap();
    let e = solve_overdetermined(&inst, 0).unwrap();
    assert!(inst.is_solution(&e));
    assert_eq!(e, inst.plant.as_ref().unwrap().e);
}

#[test]
fn preconditions() {
    let inst = gen_rd(2, 7, 8, 3, 2, 1).unwrap();
    // two punctured positions leave 7 equations for 15 unknowns
    assert!(matches!(solve_overdetermined(&inst, 2), Err(Error::Precondition(_))));
    assert!(matches!(build_maxmin(&inst, 4), Err(Error::Precondition(_))));
    let under = gen_rd(2, 4, 8, 3, 2, 1).unwrap();
    assert!(matches!(solve_overdetermined(&under, 0), Err(Error::Precondition(_))));
    let g = DenseMatrix::zeros(*inst.field.base(), 2, 3);
    assert!(matches!(build_hybrid(&inst, 1, &g), Err(Error::InvalidDimensions(_))));
}

#[test]
fn system_shape() {
    let inst = gen_rd(2, 7, 8, 3, 2, 1).unwrap();
    let sys = build_maxmin(&inst, 0).unwrap();
    assert_eq!((sys.matrix.rows(), sys.matrix.cols()), (7 * 6, 28));
    assert_eq!(sys.column_subset(0), vec![0, 1]);
    assert_eq!(sys.column_of(&[6, 7]), 27);
    let sys = build_maxmin(&inst, 1).unwrap();
    assert_eq!((sys.matrix.rows(), sys.matrix.cols()), (7 * 3, 21));
}

#[test]
fn rank_heuristic_small() {
    let rep = verify_rank_heuristic(2, 7, 8, 3, 2, 20, 100).unwrap();
    assert_eq!(rep.trials, 20);
    assert_eq!(rep.columns, 28);
    assert!(rep.ranks.iter().all(|&x| x <= 27));
    assert!(rep.frequency() >= 0.9, "{:?}", rep.ranks);
}
