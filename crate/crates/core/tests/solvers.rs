mod common;

use common::*;
use rand::Rng;
use reallin::bench::lifted_least_squares;
use reallin::solvers::{
    cg_complex, cg_real, cost, cost_lifted, estimate_step_size, estimate_step_size_lifted, landweber_complex,
    landweber_real, lsqr_complex, lsqr_real, SolverConfig, SolverTrace,
};
use reallin::{CMatrix, LiftedMatrix, MatrixFormOp, MultCounter, RealLinearOp, C64};

type ComplexSolver = fn(&RealLinearOp, &[C64], &[C64], &SolverConfig, &MultCounter) -> reallin::Result<SolverTrace>;
type RealSolver = fn(&LiftedMatrix, &[f64], &[f64], &SolverConfig, &MultCounter) -> reallin::Result<SolverTrace>;

fn pairs() -> [(&'static str, ComplexSolver, RealSolver); 3] {
    [
        ("landweber", landweber_complex, landweber_real::<LiftedMatrix>),
        ("cg", cg_complex, cg_real::<LiftedMatrix>),
        ("lsqr", lsqr_complex, lsqr_real::<LiftedMatrix>),
    ]
}

fn zeros(n: usize) -> Vec<C64> {
    vec![C64::new(0.0, 0.0); n]
}

#[test]
fn families_produce_the_same_iterates() {
    let mut rng = rng(11);
    for _ in 0..6 {
        let n = rng.random_range(2..=64);
        let m = n + rng.random_range(1..=32);
        let form = random_form(&mut rng, m, n);
        let op = RealLinearOp::matrix(form.clone());
        let lifted = LiftedMatrix::from_matrix_form(&form);
        let b = random_vector(&mut rng, m);
        let alpha = estimate_step_size(&op).unwrap().alpha;
        for (name, complex, real) in pairs() {
            let cfg = SolverConfig::with_iters(12).step_size(alpha);
            let k = MultCounter::new();
            let tc = complex(&op, &b, &zeros(n), &cfg, &k).unwrap();
            let tr = real(&lifted, &lift(&b), &vec![0.0; 2 * n], &cfg, &k).unwrap();
            assert_eq!(tc.records.len(), tr.records.len(), "{name}");
            for (p, q) in tc.records.iter().zip(&tr.records) {
                assert!(rel_err(&p.iterate, &q.iterate) <= 1e-10, "{name} k={}", p.k);
                assert!((p.cost - q.cost).abs() <= 1e-10 * q.cost, "{name} k={}", p.k);
            }
        }
    }
}

#[test]
fn exact_solution_is_a_fixed_point() {
    let mut rng = rng(12);
    let (m, n) = (14, 5);
    let form = random_form(&mut rng, m, n);
    let op = RealLinearOp::matrix(form.clone());
    let b = random_vector(&mut rng, m);
    let x_star = lifted_least_squares(&LiftedMatrix::from_matrix_form(&form), &b).unwrap();
    for (name, complex, _) in pairs() {
        let cfg = SolverConfig::with_iters(5).step_size(estimate_step_size(&op).unwrap().alpha);
        let t = complex(&op, &b, &x_star, &cfg, &MultCounter::new()).unwrap();
        assert!(rel_err(t.final_iterate(), &x_star) < 1e-12, "{name}");
    }
}

#[test]
fn cost_decreases_for_landweber_and_cg() {
    let mut rng = rng(13);
    let op = RealLinearOp::matrix(random_form(&mut rng, 30, 10));
    let b = random_vector(&mut rng, 30);
    let k = MultCounter::new();
    for t in [
        landweber_complex(&op, &b, &zeros(10), &SolverConfig::with_iters(40), &k).unwrap(),
        cg_complex(&op, &b, &zeros(10), &SolverConfig::with_iters(20), &k).unwrap(),
    ] {
        for w in t.costs().windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12));
        }
    }
}

#[test]
fn landweber_diverges_past_step_bound() {
    // Lifted singular values all lie in [0.95, 1], so every mode is amplified.
    let mut rng = rng(14);
    let n = 6;
    let diag: Vec<C64> = (0..n)
        .map(|_| C64::from_polar(rng.random_range(0.95..=1.0), rng.random_range(0.0..std::f64::consts::TAU)))
        .collect();
    let mut f = CMatrix::zeros(n, n);
    for (i, d) in diag.iter().enumerate() {
        f[(i, i)] = *d;
    }
    let op = RealLinearOp::linear(f);
    let sigma_sq = estimate_step_size(&op).unwrap().sigma_sq_estimate;
    let b = random_vector(&mut rng, n);
    let cfg = SolverConfig::with_iters(20).step_size(2.5 / sigma_sq);
    let t = landweber_complex(&op, &b, &zeros(n), &cfg, &MultCounter::new()).unwrap();
    let costs = t.costs();
    for w in costs[1..].windows(2) {
        assert!(w[1] > w[0]);
    }
    assert!(costs[20] > 10.0 * costs[0]);
}

#[test]
fn step_size_estimate_tracks_dense_eigenvalue() {
    let mut rng = rng(15);
    for _ in 0..5 {
        let (m, n) = (rng.random_range(5..=30), rng.random_range(2..=12));
        let op = random_op(&mut rng, m, n, 2);
        let dense = probe_lifted(&op);
        let a = nalgebra::DMatrix::from_fn(dense.rows(), dense.cols(), |i, j| dense[(i, j)]);
        let top = a.singular_values().max();
        let est = estimate_step_size(&op).unwrap();
        assert!((est.sigma_sq_estimate - top * top).abs() <= 0.01 * top * top);
        let lifted = LiftedMatrix::new(dense).unwrap();
        let est_l = estimate_step_size_lifted(&lifted).unwrap();
        assert!((est_l.sigma_sq_estimate - top * top).abs() <= 0.01 * top * top);
    }
}

#[test]
fn krylov_solvers_reach_dense_minimum() {
    let mut rng = rng(16);
    let mats = [
        random_matrix(&mut rng, 12, 6),
        random_matrix(&mut rng, 9, 6),
        random_matrix(&mut rng, 9, 4),
        random_matrix(&mut rng, 4, 6),
    ];
    let op = reallin::builtins::conjugate_symmetric_from_matrices(&mats[0], &mats[1], &mats[2], &mats[3], 0.1).unwrap();
    let b = random_vector(&mut rng, 21);
    let x_star = lifted_least_squares(&LiftedMatrix::from_matrix_form(&op.materialize()), &b).unwrap();
    let k = MultCounter::new();
    let best = cost(&op, &b, &x_star, &k).unwrap();
    for t in [
        cg_complex(&op, &b, &zeros(6), &SolverConfig::with_iters(40), &k).unwrap(),
        lsqr_complex(&op, &b, &zeros(6), &SolverConfig::with_iters(40), &k).unwrap(),
    ] {
        assert!((t.final_record().cost - best).abs() <= 1e-8 * best);
    }
}

#[test]
fn cost_matches_lifted_cost() {
    let mut rng = rng(17);
    let form = random_form(&mut rng, 7, 4);
    let op = RealLinearOp::matrix(form.clone());
    let lifted = LiftedMatrix::from_matrix_form(&form);
    let (x, b) = (random_vector(&mut rng, 4), random_vector(&mut rng, 7));
    let k = MultCounter::new();
    let c = cost(&op, &b, &x, &k).unwrap();
    let cl = cost_lifted(&lifted, &lift(&b), &lift(&x), &k).unwrap();
    assert!((c - cl).abs() <= 1e-12 * cl);
    let id = RealLinearOp::identity(2).unwrap();
    assert_eq!(cost(&id, &zeros(2), &[C64::new(3.0, 0.0), C64::new(0.0, 4.0)], &k).unwrap(), 25.0);
}

#[test]
fn landweber_mult_count_matches_formula() {
    let mut rng = rng(18);
    let (m, n) = (9, 4);
    let form = random_form(&mut rng, m, n);
    let lifted = LiftedMatrix::from_matrix_form(&form);
    let op = RealLinearOp::matrix(form);
    let b = random_vector(&mut rng, m);
    let iters = 7u64;
    let cfg = SolverConfig::with_iters(iters as usize).step_size(0.01);
    let tr = landweber_real(&lifted, &lift(&b), &vec![0.0; 2 * n], &cfg, &MultCounter::new()).unwrap();
    let tc = landweber_complex(&op, &b, &zeros(n), &cfg, &MultCounter::new()).unwrap();
    let (m, n) = (m as u64, n as u64);
    // Two lifted matvecs plus the real-times-complex update per iteration.
    assert_eq!(tr.final_record().cum_real_mults, iters * (2 * (2 * m) * (2 * n) + 2 * n));
    // F and G each cost 4MN per evaluation, forward and adjoint.
    assert_eq!(tc.final_record().cum_real_mults, iters * (2 * 8 * m * n + 2 * n));
    let mults: Vec<u64> = tc.records.iter().map(|r| r.cum_real_mults).collect();
    assert!(mults.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn zero_operator_step_is_flagged() {
    let op = RealLinearOp::matrix(MatrixFormOp::zero(3, 2).unwrap());
    let s = estimate_step_size(&op).unwrap();
    assert!(s.zero_operator);
    assert_eq!(s.alpha, 1.0);
}
