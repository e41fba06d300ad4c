//! Shared generators and dense reference computations for the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use reallin::{BlackboxOp, CMatrix, MatrixFormOp, MultCounter, Pointwise, RMatrix, RealLinearOp, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gauss(rng: &mut impl Rng) -> C64 {
    C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| gauss(rng)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| gauss(rng))
}

pub fn random_form(rng: &mut impl Rng, rows: usize, cols: usize) -> MatrixFormOp {
    MatrixFormOp::new(random_matrix(rng, rows, cols), random_matrix(rng, rows, cols)).unwrap()
}

/// A blackbox computing `F·x + conj(G·x)` through closures.
pub fn random_blackbox(rng: &mut impl Rng, rows: usize, cols: usize) -> BlackboxOp {
    let f = random_matrix(rng, rows, cols);
    let g = random_matrix(rng, rows, cols);
    let (fh, gh) = (f.adjoint(), g.adjoint());
    BlackboxOp::new(
        rows,
        cols,
        move |x| {
            let gx = g.matvec(x);
            f.matvec(x).iter().zip(gx).map(|(a, b)| a + b.conj()).collect()
        },
        move |y| {
            let yc: Vec<C64> = y.iter().map(|z| z.conj()).collect();
            let a = fh.matvec(y);
            a.iter().zip(gh.matvec(&yc)).map(|(p, q)| p + q).collect()
        },
    )
    .unwrap()
}

/// A leaf of one of several kinds.
pub fn random_leaf(rng: &mut impl Rng, rows: usize, cols: usize) -> RealLinearOp {
    match rng.random_range(0..4) {
        0 => RealLinearOp::matrix(random_form(rng, rows, cols)),
        1 => RealLinearOp::blackbox(random_blackbox(rng, rows, cols)),
        2 => RealLinearOp::linear(random_matrix(rng, rows, cols)),
        _ => RealLinearOp::antilinear(random_matrix(rng, rows, cols)),
    }
}

pub fn random_pointwise(rng: &mut impl Rng, n: usize) -> RealLinearOp {
    let kind = match rng.random_range(0..4) {
        0 => Pointwise::Conjugate,
        1 => Pointwise::RealPart,
        2 => Pointwise::ImagPart,
        _ => Pointwise::Scaled(gauss(rng)),
    };
    RealLinearOp::pointwise(n, kind).unwrap()
}

/// Random operator of the given shape, an expression tree of depth at most `depth`.
pub fn random_op(rng: &mut impl Rng, rows: usize, cols: usize, depth: usize) -> RealLinearOp {
    if depth == 0 {
        return random_leaf(rng, rows, cols);
    }
    match rng.random_range(0..7) {
        0 => random_leaf(rng, rows, cols),
        1 => RealLinearOp::add(&random_op(rng, rows, cols, depth - 1), &random_op(rng, rows, cols, depth - 1)).unwrap(),
        2 => RealLinearOp::sub(&random_op(rng, rows, cols, depth - 1), &random_op(rng, rows, cols, depth - 1)).unwrap(),
        3 => {
            let mid = rng.random_range(1..=8);
            RealLinearOp::compose(&random_op(rng, rows, mid, depth - 1), &random_op(rng, mid, cols, depth - 1)).unwrap()
        }
        4 if rows >= 2 => {
            let top = rng.random_range(1..rows);
            RealLinearOp::stack(&[random_op(rng, top, cols, depth - 1), random_op(rng, rows - top, cols, depth - 1)])
                .unwrap()
        }
        5 => {
            let inner = random_op(rng, rows, cols, depth - 1);
            RealLinearOp::compose(&random_pointwise(rng, rows), &inner).unwrap()
        }
        _ => RealLinearOp::scale(StandardNormal.sample(rng), &random_op(rng, rows, cols, depth - 1)).unwrap(),
    }
}

pub fn lift(x: &[C64]) -> Vec<f64> {
    x.iter().map(|z| z.re).chain(x.iter().map(|z| z.im)).collect()
}

/// Lifted matrix of `op`, built column by column from `apply` on the real
/// basis of `R^{2N}`.
pub fn probe_lifted(op: &RealLinearOp) -> RMatrix {
    let (m, n) = (op.rows(), op.cols());
    let k = MultCounter::new();
    let mut out = RMatrix::zeros(2 * m, 2 * n);
    for j in 0..2 * n {
        let mut x = vec![C64::new(0.0, 0.0); n];
        x[j % n] = if j < n { C64::new(1.0, 0.0) } else { C64::new(0.0, 1.0) };
        let col = lift(&op.apply(&x, &k).unwrap());
        for (i, v) in col.into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    out
}

pub fn dense_mv(m: &RMatrix, x: &[f64]) -> Vec<f64> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)] * x[j]).sum())
        .collect()
}

pub fn dense_mtv(m: &RMatrix, y: &[f64]) -> Vec<f64> {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m[(i, j)] * y[i]).sum())
        .collect()
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn rel_err_real(p: &[f64], q: &[f64]) -> f64 {
    let num = norm2(&p.iter().zip(q).map(|(a, b)| a - b).collect::<Vec<_>>());
    let den = norm2(q).max(f64::MIN_POSITIVE);
    num / den
}

pub fn rel_err(p: &[C64], q: &[C64]) -> f64 {
    rel_err_real(&lift(p), &lift(q))
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max)
}
