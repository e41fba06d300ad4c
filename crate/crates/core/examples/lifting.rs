//! The lifted real matrix of an operator, built three ways.

use reallin::builtins::conjugate_symmetric_from_matrices;
use reallin::lift::conjugate_symmetric_lifted;
use reallin::{lift_vector, CMatrix, LiftedMatrix, LiftedOperator, MatrixFormOp, MultCounter, RealLinearOp, C64};

fn main() -> reallin::Result<()> {
    let c = |re, im| C64::new(re, im);

    // Multiplication by i rotates the lifted plane.
    let rot = LiftedMatrix::from_matrix_form(&MatrixFormOp::linear(CMatrix::scaled_identity(1, c(0., 1.))));
    println!("lift(i·x)  = {:?}", rot.matrix());
    let conj = LiftedMatrix::from_matrix_form(&RealLinearOp::conjugation(1)?.materialize());
    println!("lift(conj) = {:?}", conj.matrix());

    let a = CMatrix::from_fn(3, 2, |i, j| c(i as f64 - j as f64, 0.5));
    let cm = CMatrix::from_fn(2, 2, |i, j| c(1.0, (i * j) as f64));
    let d = CMatrix::from_fn(2, 2, |i, _| c(0.0, i as f64 + 1.0));
    let e = CMatrix::from_fn(2, 2, |_, j| c(j as f64, -1.0));
    let direct = conjugate_symmetric_lifted(&a, &cm, &d, &e, 0.5)?;
    let via_form = LiftedMatrix::from_matrix_form(&conjugate_symmetric_from_matrices(&a, &cm, &d, &e, 0.5)?.materialize());
    println!("direct vs materialized: max diff {:.2e}", direct.matrix().max_abs_diff(via_form.matrix()));

    let k = MultCounter::new();
    let x = [c(1., -1.), c(0.5, 2.)];
    println!("Ã·x̃ = {:?}", direct.apply(&lift_vector(&x), &k)?);
    Ok(())
}
