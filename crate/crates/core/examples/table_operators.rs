//! Pointwise built-ins and the two regularized systems with their adjoints.

use reallin::builtins::{conjugate_symmetric_from_matrices, phase_constrained_system};
use reallin::{CMatrix, MultCounter, RealLinearOp, C64};

fn main() -> reallin::Result<()> {
    let c = |re, im| C64::new(re, im);
    let k = MultCounter::new();
    let v = [c(1., 2.), c(-3., 0.5)];

    for (name, op) in [
        ("conj", RealLinearOp::conjugation(2)?),
        ("real", RealLinearOp::real_part(2)?),
        ("imag", RealLinearOp::imag_part(2)?),
    ] {
        println!("{name}: A(v) = {:?}, A*(v) = {:?}", op.apply(&v, &k)?, op.adjoint(&v, &k)?);
    }

    let a = CMatrix::from_fn(3, 2, |i, j| c(1.0 + i as f64, j as f64));
    let b = CMatrix::from_fn(2, 2, |i, j| c((i + j) as f64, 1.0));
    let phase = phase_constrained_system(&RealLinearOp::linear(a.clone()), &RealLinearOp::linear(b), 0.1)?;
    println!("phase-constrained: {} x {}", phase.rows(), phase.cols());
    println!("  A*(y) = {:?}", phase.adjoint(&[c(1., 0.); 5], &k)?);

    let cm = CMatrix::identity(2);
    let d = CMatrix::from_fn(2, 3, |i, j| c(i as f64, -(j as f64)));
    let e = CMatrix::from_fn(3, 2, |i, j| c(j as f64, i as f64));
    let sym = conjugate_symmetric_from_matrices(&a, &cm, &d, &e, 0.1)?;
    let form = sym.materialize();
    println!("conjugate-symmetric: F = {:?}", form.f());
    println!("                     G = {:?}", form.g());
    Ok(())
}
