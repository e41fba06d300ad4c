//! Build real-linear operators from matrices and combine them.

use reallin::{real_inner, CMatrix, MultCounter, RealLinearOp, C64};

fn main() -> reallin::Result<()> {
    let c = |re, im| C64::new(re, im);
    let f = CMatrix::from_rows(&[&[c(1., 1.), c(0., 2.)], &[c(-1., 0.), c(3., -1.)]])?;
    let g = CMatrix::from_rows(&[&[c(0.5, 0.), c(0., -1.)], &[c(2., 1.), c(0., 0.)]])?;

    let linear = RealLinearOp::linear(f);
    let antilinear = RealLinearOp::antilinear(g);
    let op = RealLinearOp::add(&linear, &antilinear)?;
    let squared = RealLinearOp::compose(&op, &op)?;

    let k = MultCounter::new();
    let x = [c(1., 0.), c(0., 1.)];
    let y = [c(2., -1.), c(0.5, 0.5)];
    println!("A(x)        = {:?}", op.apply(&x, &k)?);
    println!("A*(y)       = {:?}", op.adjoint(&y, &k)?);
    println!(
        "<A(x),y> = {:.12}, <x,A*(y)> = {:.12}",
        real_inner(&op.apply(&x, &k)?, &y)?,
        real_inner(&x, &op.adjoint(&y, &k)?)?
    );

    // Collapse the expression tree to F·x + conj(G·x).
    let form = squared.materialize();
    println!("(A∘A) F = {:?}", form.f());
    println!("(A∘A) G = {:?}", form.g());

    let (l, t) = op.split_linear_antilinear();
    let parts: Vec<C64> = l.apply(&x, &k)?.iter().zip(t.apply(&x, &k)?).map(|(a, b)| a + b).collect();
    println!("L(x) + T(x) = {parts:?}");
    println!("real multiplications charged: {}", k.total());
    Ok(())
}
