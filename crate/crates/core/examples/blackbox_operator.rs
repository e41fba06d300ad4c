//! Wrap user callables as an operator and solve with it.

use reallin::solvers::{lsqr_complex, SolverConfig};
use reallin::{BlackboxOp, Error, MultCounter, RealLinearOp, C64};

fn main() -> reallin::Result<()> {
    let n = 8;
    // Circular first difference plus conjugation: A(x)_j = x_j − conj(x_{j−1}).
    let apply = move |x: &[C64]| (0..n).map(|j| x[j] - x[(j + n - 1) % n].conj()).collect();
    let adjoint = move |y: &[C64]| (0..n).map(|j| y[j] - y[(j + 1) % n].conj()).collect();
    let op = BlackboxOp::new(n, n, apply, adjoint)?;
    let op = RealLinearOp::add(&RealLinearOp::blackbox(op), &RealLinearOp::scaled_identity(n, C64::new(0.5, 0.0))?)?;

    let b: Vec<C64> = (0..n).map(|j| C64::new(j as f64, 1.0)).collect();
    let k = MultCounter::new();
    let trace = lsqr_complex(&op, &b, &vec![C64::new(0., 0.); n], &SolverConfig::with_iters(30), &k)?;
    println!("stop: {:?} after {} iterations", trace.stop, trace.iterations());
    println!("cost: {:.3e}", trace.final_record().cost);

    match BlackboxOp::new(2, 2, |x| x.iter().map(|z| z.norm().into()).collect(), |y| y.to_vec()) {
        Err(Error::NotRealLinear(msg)) => println!("rejected |x|: {msg}"),
        other => println!("unexpected: {:?}", other.map(|_| ())),
    }
    Ok(())
}
