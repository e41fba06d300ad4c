//! Conjugate gradients on the normal equations (CGNR).
//!
//! The complex form replaces `ÃᵀÃ` with `A*(A(·))` and the denominator
//! `pᵀz` with `real(pᴴz)`. The numerator `rᴴr` is a self inner product and
//! is real on its own.

use crate::counter::{MultCounter, REAL_COMPLEX_MULT};
use crate::error::{Error, Result};
use crate::lift::{lift_vector, LiftedOperator};
use crate::operator::RealLinearOp;
use crate::vector;
use crate::C64;

use super::{
    axpy_real, check_complex_problem, check_lifted_problem, complex_recorder_cost, dot,
    lifted_recorder_cost, unlift, Recorder, SolverConfig, SolverTrace, StopReason,
};

fn breakdown(iteration: usize, pz: f64) -> Error {
    Error::Breakdown {
        iteration,
        reason: format!("curvature real(pᴴz) = {pz:e} is not positive"),
    }
}

pub fn cg_complex(
    op: &RealLinearOp,
    b: &[C64],
    x0: &[C64],
    config: &SolverConfig,
    counter: &MultCounter,
) -> Result<SolverTrace> {
    config.validate()?;
    check_complex_problem(op, b, x0)?;
    let metric = complex_recorder_cost(op, b);
    let mut rec = Recorder::new(counter);
    let n = x0.len() as u64;
    let mut x = x0.to_vec();
    rec.record(x.clone(), &metric)?;

    let mut r = op.adjoint(&vector::sub(b, &op.apply(&x, counter)?), counter)?;
    let mut p = r.clone();
    counter.charge(REAL_COMPLEX_MULT * n);
    let mut rr = vector::real_dot(&r, &r);
    let rr0 = rr;

    for k in 0..config.max_iters {
        if rr == 0.0 {
            return Ok(rec.finish(StopReason::Converged));
        }
        if config.residual_tolerance > 0.0
            && rr.sqrt() <= config.residual_tolerance * rr0.sqrt()
        {
            return Ok(rec.finish(StopReason::ResidualTolerance));
        }
        let z = op.adjoint(&op.apply(&p, counter)?, counter)?;
        counter.charge(REAL_COMPLEX_MULT * n);
        let pz = vector::real_dot(&p, &z);
        if !(pz > 0.0) {
            return Err(breakdown(k, pz));
        }
        let alpha = rr / pz;
        counter.charge(2 * REAL_COMPLEX_MULT * n);
        vector::axpy(alpha, &p, &mut x);
        vector::axpy(-alpha, &z, &mut r);
        counter.charge(REAL_COMPLEX_MULT * n);
        let rr_next = vector::real_dot(&r, &r);
        let beta = rr_next / rr;
        counter.charge(REAL_COMPLEX_MULT * n);
        p.iter_mut().zip(&r).for_each(|(pi, ri)| *pi = ri + *pi * beta);
        rr = rr_next;
        rec.record(x.clone(), &metric)?;
    }
    Ok(rec.finish(StopReason::MaxIterations))
}

pub fn cg_real<O: LiftedOperator + ?Sized>(
    op: &O,
    b: &[f64],
    x0: &[f64],
    config: &SolverConfig,
    counter: &MultCounter,
) -> Result<SolverTrace> {
    config.validate()?;
    check_lifted_problem(op, b, x0)?;
    let metric = lifted_recorder_cost(op, b);
    let mut rec = Recorder::new(counter);
    let n = x0.len() as u64;
    let mut x = x0.to_vec();
    rec.record(unlift(&x), |z| metric(&lift_vector(z)))?;

    let ax = op.apply(&x, counter)?;
    let residual: Vec<f64> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
    let mut r = op.apply_transpose(&residual, counter)?;
    let mut p = r.clone();
    counter.charge(n);
    let mut rr = dot(&r, &r);
    let rr0 = rr;

    for k in 0..config.max_iters {
        if rr == 0.0 {
            return Ok(rec.finish(StopReason::Converged));
        }
        if config.residual_tolerance > 0.0
            && rr.sqrt() <= config.residual_tolerance * rr0.sqrt()
        {
            return Ok(rec.finish(StopReason::ResidualTolerance));
        }
        let z = op.apply_transpose(&op.apply(&p, counter)?, counter)?;
        counter.charge(n);
        let pz = dot(&p, &z);
        if !(pz > 0.0) {
            return Err(breakdown(k, pz));
        }
        let alpha = rr / pz;
        counter.charge(2 * n);
        axpy_real(alpha, &p, &mut x);
        axpy_real(-alpha, &z, &mut r);
        counter.charge(n);
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        counter.charge(n);
        p.iter_mut().zip(&r).for_each(|(pi, ri)| *pi = ri + *pi * beta);
        rr = rr_next;
        rec.record(unlift(&x), |z| metric(&lift_vector(z)))?;
    }
    Ok(rec.finish(StopReason::MaxIterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::RMatrix;
    use crate::lift::LiftedMatrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_converges_in_one_iteration() {
        let op = RealLinearOp::identity(3).unwrap();
        let b = [c(1., 2.), c(-1., 0.5), c(0., 3.)];
        let k = MultCounter::new();
        let t = cg_complex(&op, &b, &[c(0., 0.); 3], &SolverConfig::with_iters(10), &k).unwrap();
        assert_eq!(t.stop, StopReason::Converged);
        assert_eq!(t.iterations(), 1);
        assert_eq!(t.final_iterate(), &b);
    }

    #[test]
    fn lifted_conjugation_converges_in_one_iteration() {
        let op = LiftedMatrix::new(RMatrix::from_vec(2, 2, vec![1., 0., 0., -1.]).unwrap()).unwrap();
        let k = MultCounter::new();
        let t = cg_real(&op, &[3., 4.], &[0., 0.], &SolverConfig::with_iters(10), &k).unwrap();
        assert_eq!(t.iterations(), 1);
        assert_eq!(t.final_iterate(), &[c(3., -4.)]);
    }

    #[test]
    fn zero_operator_stops_cleanly() {
        let op = RealLinearOp::zero(2, 2).unwrap();
        let k = MultCounter::new();
        let t = cg_complex(&op, &[c(1., 0.), c(0., 1.)], &[c(0., 0.); 2], &SolverConfig::with_iters(5), &k).unwrap();
        assert_eq!(t.stop, StopReason::Converged);
        assert_eq!(t.iterations(), 0);
    }

    #[test]
    fn indefinite_operator_reports_breakdown() {
        // A blackbox whose adjoint is deliberately wrong (A* = −A) makes A*A negative.
        let bb = crate::operator::BlackboxOp::new(1, 1, |x| x.to_vec(), |y| y.iter().map(|z| -z).collect()).unwrap();
        let op = RealLinearOp::blackbox(bb);
        let k = MultCounter::new();
        let r = cg_complex(&op, &[c(1., 0.)], &[c(0., 0.)], &SolverConfig::with_iters(5), &k);
        assert!(matches!(r, Err(Error::Breakdown { iteration: 0, .. })));
    }
}
