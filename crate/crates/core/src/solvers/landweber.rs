//! Fixed-step gradient descent: `x ← x + α·A*(b − A(x))`.
//!
//! Converges to a global minimizer whenever `0 < α < 2/σ_max²`.

use crate::counter::{MultCounter, REAL_COMPLEX_MULT};
use crate::error::{Error, Result};
use crate::lift::{lift_vector, LiftedOperator};
use crate::operator::RealLinearOp;
use crate::vector;
use crate::C64;

use super::{
    axpy_real, check_complex_problem, check_lifted_problem, complex_recorder_cost, dot,
    estimate_step_size, estimate_step_size_lifted, lifted_recorder_cost, unlift, Recorder,
    SolverConfig, SolverTrace, StopReason,
};

fn check_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "Landweber step size must be positive and finite, got {alpha}"
        )));
    }
    Ok(alpha)
}

pub fn landweber_complex(
    op: &RealLinearOp,
    b: &[C64],
    x0: &[C64],
    config: &SolverConfig,
    counter: &MultCounter,
) -> Result<SolverTrace> {
    config.validate()?;
    check_complex_problem(op, b, x0)?;
    let alpha = check_alpha(match config.step_size {
        Some(a) => a,
        None => estimate_step_size(op)?.alpha,
    })?;
    let metric = complex_recorder_cost(op, b);
    let mut rec = Recorder::new(counter);
    let mut x = x0.to_vec();
    rec.record(x.clone(), &metric)?;

    let mut g0 = None;
    for _ in 0..config.max_iters {
        let residual = vector::sub(b, &op.apply(&x, counter)?);
        let g = op.adjoint(&residual, counter)?;
        if config.residual_tolerance > 0.0 {
            counter.charge(REAL_COMPLEX_MULT * g.len() as u64);
            let gn = vector::norm(&g);
            let g0 = *g0.get_or_insert(gn);
            if gn <= config.residual_tolerance * g0 {
                return Ok(rec.finish(StopReason::ResidualTolerance));
            }
        }
        counter.charge(REAL_COMPLEX_MULT * x.len() as u64);
        vector::axpy(alpha, &g, &mut x);
        rec.record(x.clone(), &metric)?;
    }
    Ok(rec.finish(StopReason::MaxIterations))
}

pub fn landweber_real<O: LiftedOperator + ?Sized>(
    op: &O,
    b: &[f64],
    x0: &[f64],
    config: &SolverConfig,
    counter: &MultCounter,
) -> Result<SolverTrace> {
    config.validate()?;
    check_lifted_problem(op, b, x0)?;
    let alpha = check_alpha(match config.step_size {
        Some(a) => a,
        None => estimate_step_size_lifted(op)?.alpha,
    })?;
    let metric = lifted_recorder_cost(op, b);
    let mut rec = Recorder::new(counter);
    let mut x = x0.to_vec();
    rec.record(unlift(&x), |z| metric(&lift_vector(z)))?;

    let mut g0 = None;
    for _ in 0..config.max_iters {
        let ax = op.apply(&x, counter)?;
        let residual: Vec<f64> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
        let g = op.apply_transpose(&residual, counter)?;
        if config.residual_tolerance > 0.0 {
            counter.charge(g.len() as u64);
            let gn = dot(&g, &g).sqrt();
            let g0 = *g0.get_or_insert(gn);
            if gn <= config.residual_tolerance * g0 {
                return Ok(rec.finish(StopReason::ResidualTolerance));
            }
        }
        counter.charge(x.len() as u64);
        axpy_real(alpha, &g, &mut x);
        rec.record(unlift(&x), |z| metric(&lift_vector(z)))?;
    }
    Ok(rec.finish(StopReason::MaxIterations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::{CMatrix, RMatrix};
    use crate::lift::LiftedMatrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn lifted_conjugation_one_step() {
        let op = LiftedMatrix::new(RMatrix::from_vec(2, 2, vec![1., 0., 0., -1.]).unwrap()).unwrap();
        let k = MultCounter::new();
        let t = landweber_real(&op, &[1., 1.], &[0., 0.], &SolverConfig::with_iters(1).step_size(1.0), &k).unwrap();
        assert_eq!(t.final_iterate(), &[c(1., -1.)]);
        assert_eq!(t.final_record().cost, 0.0);
        assert_eq!(t.records.len(), 2);
    }

    #[test]
    fn complex_conjugation_one_step() {
        let op = RealLinearOp::conjugation(1).unwrap();
        let k = MultCounter::new();
        let t = landweber_complex(&op, &[c(1., 1.)], &[c(0., 0.)], &SolverConfig::with_iters(1).step_size(1.0), &k).unwrap();
        assert_eq!(t.final_iterate(), &[c(1., -1.)]);
    }

    #[test]
    fn identity_one_step() {
        let op = RealLinearOp::identity(2).unwrap();
        let b = [c(0.5, -2.), c(3., 1.)];
        let k = MultCounter::new();
        let t = landweber_complex(&op, &b, &[c(0., 0.); 2], &SolverConfig::with_iters(1).step_size(1.0), &k).unwrap();
        assert_eq!(t.final_iterate(), &b);
        let lifted = LiftedMatrix::from_matrix_form(&crate::operator::MatrixFormOp::linear(CMatrix::identity(2)));
        let t = landweber_real(&lifted, &lift_vector(&b), &[0.; 4], &SolverConfig::with_iters(1).step_size(1.0), &k).unwrap();
        assert_eq!(t.final_iterate(), &b);
    }

    #[test]
    fn rejects_bad_step() {
        let op = RealLinearOp::identity(1).unwrap();
        let k = MultCounter::new();
        for a in [0.0, -1.0, f64::NAN] {
            let r = landweber_complex(&op, &[c(1., 0.)], &[c(0., 0.)], &SolverConfig::with_iters(1).step_size(a), &k);
            assert!(matches!(r, Err(Error::InvalidParameter(_))));
        }
    }

    #[test]
    fn residual_tolerance_stops_early() {
        let op = RealLinearOp::linear(CMatrix::scaled_identity(2, c(0.5, 0.)));
        let k = MultCounter::new();
        let cfg = SolverConfig::with_iters(1000).step_size(1.0).residual_tolerance(1e-6);
        let t = landweber_complex(&op, &[c(1., 1.), c(2., 0.)], &[c(0., 0.); 2], &cfg, &k).unwrap();
        assert_eq!(t.stop, StopReason::ResidualTolerance);
        assert!(t.iterations() < 100);
    }
}
