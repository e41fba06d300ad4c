//! LSQR via Golub–Kahan bidiagonalization, without reorthogonalization.
//!
//! The complex family uses `A(·)`, `A*(·)` and `real(pᴴq)` in place of the
//! lifted matrix products and dot products. Both families share the scalar
//! recurrence below.

use crate::counter::{MultCounter, REAL_COMPLEX_MULT};
use crate::error::Result;
use crate::lift::{lift_vector, LiftedOperator};
use crate::operator::RealLinearOp;
use crate::vector;
use crate::C64;

use super::{
    axpy_real, check_complex_problem, check_lifted_problem, complex_recorder_cost, dot,
    lifted_recorder_cost, unlift, Recorder, SolverConfig, SolverTrace, StopReason,
};

/// Vector operations needed by the bidiagonalization, each charging the
/// counter for its multiplications.
trait Space {
    type V: Clone;
    fn apply(&self, x: &Self::V, k: &MultCounter) -> Result<Self::V>;
    fn adjoint(&self, y: &Self::V, k: &MultCounter) -> Result<Self::V>;
    fn norm(&self, x: &Self::V, k: &MultCounter) -> f64;
    /// `x ← a·x`.
    fn scale(&self, a: f64, x: &mut Self::V, k: &MultCounter);
    /// `y ← y + a·x`.
    fn axpy(&self, a: f64, x: &Self::V, y: &mut Self::V, k: &MultCounter);
    /// `y ← x + a·y`.
    fn xpay(&self, x: &Self::V, a: f64, y: &mut Self::V, k: &MultCounter);
    fn to_complex(&self, x: &Self::V) -> Vec<C64>;
}

struct ComplexSpace<'a>(&'a RealLinearOp);

impl Space for ComplexSpace<'_> {
    type V = Vec<C64>;
    fn apply(&self, x: &Self::V, k: &MultCounter) -> Result<Self::V> {
        self.0.apply(x, k)
    }
    fn adjoint(&self, y: &Self::V, k: &MultCounter) -> Result<Self::V> {
        self.0.adjoint(y, k)
    }
    fn norm(&self, x: &Self::V, k: &MultCounter) -> f64 {
        k.charge(REAL_COMPLEX_MULT * x.len() as u64);
        vector::norm(x)
    }
    fn scale(&self, a: f64, x: &mut Self::V, k: &MultCounter) {
        k.charge(REAL_COMPLEX_MULT * x.len() as u64);
        vector::scale(a, x);
    }
    fn axpy(&self, a: f64, x: &Self::V, y: &mut Self::V, k: &MultCounter) {
        k.charge(REAL_COMPLEX_MULT * x.len() as u64);
        vector::axpy(a, x, y);
    }
    fn xpay(&self, x: &Self::V, a: f64, y: &mut Self::V, k: &MultCounter) {
        k.charge(REAL_COMPLEX_MULT * x.len() as u64);
        y.iter_mut().zip(x).for_each(|(yi, xi)| *yi = xi + *yi * a);
    }
    fn to_complex(&self, x: &Self::V) -> Vec<C64> {
        x.clone()
    }
}

struct LiftedSpace<'a, O: ?Sized>(&'a O);

impl<O: LiftedOperator + ?Sized> Space for LiftedSpace<'_, O> {
    type V = Vec<f64>;
    fn apply(&self, x: &Self::V, k: &MultCounter) -> Result<Self::V> {
        self.0.apply(x, k)
    }
    fn adjoint(&self, y: &Self::V, k: &MultCounter) -> Result<Self::V> {
        self.0.apply_transpose(y, k)
    }
    fn norm(&self, x: &Self::V, k: &MultCounter) -> f64 {
        k.charge(x.len() as u64);
        dot(x, x).sqrt()
    }
    fn scale(&self, a: f64, x: &mut Self::V, k: &MultCounter) {
        k.charge(x.len() as u64);
        x.iter_mut().for_each(|v| *v *= a);
    }
    fn axpy(&self, a: f64, x: &Self::V, y: &mut Self::V, k: &MultCounter) {
        k.charge(x.len() as u64);
        axpy_real(a, x, y);
    }
    fn xpay(&self, x: &Self::V, a: f64, y: &mut Self::V, k: &MultCounter) {
        k.charge(x.len() as u64);
        y.iter_mut().zip(x).for_each(|(yi, xi)| *yi = xi + *yi * a);
    }
    fn to_complex(&self, x: &Self::V) -> Vec<C64> {
        unlift(x)
    }
}

fn lsqr<S: Space>(
    space: &S,
    residual0: S::V,
    x0: S::V,
    config: &SolverConfig,
    counter: &MultCounter,
    metric: impl Fn(&[C64]) -> Result<f64>,
) -> Result<SolverTrace> {
    let mut rec = Recorder::new(counter);
    let mut x = x0;
    rec.record(space.to_complex(&x), &metric)?;

    let mut u = residual0;
    let mut beta = space.norm(&u, counter);
    if beta == 0.0 {
        return Ok(rec.finish(StopReason::Converged));
    }
    space.scale(1.0 / beta, &mut u, counter);
    let mut v = space.adjoint(&u, counter)?;
    let mut alpha = space.norm(&v, counter);
    if alpha == 0.0 {
        return Ok(rec.finish(StopReason::Converged));
    }
    space.scale(1.0 / alpha, &mut v, counter);
    let mut w = v.clone();
    let mut phi_bar = beta;
    let mut rho_bar = alpha;
    let normal0 = alpha * beta;

    for _ in 0..config.max_iters {
        let av = space.apply(&v, counter)?;
        space.xpay(&av, -alpha, &mut u, counter);
        beta = space.norm(&u, counter);
        if beta > 0.0 {
            space.scale(1.0 / beta, &mut u, counter);
            let atu = space.adjoint(&u, counter)?;
            space.xpay(&atu, -beta, &mut v, counter);
            alpha = space.norm(&v, counter);
            if alpha > 0.0 {
                space.scale(1.0 / alpha, &mut v, counter);
            }
        } else {
            alpha = 0.0;
        }

        let rho = rho_bar.hypot(beta);
        let c = rho_bar / rho;
        let s = beta / rho;
        let theta = s * alpha;
        rho_bar = -c * alpha;
        let phi = c * phi_bar;
        phi_bar *= s;

        space.axpy(phi / rho, &w, &mut x, counter);
        space.xpay(&v, -theta / rho, &mut w, counter);
        rec.record(space.to_complex(&x), &metric)?;

        if beta == 0.0 || alpha == 0.0 {
            return Ok(rec.finish(StopReason::Converged));
        }
        // ‖A*(b − A(x))‖ estimate from the recurrence.
        if config.residual_tolerance > 0.0
            && phi_bar * alpha * c.abs() <= config.residual_tolerance * normal0
        {
            return Ok(rec.finish(StopReason::ResidualTolerance));
        }
    }
    Ok(rec.finish(StopReason::MaxIterations))
}

pub fn lsqr_complex(
    op: &RealLinearOp,
    b: &[C64],
    x0: &[C64],
    config: &SolverConfig,
    counter: &MultCounter,
) -> Result<SolverTrace> {
    config.validate()?;
    check_complex_problem(op, b, x0)?;
    let metric = complex_recorder_cost(op, b);
    let residual = vector::sub(b, &op.apply(x0, counter)?);
    lsqr(&ComplexSpace(op), residual, x0.to_vec(), config, counter, metric)
}

pub fn lsqr_real<O: LiftedOperator + ?Sized>(
    op: &O,
    b: &[f64],
    x0: &[f64],
    config: &SolverConfig,
    counter: &MultCounter,
) -> Result<SolverTrace> {
    config.validate()?;
    check_lifted_problem(op, b, x0)?;
    let metric = lifted_recorder_cost(op, b);
    let ax = op.apply(x0, counter)?;
    let residual: Vec<f64> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
    lsqr(&LiftedSpace(op), residual, x0.to_vec(), config, counter, |z| {
        metric(&lift_vector(z))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::CMatrix;
    use crate::lift::LiftedMatrix;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_solves_in_one_step() {
        let op = RealLinearOp::identity(2).unwrap();
        let b = [c(1., -1.), c(2., 0.5)];
        let k = MultCounter::new();
        let t = lsqr_complex(&op, &b, &[c(0., 0.); 2], &SolverConfig::with_iters(5), &k).unwrap();
        assert_eq!(t.stop, StopReason::Converged);
        assert_eq!(t.iterations(), 1);
        for (p, q) in t.final_iterate().iter().zip(&b) {
            assert!((p - q).norm() < 1e-15);
        }
    }

    #[test]
    fn exact_initial_guess_is_kept() {
        let op = RealLinearOp::conjugation(1).unwrap();
        let k = MultCounter::new();
        let t = lsqr_complex(&op, &[c(1., 2.)], &[c(1., -2.)], &SolverConfig::with_iters(5), &k).unwrap();
        assert_eq!(t.iterations(), 0);
        assert_eq!(t.stop, StopReason::Converged);
    }

    #[test]
    fn families_agree_on_small_system() {
        let m = CMatrix::from_fn(3, 2, |i, j| c(1.0 + i as f64, j as f64 - 0.5 * i as f64));
        let g = CMatrix::from_fn(3, 2, |i, j| c(0.3 * j as f64, 0.2 + i as f64 * 0.1));
        let form = crate::operator::MatrixFormOp::new(m, g).unwrap();
        let op = RealLinearOp::matrix(form.clone());
        let lifted = LiftedMatrix::from_matrix_form(&form);
        let b = [c(1., 0.), c(0., 1.), c(-1., 2.)];
        let k = MultCounter::new();
        let cfg = SolverConfig::with_iters(3);
        let tc = lsqr_complex(&op, &b, &[c(0., 0.); 2], &cfg, &k).unwrap();
        let tr = lsqr_real(&lifted, &lift_vector(&b), &[0.; 4], &cfg, &k).unwrap();
        assert_eq!(tc.records.len(), tr.records.len());
        for (p, q) in tc.records.iter().zip(&tr.records) {
            assert!(vector::rel_diff(&p.iterate, &q.iterate).unwrap() < 1e-12);
        }
    }
}
