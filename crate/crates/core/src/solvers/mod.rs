//! Iterative least-squares solvers for `min ‖A(x) − b‖²`.
//!
//! Each method comes in two families that produce the same iterates in exact
//! arithmetic:
//!
//! * the *lifted* family runs the textbook real algorithm on `Ã`, `b̃`,
//! * the *complex* family runs on `A(·)`, `A*(·)` directly, with every inner
//!   product replaced by `real(pᴴq)`.
//!
//! Traces store one record per iteration plus the initial state. Iterates are
//! stored in complex form for both families. Costs in the trace are computed
//! on a scratch counter and outside the timed region, so they do not affect
//! multiplication counts or elapsed times.

mod cg;
mod landweber;
mod lsqr;
mod step;

use std::time::{Duration, Instant};

pub use cg::{cg_complex, cg_real};
pub use landweber::{landweber_complex, landweber_real};
pub use lsqr::{lsqr_complex, lsqr_real};
pub use step::{estimate_step_size, estimate_step_size_lifted, StepSize};

use crate::counter::MultCounter;
use crate::error::{check_len, Error, Result};
use crate::lift::{unlift_vector, LiftedOperator};
use crate::operator::RealLinearOp;
use crate::vector;
use crate::C64;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub max_iters: usize,
    /// Landweber step; `None` estimates `1.9/σ̂²` by power iteration.
    pub step_size: Option<f64>,
    /// Stop once the normal-equation residual falls below this fraction of
    /// its initial value. Zero disables early stopping.
    pub residual_tolerance: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iters: 50,
            step_size: None,
            residual_tolerance: 0.0,
        }
    }
}

impl SolverConfig {
    pub fn with_iters(max_iters: usize) -> Self {
        Self {
            max_iters,
            ..Self::default()
        }
    }

    pub fn step_size(mut self, alpha: f64) -> Self {
        self.step_size = Some(alpha);
        self
    }

    pub fn residual_tolerance(mut self, tol: f64) -> Self {
        self.residual_tolerance = tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.residual_tolerance >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "residual tolerance must be nonnegative, got {}",
                self.residual_tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    MaxIterations,
    ResidualTolerance,
    /// The residual or a normalization scalar became exactly zero.
    Converged,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterRecord {
    pub k: usize,
    pub cost: f64,
    /// Real multiplications charged by the solve up to and including iteration `k`.
    pub cum_real_mults: u64,
    pub elapsed_seconds: f64,
    pub iterate: Vec<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverTrace {
    pub records: Vec<IterRecord>,
    pub stop: StopReason,
}

impl SolverTrace {
    /// Number of iterations executed (records minus the initial state).
    pub fn iterations(&self) -> usize {
        self.records.len() - 1
    }

    pub fn final_record(&self) -> &IterRecord {
        self.records.last().expect("trace always holds the initial state")
    }

    pub fn final_iterate(&self) -> &[C64] {
        &self.final_record().iterate
    }

    pub fn costs(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.cost).collect()
    }
}

/// `‖A(x) − b‖²`; charges the apply plus `2M` for the squared norm.
pub fn cost(op: &RealLinearOp, b: &[C64], x: &[C64], counter: &MultCounter) -> Result<f64> {
    check_len("cost: data length", op.rows(), b.len())?;
    let ax = op.apply(x, counter)?;
    counter.charge(2 * b.len() as u64);
    Ok(ax.iter().zip(b).map(|(p, q)| (p - q).norm_sqr()).sum())
}

/// `‖Ã·x̃ − b̃‖²`; charges the apply plus `2M` for the squared norm.
pub fn cost_lifted<O: LiftedOperator + ?Sized>(
    op: &O,
    b: &[f64],
    x: &[f64],
    counter: &MultCounter,
) -> Result<f64> {
    check_len("cost_lifted: data length", op.rows(), b.len())?;
    let ax = op.apply(x, counter)?;
    counter.charge(b.len() as u64);
    Ok(ax.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum())
}

/// Collects trace records, excluding metric evaluation from the timings.
struct Recorder<'a> {
    counter: &'a MultCounter,
    base_mults: u64,
    start: Instant,
    excluded: Duration,
    records: Vec<IterRecord>,
}

impl<'a> Recorder<'a> {
    fn new(counter: &'a MultCounter) -> Self {
        Self {
            counter,
            base_mults: counter.total(),
            start: Instant::now(),
            excluded: Duration::ZERO,
            records: Vec::new(),
        }
    }

    fn record(&mut self, iterate: Vec<C64>, cost: impl FnOnce(&[C64]) -> Result<f64>) -> Result<()> {
        let elapsed = self.start.elapsed() - self.excluded;
        let cum_real_mults = self.counter.total() - self.base_mults;
        let pause = Instant::now();
        let cost = cost(&iterate)?;
        self.records.push(IterRecord {
            k: self.records.len(),
            cost,
            cum_real_mults,
            elapsed_seconds: elapsed.as_secs_f64(),
            iterate,
        });
        self.excluded += pause.elapsed();
        Ok(())
    }

    fn finish(self, stop: StopReason) -> SolverTrace {
        SolverTrace {
            records: self.records,
            stop,
        }
    }
}

fn complex_recorder_cost<'o>(
    op: &'o RealLinearOp,
    b: &'o [C64],
) -> impl Fn(&[C64]) -> Result<f64> + 'o {
    move |x| cost(op, b, x, &MultCounter::new())
}

fn lifted_recorder_cost<'o, O: LiftedOperator + ?Sized>(
    op: &'o O,
    b: &'o [f64],
) -> impl Fn(&[f64]) -> Result<f64> + 'o {
    move |x| cost_lifted(op, b, x, &MultCounter::new())
}

fn check_complex_problem(op: &RealLinearOp, b: &[C64], x0: &[C64]) -> Result<()> {
    check_len("solver: data length", op.rows(), b.len())?;
    check_len("solver: initial guess length", op.cols(), x0.len())?;
    vector::check_finite("solver: data", b)?;
    vector::check_finite("solver: initial guess", x0)
}

fn check_lifted_problem<O: LiftedOperator + ?Sized>(op: &O, b: &[f64], x0: &[f64]) -> Result<()> {
    check_len("solver: lifted data length", op.rows(), b.len())?;
    check_len("solver: lifted initial guess length", op.cols(), x0.len())?;
    if let Some(index) = b.iter().chain(x0).position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            context: "solver: lifted inputs",
            index,
        });
    }
    Ok(())
}

fn unlift(x: &[f64]) -> Vec<C64> {
    unlift_vector(x).expect("lifted iterates have even length")
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn axpy_real(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}
