use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::counter::MultCounter;
use crate::error::Result;
use crate::lift::{lift_vector, LiftedOperator};
use crate::operator::RealLinearOp;
use crate::vector;
use crate::C64;

use super::dot;

const MAX_POWER_ITERS: usize = 100;
const POWER_REL_TOL: f64 = 1e-8;
const SAFETY_MARGIN: f64 = 1.05;
const STEP_FACTOR: f64 = 1.9;
const START_SEED: u64 = 0x00c0_ffee;

/// Result of [`estimate_step_size`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepSize {
    /// Landweber step `1.9 / sigma_sq_bound`.
    pub alpha: f64,
    /// Power-iteration estimate of `σ_max²`.
    pub sigma_sq_estimate: f64,
    /// The estimate inflated by 5%.
    pub sigma_sq_bound: f64,
    pub power_iterations: usize,
    /// Set when the operator annihilated the probe vector; `alpha` is then 1
    /// and any step leaves the iterate fixed.
    pub zero_operator: bool,
}

impl StepSize {
    fn from_estimate(sigma_sq: f64, power_iterations: usize) -> Self {
        if sigma_sq <= 0.0 {
            return Self {
                alpha: 1.0,
                sigma_sq_estimate: 0.0,
                sigma_sq_bound: 0.0,
                power_iterations,
                zero_operator: true,
            };
        }
        let bound = sigma_sq * SAFETY_MARGIN;
        Self {
            alpha: STEP_FACTOR / bound,
            sigma_sq_estimate: sigma_sq,
            sigma_sq_bound: bound,
            power_iterations,
            zero_operator: false,
        }
    }
}

fn start_vector(n: usize) -> Vec<C64> {
    let mut rng = ChaCha8Rng::seed_from_u64(START_SEED);
    (0..n)
        .map(|_| C64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
        .collect()
}

/// Power iteration on `x ↦ A*(A(x))` with the real inner product.
pub fn estimate_step_size(op: &RealLinearOp) -> Result<StepSize> {
    let scratch = MultCounter::new();
    let mut x = start_vector(op.cols());
    let nx = vector::norm(&x);
    vector::scale(1.0 / nx, &mut x);
    let mut estimate = 0.0;
    for it in 1..=MAX_POWER_ITERS {
        let z = op.adjoint(&op.apply(&x, &scratch)?, &scratch)?;
        let rayleigh = vector::real_dot(&x, &z);
        let nz = vector::norm(&z);
        if nz == 0.0 {
            return Ok(StepSize::from_estimate(0.0, it));
        }
        let prev = estimate;
        estimate = rayleigh;
        x = z;
        vector::scale(1.0 / nz, &mut x);
        if it > 1 && (estimate - prev).abs() < POWER_REL_TOL * estimate.abs() {
            return Ok(StepSize::from_estimate(estimate, it));
        }
    }
    Ok(StepSize::from_estimate(estimate, MAX_POWER_ITERS))
}

/// Power iteration on `ÃᵀÃ`, from the lifted image of the same start vector
/// used by [`estimate_step_size`].
pub fn estimate_step_size_lifted<O: LiftedOperator + ?Sized>(op: &O) -> Result<StepSize> {
    let scratch = MultCounter::new();
    let mut x = lift_vector(&start_vector(op.cols() / 2));
    let nx = dot(&x, &x).sqrt();
    x.iter_mut().for_each(|v| *v /= nx);
    let mut estimate = 0.0;
    for it in 1..=MAX_POWER_ITERS {
        let z = op.apply_transpose(&op.apply(&x, &scratch)?, &scratch)?;
        let rayleigh = dot(&x, &z);
        let nz = dot(&z, &z).sqrt();
        if nz == 0.0 {
            return Ok(StepSize::from_estimate(0.0, it));
        }
        let prev = estimate;
        estimate = rayleigh;
        x = z.iter().map(|v| v / nz).collect();
        if it > 1 && (estimate - prev).abs() < POWER_REL_TOL * estimate.abs() {
            return Ok(StepSize::from_estimate(estimate, it));
        }
    }
    Ok(StepSize::from_estimate(estimate, MAX_POWER_ITERS))
}
