//! Complex vector helpers.
//!
//! Vectors are plain `[C64]` slices; these functions add the validation and
//! the real inner product used throughout the solvers.

use crate::error::{check_len, Error, Result};
use crate::C64;

/// Rejects empty vectors and vectors with NaN or infinite components.
pub fn check_finite(context: &'static str, x: &[C64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptyDimension {
            context,
            rows: 0,
            cols: 1,
        });
    }
    match x.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        Some(index) => Err(Error::NonFinite { context, index }),
        None => Ok(()),
    }
}

/// `real(pᴴq)`, which equals the Euclidean inner product of the lifted
/// real vectors `[re p; im p]` and `[re q; im q]`.
pub fn real_inner(p: &[C64], q: &[C64]) -> Result<f64> {
    check_len("real_inner", p.len(), q.len())?;
    Ok(real_dot(p, q))
}

#[inline]
pub(crate) fn real_dot(p: &[C64], q: &[C64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| a.re * b.re + a.im * b.im).sum()
}

pub fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    norm_sqr(x).sqrt()
}

/// Relative difference `‖p − q‖ / ‖½p + ½q‖`; zero when `p == q`.
pub fn rel_diff(p: &[C64], q: &[C64]) -> Result<f64> {
    check_len("rel_diff", p.len(), q.len())?;
    let num: f64 = p.iter().zip(q).map(|(a, b)| (a - b).norm_sqr()).sum();
    if num == 0.0 {
        return Ok(0.0);
    }
    let den: f64 = p
        .iter()
        .zip(q)
        .map(|(a, b)| (0.5 * a + 0.5 * b).norm_sqr())
        .sum();
    Ok(num.sqrt() / den.sqrt())
}

pub(crate) fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add_assign(a: &mut [C64], b: &[C64]) {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
}

/// `y += alpha * x` for real `alpha`.
pub(crate) fn axpy(alpha: f64, x: &[C64], y: &mut [C64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += xi * alpha);
}

pub(crate) fn scale(alpha: f64, x: &mut [C64]) {
    x.iter_mut().for_each(|z| *z *= alpha);
}
