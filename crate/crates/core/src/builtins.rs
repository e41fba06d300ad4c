//! Ready-made stacked systems for regularized reconstruction.
//!
//! Both systems are built from the algebra in [`crate::operator`], so their
//! adjoints come out of the structural rules:
//!
//! | system | `A*(y)` for `y = [y₁; y₂]` |
//! |---|---|
//! | `[A·x; √λ·imag(B·x)]` | `Aᴴy₁ + √λ·i·Bᴴ·real(y₂)` |
//! | `[A·x; √λ·(C·x − D·conj(E·x))]` | `Aᴴy₁ + √λ·(Cᴴy₂ − Eᴴ·conj(Dᴴy₂))` |

use crate::dense::CMatrix;
use crate::error::{check_len, Error, Result};
use crate::operator::{BlackboxOp, RealLinearOp};

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "regularization weight must be positive and finite, got {lambda}"
        )));
    }
    Ok(())
}

/// `x ↦ [A·x; √λ·imag(B·x)]`, penalizing the imaginary part of `B·x`.
pub fn phase_constrained_system(
    a: &RealLinearOp,
    b: &RealLinearOp,
    lambda: f64,
) -> Result<RealLinearOp> {
    check_lambda(lambda)?;
    check_len("phase_constrained_system: B cols", a.cols(), b.cols())?;
    let imag_b = RealLinearOp::compose(&RealLinearOp::imag_part(b.rows())?, b)?;
    let reg = RealLinearOp::scale(lambda.sqrt(), &imag_b)?;
    RealLinearOp::stack(&[a.clone(), reg])
}

/// `x ↦ [A·x; √λ·C·x − √λ·D·conj(E·x)]`.
///
/// Expected shapes: `A` is `M₁×N`, `C` is `M₂×N`, `D` is `M₂×P`, `E` is `P×N`.
pub fn conjugate_symmetric_system(
    a: &RealLinearOp,
    c: &RealLinearOp,
    d: &RealLinearOp,
    e: &RealLinearOp,
    lambda: f64,
) -> Result<RealLinearOp> {
    check_lambda(lambda)?;
    let n = a.cols();
    check_len("conjugate_symmetric_system: C cols", n, c.cols())?;
    check_len("conjugate_symmetric_system: E cols", n, e.cols())?;
    check_len("conjugate_symmetric_system: D cols", e.rows(), d.cols())?;
    check_len("conjugate_symmetric_system: D rows", c.rows(), d.rows())?;
    let conj_e = RealLinearOp::compose(&RealLinearOp::conjugation(e.rows())?, e)?;
    let d_conj_e = RealLinearOp::compose(d, &conj_e)?;
    let b = RealLinearOp::sub(c, &d_conj_e)?;
    RealLinearOp::stack(&[a.clone(), RealLinearOp::scale(lambda.sqrt(), &b)?])
}

/// [`conjugate_symmetric_system`] over explicit matrices, each leaf stored in
/// matrix form.
pub fn conjugate_symmetric_from_matrices(
    a: &CMatrix,
    c: &CMatrix,
    d: &CMatrix,
    e: &CMatrix,
    lambda: f64,
) -> Result<RealLinearOp> {
    conjugate_symmetric_system(
        &RealLinearOp::linear(a.clone()),
        &RealLinearOp::linear(c.clone()),
        &RealLinearOp::linear(d.clone()),
        &RealLinearOp::linear(e.clone()),
        lambda,
    )
}

/// [`conjugate_symmetric_system`] over blackbox leaves that wrap the matrices,
/// so every constituent product is a counted function call.
pub fn conjugate_symmetric_from_blackboxes(
    a: &BlackboxOp,
    c: &BlackboxOp,
    d: &BlackboxOp,
    e: &BlackboxOp,
    lambda: f64,
) -> Result<RealLinearOp> {
    conjugate_symmetric_system(
        &RealLinearOp::blackbox(a.clone()),
        &RealLinearOp::blackbox(c.clone()),
        &RealLinearOp::blackbox(d.clone()),
        &RealLinearOp::blackbox(e.clone()),
        lambda,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counter::MultCounter;
    use crate::C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn m(rows: usize, cols: usize, seed: f64) -> CMatrix {
        CMatrix::from_fn(rows, cols, |i, j| {
            let t = seed + 1.3 * i as f64 - 0.7 * j as f64;
            c(t.sin(), (1.7 * t).cos())
        })
    }

    #[test]
    fn conjugate_symmetric_adjoint_matches_closed_form() {
        let (a, cm, d, e) = (m(3, 2, 0.1), m(4, 2, 0.2), m(4, 3, 0.3), m(3, 2, 0.4));
        let lambda: f64 = 0.25;
        let op = conjugate_symmetric_from_matrices(&a, &cm, &d, &e, lambda).unwrap();
        assert_eq!((op.rows(), op.cols()), (7, 2));
        let y: Vec<C64> = (0..7).map(|k| c(k as f64 - 2.0, 0.5 * k as f64)).collect();
        let k = MultCounter::new();
        let got = op.adjoint(&y, &k).unwrap();

        let (y1, y2) = y.split_at(3);
        let dh: Vec<C64> = d.matvec_adjoint(y2).iter().map(|z| z.conj()).collect();
        let b_star: Vec<C64> = cm
            .matvec_adjoint(y2)
            .iter()
            .zip(e.matvec_adjoint(&dh))
            .map(|(p, q)| p - q)
            .collect();
        let want: Vec<C64> = a
            .matvec_adjoint(y1)
            .iter()
            .zip(&b_star)
            .map(|(p, q)| p + lambda.sqrt() * q)
            .collect();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-13);
        }
    }

    #[test]
    fn phase_constrained_adjoint_matches_closed_form() {
        let (a, b) = (m(3, 2, 0.5), m(2, 2, 0.9));
        let lambda: f64 = 2.0;
        let op = phase_constrained_system(
            &RealLinearOp::linear(a.clone()),
            &RealLinearOp::linear(b.clone()),
            lambda,
        )
        .unwrap();
        let y: Vec<C64> = (0..5).map(|k| c(1.0 - k as f64, 0.3 * k as f64)).collect();
        let k = MultCounter::new();
        let got = op.adjoint(&y, &k).unwrap();
        let re_y2: Vec<C64> = y[3..].iter().map(|z| c(z.re, 0.0)).collect();
        let want: Vec<C64> = a
            .matvec_adjoint(&y[..3])
            .iter()
            .zip(b.matvec_adjoint(&re_y2))
            .map(|(p, q)| p + lambda.sqrt() * c(0.0, 1.0) * q)
            .collect();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let (a, cm, d, e) = (m(3, 2, 0.1), m(4, 2, 0.2), m(4, 3, 0.3), m(3, 2, 0.4));
        assert!(conjugate_symmetric_from_matrices(&a, &cm, &d, &e, 0.0).is_err());
        assert!(conjugate_symmetric_from_matrices(&a, &cm, &d, &e, -1.0).is_err());
        assert!(conjugate_symmetric_from_matrices(&a, &cm, &m(4, 2, 0.3), &e, 1.0).is_err());
        assert!(conjugate_symmetric_from_matrices(&a, &m(4, 3, 0.), &d, &e, 1.0).is_err());
        let la = RealLinearOp::linear(a);
        assert!(phase_constrained_system(&la, &RealLinearOp::linear(m(2, 3, 0.)), 1.0).is_err());
        assert!(phase_constrained_system(&la, &la, f64::NAN).is_err());
    }
}
