//! Least squares for complex operators that mix linear and antilinear parts.
//!
//! A real-linear operator has the form `A(x) = F·x + conj(G·x)`. The crate
//! provides
//!
//! * [`RealLinearOp`], a composable operator with apply and adjoint,
//! * lifting to the equivalent real operator on `[re x; im x]` ([`lift`]),
//! * Landweber, CG and LSQR in lifted and complex-native forms ([`solvers`]),
//! * a benchmark harness comparing four ways of evaluating the same operator
//!   ([`bench`]).
//!
//! Every evaluation takes a [`MultCounter`] that tallies real multiplications.

pub mod bench;
pub mod builtins;
pub mod counter;
pub mod dense;
pub mod error;
pub mod funcall;
pub mod lift;
pub mod operator;
pub mod solvers;
pub mod vector;

pub type C64 = num_complex::Complex64;

pub use counter::MultCounter;
pub use dense::{CMatrix, RMatrix};
pub use error::{Error, Result};
pub use lift::{lift_vector, unlift_vector, LiftedMatrix, LiftedOperator};
pub use operator::{BlackboxOp, MatrixFormOp, Pointwise, RealLinearOp};
pub use vector::{real_inner, rel_diff};
