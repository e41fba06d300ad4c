//! The real-valued view of a real-linear problem.
//!
//! A complex vector `x ∈ C^N` is packed as `x̃ = [re x; im x] ∈ R^{2N}` and a
//! real-linear operator `A(x) = F·x + conj(G·x)` becomes the real matrix
//!
//! ```text
//! Ã = [ re F + re G   −im F − im G ]
//!     [ im F − im G    re F − re G ]
//! ```
//!
//! so that `Ã·lift(m) = lift(A(m))` and `Ãᵀ·lift(n) = lift(A*(n))`.

use crate::counter::MultCounter;
use crate::dense::{CMatrix, RMatrix};
use crate::error::{check_len, Error, Result};
use crate::operator::MatrixFormOp;
use crate::C64;

/// `[re x; im x]`
pub fn lift_vector(x: &[C64]) -> Vec<f64> {
    x.iter().map(|z| z.re).chain(x.iter().map(|z| z.im)).collect()
}

/// Inverse of [`lift_vector`].
pub fn unlift_vector(x: &[f64]) -> Result<Vec<C64>> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "lifted vector has odd length {}",
            x.len()
        )));
    }
    let (re, im) = x.split_at(x.len() / 2);
    Ok(re.iter().zip(im).map(|(&r, &i)| C64::new(r, i)).collect())
}

/// A real operator `R^{2N} → R^{2M}` acting on lifted vectors.
pub trait LiftedOperator {
    /// Lifted row count `2M`.
    fn rows(&self) -> usize;
    /// Lifted column count `2N`.
    fn cols(&self) -> usize;
    /// `Ã·x̃`
    fn apply(&self, x: &[f64], counter: &MultCounter) -> Result<Vec<f64>>;
    /// `Ãᵀ·ỹ`
    fn apply_transpose(&self, y: &[f64], counter: &MultCounter) -> Result<Vec<f64>>;
}

/// Dense lifted matrix `Ã ∈ R^{2M×2N}`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedMatrix {
    complex_rows: usize,
    complex_cols: usize,
    matrix: RMatrix,
}

impl LiftedMatrix {
    /// Wraps an already-lifted matrix; both dimensions must be even.
    pub fn new(matrix: RMatrix) -> Result<Self> {
        if !matrix.rows().is_multiple_of(2) || !matrix.cols().is_multiple_of(2) || matrix.rows() == 0 {
            return Err(Error::InvalidParameter(format!(
                "lifted matrix must have positive even dimensions, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self {
            complex_rows: matrix.rows() / 2,
            complex_cols: matrix.cols() / 2,
            matrix,
        })
    }

    /// Builds `Ã` from a matrix-form operator.
    pub fn from_matrix_form(op: &MatrixFormOp) -> Self {
        let (m, n) = (op.rows(), op.cols());
        let zero = RMatrix::zeros(m, n);
        let part = |p: Option<&CMatrix>| match p {
            Some(x) => (x.re(), x.im()),
            None => (zero.clone(), zero.clone()),
        };
        let (fr, fi) = part(op.f_part());
        let (gr, gi) = part(op.g_part());
        let combine = |terms: &[(f64, &RMatrix)]| RMatrix::combine(terms).expect("same shapes");
        let top_left = combine(&[(1.0, &fr), (1.0, &gr)]);
        let top_right = combine(&[(-1.0, &fi), (-1.0, &gi)]);
        let bottom_left = combine(&[(1.0, &fi), (-1.0, &gi)]);
        let bottom_right = combine(&[(1.0, &fr), (-1.0, &gr)]);
        let matrix = RMatrix::from_blocks(&[&[&top_left, &top_right], &[&bottom_left, &bottom_right]])
            .expect("consistent block shapes");
        Self {
            complex_rows: m,
            complex_cols: n,
            matrix,
        }
    }

    pub fn complex_rows(&self) -> usize {
        self.complex_rows
    }

    pub fn complex_cols(&self) -> usize {
        self.complex_cols
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.matrix
    }

    fn charge(&self) -> u64 {
        (self.matrix.rows() * self.matrix.cols()) as u64
    }
}

impl LiftedOperator for LiftedMatrix {
    fn rows(&self) -> usize {
        self.matrix.rows()
    }

    fn cols(&self) -> usize {
        self.matrix.cols()
    }

    fn apply(&self, x: &[f64], counter: &MultCounter) -> Result<Vec<f64>> {
        check_len("LiftedMatrix::apply", self.matrix.cols(), x.len())?;
        counter.charge(self.charge());
        Ok(self.matrix.matvec(x))
    }

    fn apply_transpose(&self, y: &[f64], counter: &MultCounter) -> Result<Vec<f64>> {
        check_len("LiftedMatrix::apply_transpose", self.matrix.rows(), y.len())?;
        counter.charge(self.charge());
        Ok(self.matrix.matvec_transpose(y))
    }
}

/// Direct block construction of `Ã` for `x ↦ [A·x; √λ·C·x − √λ·D·conj(E·x)]`:
///
/// ```text
/// Ã = [ re A   −im A ]
///     [ H₁₁    H₁₂   ]
///     [ im A    re A ]
///     [ H₂₁    H₂₂   ]
/// ```
///
/// with
///
/// ```text
/// H₁₁ = √λ(re C − re D·re E − im D·im E)
/// H₁₂ = √λ(−im C + re D·im E − im D·re E)
/// H₂₁ = √λ(im C − im D·re E + re D·im E)
/// H₂₂ = √λ(re C + im D·im E + re D·re E)
/// ```
///
/// This path never forms `F` or `G`, so it serves as an independent check of
/// [`LiftedMatrix::from_matrix_form`].
pub fn conjugate_symmetric_lifted(
    a: &CMatrix,
    c: &CMatrix,
    d: &CMatrix,
    e: &CMatrix,
    lambda: f64,
) -> Result<LiftedMatrix> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "regularization weight must be positive and finite, got {lambda}"
        )));
    }
    let n = a.cols();
    check_len("conjugate_symmetric_lifted: C cols", n, c.cols())?;
    check_len("conjugate_symmetric_lifted: E cols", n, e.cols())?;
    check_len("conjugate_symmetric_lifted: D cols", e.rows(), d.cols())?;
    check_len("conjugate_symmetric_lifted: D rows", c.rows(), d.rows())?;

    let s = lambda.sqrt();
    let (ar, ai) = (a.re(), a.im());
    let (cr, ci) = (c.re(), c.im());
    let (dr, di) = (d.re(), d.im());
    let (er, ei) = (e.re(), e.im());
    let drer = dr.matmul(&er)?;
    let diei = di.matmul(&ei)?;
    let drei = dr.matmul(&ei)?;
    let dier = di.matmul(&er)?;

    let h11 = RMatrix::combine(&[(s, &cr), (-s, &drer), (-s, &diei)])?;
    let h12 = RMatrix::combine(&[(-s, &ci), (s, &drei), (-s, &dier)])?;
    let h21 = RMatrix::combine(&[(s, &ci), (-s, &dier), (s, &drei)])?;
    let h22 = RMatrix::combine(&[(s, &cr), (s, &diei), (s, &drer)])?;
    let neg_ai = ai.map(|v| -v);

    let matrix = RMatrix::from_blocks(&[
        &[&ar, &neg_ai],
        &[&h11, &h12],
        &[&ai, &ar],
        &[&h21, &h22],
    ])?;
    LiftedMatrix::new(matrix)
}
