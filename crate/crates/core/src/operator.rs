//! Real-linear operators `C^N → C^M`.
//!
//! Every operator here is additive and homogeneous for real scalars, so it
//! can be written as `A(x) = F·x + conj(G·x)` for a unique pair of complex
//! matrices. Operators come in three forms:
//!
//! * [`MatrixFormOp`]: the explicit `(F, G)` pair,
//! * [`BlackboxOp`]: a pair of callables for `A(·)` and its adjoint `A*(·)`,
//! * expression trees built with [`RealLinearOp::compose`], [`RealLinearOp::add`],
//!   [`RealLinearOp::stack`] and friends.
//!
//! The adjoint is `A*(y) = Fᴴ·y + Gᴴ·conj(y)`. It satisfies
//! `real(A(x)ᴴ y) = real(xᴴ A*(y))`, and for expression trees it is evaluated
//! structurally: the adjoint of a composition is the reversed composition of
//! adjoints, the adjoint of a sum is the sum of adjoints. Nothing is
//! materialized along the way, so blackbox leaves only need their two callables.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counter::{MultCounter, COMPLEX_MULT, REAL_COMPLEX_MULT};
use crate::dense::CMatrix;
use crate::error::{check_len, Error, Result};
use crate::vector::{self, check_finite};
use crate::C64;

const I: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);

fn check_dims(context: &'static str, rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyDimension {
            context,
            rows,
            cols,
        });
    }
    Ok(())
}

/// Explicit `A(x) = F·x + conj(G·x)`.
///
/// `F` or `G` may be declared structurally zero (`None`), in which case it is
/// neither multiplied nor charged.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFormOp {
    rows: usize,
    cols: usize,
    f: Option<CMatrix>,
    g: Option<CMatrix>,
}

impl MatrixFormOp {
    pub fn new(f: CMatrix, g: CMatrix) -> Result<Self> {
        Self::from_parts(f.rows(), f.cols(), Some(f), Some(g))
    }

    /// Builds from optional parts; `None` marks a structurally zero matrix.
    pub fn from_parts(
        rows: usize,
        cols: usize,
        f: Option<CMatrix>,
        g: Option<CMatrix>,
    ) -> Result<Self> {
        check_dims("MatrixFormOp", rows, cols)?;
        for m in f.iter().chain(g.iter()) {
            check_len("MatrixFormOp rows", rows, m.rows())?;
            check_len("MatrixFormOp cols", cols, m.cols())?;
        }
        Ok(Self { rows, cols, f, g })
    }

    pub fn linear(f: CMatrix) -> Self {
        Self {
            rows: f.rows(),
            cols: f.cols(),
            f: Some(f),
            g: None,
        }
    }

    pub fn antilinear(g: CMatrix) -> Self {
        Self {
            rows: g.rows(),
            cols: g.cols(),
            f: None,
            g: Some(g),
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Result<Self> {
        Self::from_parts(rows, cols, None, None)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn f_part(&self) -> Option<&CMatrix> {
        self.f.as_ref()
    }

    pub fn g_part(&self) -> Option<&CMatrix> {
        self.g.as_ref()
    }

    /// `F` as a dense matrix, zeros if structurally zero.
    pub fn f(&self) -> CMatrix {
        self.f
            .clone()
            .unwrap_or_else(|| CMatrix::zeros(self.rows, self.cols))
    }

    /// `G` as a dense matrix, zeros if structurally zero.
    pub fn g(&self) -> CMatrix {
        self.g
            .clone()
            .unwrap_or_else(|| CMatrix::zeros(self.rows, self.cols))
    }

    /// Real multiplications charged per apply (and per adjoint).
    pub fn mult_charge(&self) -> u64 {
        let per = COMPLEX_MULT * (self.rows * self.cols) as u64;
        per * (self.f.is_some() as u64 + self.g.is_some() as u64)
    }

    fn eval(&self, x: &[C64], counter: &MultCounter) -> Vec<C64> {
        counter.charge(self.mult_charge());
        let mut out = match &self.f {
            Some(f) => f.matvec(x),
            None => vec![ZERO; self.rows],
        };
        if let Some(g) = &self.g {
            for (o, v) in out.iter_mut().zip(g.matvec(x)) {
                *o += v.conj();
            }
        }
        out
    }

    fn eval_adjoint(&self, y: &[C64], counter: &MultCounter) -> Vec<C64> {
        counter.charge(self.mult_charge());
        let mut out = match &self.f {
            Some(f) => f.matvec_adjoint(y),
            None => vec![ZERO; self.cols],
        };
        if let Some(g) = &self.g {
            let yc: Vec<C64> = y.iter().map(|z| z.conj()).collect();
            vector::add_assign(&mut out, &g.matvec_adjoint(&yc));
        }
        out
    }

    /// Matrix form of the adjoint map: `A*(y) = Fᴴ·y + conj(Gᵀ·y)`.
    pub fn adjoint_form(&self) -> MatrixFormOp {
        MatrixFormOp {
            rows: self.cols,
            cols: self.rows,
            f: self.f.as_ref().map(CMatrix::adjoint),
            g: self.g.as_ref().map(CMatrix::transpose),
        }
    }

    /// Closed form of `outer ∘ inner`:
    /// `F = F₂F₁ + conj(G₂)G₁`, `G = conj(F₂)G₁ + G₂F₁`.
    pub fn compose(outer: &MatrixFormOp, inner: &MatrixFormOp) -> Result<MatrixFormOp> {
        check_len("MatrixFormOp::compose", outer.cols, inner.rows)?;
        let f = sum_products(&[
            (outer.f.as_ref().cloned(), inner.f.as_ref()),
            (outer.g.as_ref().map(CMatrix::conj), inner.g.as_ref()),
        ])?;
        let g = sum_products(&[
            (outer.f.as_ref().map(CMatrix::conj), inner.g.as_ref()),
            (outer.g.as_ref().cloned(), inner.f.as_ref()),
        ])?;
        MatrixFormOp::from_parts(outer.rows, inner.cols, f, g)
    }

    /// Componentwise sum `(F₁ + F₂, G₁ + G₂)`.
    pub fn sum(a: &MatrixFormOp, b: &MatrixFormOp) -> Result<MatrixFormOp> {
        check_len("MatrixFormOp::sum rows", a.rows, b.rows)?;
        check_len("MatrixFormOp::sum cols", a.cols, b.cols)?;
        let add = |x: &Option<CMatrix>, y: &Option<CMatrix>| -> Result<Option<CMatrix>> {
            Ok(match (x, y) {
                (Some(x), Some(y)) => Some(x.add(y)?),
                (Some(m), None) | (None, Some(m)) => Some(m.clone()),
                (None, None) => None,
            })
        };
        MatrixFormOp::from_parts(a.rows, a.cols, add(&a.f, &b.f)?, add(&a.g, &b.g)?)
    }
}

fn sum_products(terms: &[(Option<CMatrix>, Option<&CMatrix>)]) -> Result<Option<CMatrix>> {
    let mut acc: Option<CMatrix> = None;
    for (l, r) in terms {
        if let (Some(l), Some(r)) = (l, r) {
            let p = l.matmul(r)?;
            acc = Some(match acc {
                Some(a) => a.add(&p)?,
                None => p,
            });
        }
    }
    Ok(acc)
}

/// Callable mapping one complex vector to another.
pub type MapFn = Arc<dyn Fn(&[C64]) -> Vec<C64> + Send + Sync>;

/// Operator known only through its forward and adjoint callables.
#[derive(Clone)]
pub struct BlackboxOp {
    rows: usize,
    cols: usize,
    apply_fn: MapFn,
    adjoint_fn: MapFn,
    apply_charge: u64,
    adjoint_charge: u64,
}

/// Relative tolerance for the real-linearity probe run by [`BlackboxOp::new`].
pub const LINEARITY_TOLERANCE: f64 = 1e-10;
/// Number of random probes run by [`BlackboxOp::new`].
pub const LINEARITY_PROBES: usize = 8;

impl BlackboxOp {
    /// Wraps the callables after probing both for real-linearity.
    ///
    /// Charges default to zero; set them with [`BlackboxOp::with_charges`].
    pub fn new(
        rows: usize,
        cols: usize,
        apply_fn: impl Fn(&[C64]) -> Vec<C64> + Send + Sync + 'static,
        adjoint_fn: impl Fn(&[C64]) -> Vec<C64> + Send + Sync + 'static,
    ) -> Result<Self> {
        let op = Self::new_unchecked(rows, cols, apply_fn, adjoint_fn)?;
        probe_real_linear("apply", cols, rows, &*op.apply_fn)?;
        probe_real_linear("adjoint", rows, cols, &*op.adjoint_fn)?;
        Ok(op)
    }

    /// Wraps the callables without probing them.
    pub fn new_unchecked(
        rows: usize,
        cols: usize,
        apply_fn: impl Fn(&[C64]) -> Vec<C64> + Send + Sync + 'static,
        adjoint_fn: impl Fn(&[C64]) -> Vec<C64> + Send + Sync + 'static,
    ) -> Result<Self> {
        check_dims("BlackboxOp", rows, cols)?;
        Ok(Self {
            rows,
            cols,
            apply_fn: Arc::new(apply_fn),
            adjoint_fn: Arc::new(adjoint_fn),
            apply_charge: 0,
            adjoint_charge: 0,
        })
    }

    pub fn with_charges(mut self, apply: u64, adjoint: u64) -> Self {
        self.apply_charge = apply;
        self.adjoint_charge = adjoint;
        self
    }

    /// Linear blackbox computing `M·x` and `Mᴴ·y`, charged `4·rows·cols` per call.
    pub fn from_matrix(m: CMatrix) -> Self {
        let m = Arc::new(m);
        let (rows, cols) = (m.rows(), m.cols());
        let charge = COMPLEX_MULT * (rows * cols) as u64;
        let fwd = Arc::clone(&m);
        Self {
            rows,
            cols,
            apply_fn: Arc::new(move |x: &[C64]| fwd.matvec(x)),
            adjoint_fn: Arc::new(move |y: &[C64]| m.matvec_adjoint(y)),
            apply_charge: charge,
            adjoint_charge: charge,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn apply_charge(&self) -> u64 {
        self.apply_charge
    }

    pub fn adjoint_charge(&self) -> u64 {
        self.adjoint_charge
    }

    pub(crate) fn call(&self, x: &[C64], counter: &MultCounter) -> Vec<C64> {
        counter.charge(self.apply_charge);
        let out = (self.apply_fn)(x);
        assert_eq!(out.len(), self.rows, "blackbox apply returned wrong length");
        out
    }

    pub(crate) fn call_adjoint(&self, y: &[C64], counter: &MultCounter) -> Vec<C64> {
        counter.charge(self.adjoint_charge);
        let out = (self.adjoint_fn)(y);
        assert_eq!(out.len(), self.cols, "blackbox adjoint returned wrong length");
        out
    }
}

impl fmt::Debug for BlackboxOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlackboxOp")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("apply_charge", &self.apply_charge)
            .field("adjoint_charge", &self.adjoint_charge)
            .finish_non_exhaustive()
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn probe_real_linear(
    which: &str,
    input_len: usize,
    output_len: usize,
    f: &(dyn Fn(&[C64]) -> Vec<C64> + Send + Sync),
) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1ea4);
    for probe in 0..LINEARITY_PROBES {
        let x = random_vector(&mut rng, input_len);
        let y = random_vector(&mut rng, input_len);
        let alpha: f64 = rng.random_range(-3.0..3.0);
        let xy: Vec<C64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let ax_scaled: Vec<C64> = x.iter().map(|a| a * alpha).collect();

        let fx = f(&x);
        let fy = f(&y);
        let fxy = f(&xy);
        let fax = f(&ax_scaled);
        for v in [&fx, &fy, &fxy, &fax] {
            if v.len() != output_len {
                return Err(Error::NotRealLinear(format!(
                    "{which} returned length {} instead of {output_len}",
                    v.len()
                )));
            }
        }
        let additivity: f64 = fxy
            .iter()
            .zip(fx.iter().zip(&fy))
            .map(|(s, (a, b))| (s - a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let scale_ref = vector::norm(&fx) + vector::norm(&fy);
        if !(additivity <= LINEARITY_TOLERANCE * scale_ref) {
            return Err(Error::NotRealLinear(format!(
                "{which} violates additivity on probe {probe} (residual {additivity:e})"
            )));
        }
        let homogeneity: f64 = fax
            .iter()
            .zip(&fx)
            .map(|(s, a)| (s - a * alpha).norm_sqr())
            .sum::<f64>()
            .sqrt();
        if !(homogeneity <= LINEARITY_TOLERANCE * vector::norm(&fax)) {
            return Err(Error::NotRealLinear(format!(
                "{which} violates real homogeneity on probe {probe} (residual {homogeneity:e})"
            )));
        }
    }
    Ok(())
}

/// Elementwise operators with closed-form adjoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Pointwise {
    /// `conj(x)`, self-adjoint.
    Conjugate,
    /// `real(x)`, self-adjoint.
    RealPart,
    /// `imag(x)`, adjoint `i·real(y)`.
    ImagPart,
    /// `c·x`, adjoint `conj(c)·y`.
    Scaled(C64),
}

impl Pointwise {
    fn eval(self, x: &[C64], counter: &MultCounter) -> Vec<C64> {
        match self {
            Pointwise::Conjugate => x.iter().map(|z| z.conj()).collect(),
            Pointwise::RealPart => x.iter().map(|z| C64::new(z.re, 0.0)).collect(),
            Pointwise::ImagPart => x.iter().map(|z| C64::new(z.im, 0.0)).collect(),
            Pointwise::Scaled(c) => {
                counter.charge(COMPLEX_MULT * x.len() as u64);
                x.iter().map(|z| c * z).collect()
            }
        }
    }

    fn eval_adjoint(self, y: &[C64], counter: &MultCounter) -> Vec<C64> {
        match self {
            Pointwise::Conjugate | Pointwise::RealPart => self.eval(y, counter),
            Pointwise::ImagPart => y.iter().map(|z| C64::new(0.0, z.re)).collect(),
            Pointwise::Scaled(c) => Pointwise::Scaled(c.conj()).eval(y, counter),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Linear,
    Antilinear,
}

#[derive(Clone)]
enum Node {
    Matrix(MatrixFormOp),
    Blackbox(BlackboxOp),
    Pointwise(Pointwise),
    Sum(RealLinearOp, RealLinearOp),
    Diff(RealLinearOp, RealLinearOp),
    Compose {
        outer: RealLinearOp,
        inner: RealLinearOp,
    },
    Scale(f64, RealLinearOp),
    Stack(Vec<RealLinearOp>),
    Adjoint(RealLinearOp),
    Part(Part, RealLinearOp),
}

/// A real-linear operator: a leaf or an expression tree over leaves.
///
/// Cloning is cheap; the tree is shared and immutable.
#[derive(Clone)]
pub struct RealLinearOp {
    rows: usize,
    cols: usize,
    node: Arc<Node>,
}

impl RealLinearOp {
    fn from_node(rows: usize, cols: usize, node: Node) -> Self {
        Self {
            rows,
            cols,
            node: Arc::new(node),
        }
    }

    pub fn matrix(op: MatrixFormOp) -> Self {
        Self::from_node(op.rows, op.cols, Node::Matrix(op))
    }

    pub fn blackbox(op: BlackboxOp) -> Self {
        Self::from_node(op.rows, op.cols, Node::Blackbox(op))
    }

    /// `F·x`
    pub fn linear(f: CMatrix) -> Self {
        Self::matrix(MatrixFormOp::linear(f))
    }

    /// `conj(G·x)`
    pub fn antilinear(g: CMatrix) -> Self {
        Self::matrix(MatrixFormOp::antilinear(g))
    }

    pub fn zero(rows: usize, cols: usize) -> Result<Self> {
        Ok(Self::matrix(MatrixFormOp::zero(rows, cols)?))
    }

    pub fn pointwise(n: usize, kind: Pointwise) -> Result<Self> {
        check_dims("pointwise operator", n, n)?;
        Ok(Self::from_node(n, n, Node::Pointwise(kind)))
    }

    pub fn conjugation(n: usize) -> Result<Self> {
        Self::pointwise(n, Pointwise::Conjugate)
    }

    pub fn real_part(n: usize) -> Result<Self> {
        Self::pointwise(n, Pointwise::RealPart)
    }

    pub fn imag_part(n: usize) -> Result<Self> {
        Self::pointwise(n, Pointwise::ImagPart)
    }

    pub fn scaled_identity(n: usize, c: C64) -> Result<Self> {
        Self::pointwise(n, Pointwise::Scaled(c))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::scaled_identity(n, C64::new(1.0, 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The underlying matrix form, if this operator is a matrix leaf.
    pub fn as_matrix_form(&self) -> Option<&MatrixFormOp> {
        match &*self.node {
            Node::Matrix(m) => Some(m),
            _ => None,
        }
    }

    /// Evaluates `A(x)`.
    pub fn apply(&self, x: &[C64], counter: &MultCounter) -> Result<Vec<C64>> {
        check_len("apply", self.cols, x.len())?;
        check_finite("apply", x)?;
        Ok(self.eval(x, counter))
    }

    /// Evaluates `A*(y) = Fᴴ·y + Gᴴ·conj(y)`.
    pub fn adjoint(&self, y: &[C64], counter: &MultCounter) -> Result<Vec<C64>> {
        check_len("adjoint", self.rows, y.len())?;
        check_finite("adjoint", y)?;
        Ok(self.eval_adjoint(y, counter))
    }

    fn eval(&self, x: &[C64], counter: &MultCounter) -> Vec<C64> {
        match &*self.node {
            Node::Matrix(m) => m.eval(x, counter),
            Node::Blackbox(b) => b.call(x, counter),
            Node::Pointwise(p) => p.eval(x, counter),
            Node::Sum(a, b) => {
                let mut out = a.eval(x, counter);
                vector::add_assign(&mut out, &b.eval(x, counter));
                out
            }
            Node::Diff(a, b) => vector::sub(&a.eval(x, counter), &b.eval(x, counter)),
            Node::Compose { outer, inner } => outer.eval(&inner.eval(x, counter), counter),
            Node::Scale(alpha, a) => {
                let mut out = a.eval(x, counter);
                counter.charge(REAL_COMPLEX_MULT * out.len() as u64);
                vector::scale(*alpha, &mut out);
                out
            }
            Node::Stack(children) => children
                .iter()
                .flat_map(|c| c.eval(x, counter))
                .collect(),
            Node::Adjoint(a) => a.eval_adjoint(x, counter),
            Node::Part(part, a) => split_eval(*part, x, counter, |v| a.eval(v, counter)),
        }
    }

    fn eval_adjoint(&self, y: &[C64], counter: &MultCounter) -> Vec<C64> {
        match &*self.node {
            Node::Matrix(m) => m.eval_adjoint(y, counter),
            Node::Blackbox(b) => b.call_adjoint(y, counter),
            Node::Pointwise(p) => p.eval_adjoint(y, counter),
            Node::Sum(a, b) => {
                let mut out = a.eval_adjoint(y, counter);
                vector::add_assign(&mut out, &b.eval_adjoint(y, counter));
                out
            }
            Node::Diff(a, b) => {
                vector::sub(&a.eval_adjoint(y, counter), &b.eval_adjoint(y, counter))
            }
            Node::Compose { outer, inner } => {
                inner.eval_adjoint(&outer.eval_adjoint(y, counter), counter)
            }
            Node::Scale(alpha, a) => {
                let mut out = a.eval_adjoint(y, counter);
                counter.charge(REAL_COMPLEX_MULT * out.len() as u64);
                vector::scale(*alpha, &mut out);
                out
            }
            Node::Stack(children) => {
                let mut out = vec![ZERO; self.cols];
                let mut offset = 0;
                for c in children {
                    let part = c.eval_adjoint(&y[offset..offset + c.rows], counter);
                    vector::add_assign(&mut out, &part);
                    offset += c.rows;
                }
                out
            }
            Node::Adjoint(a) => a.eval(y, counter),
            // The linear (antilinear) part of A* is the adjoint of the linear
            // (antilinear) part of A, so the same two-evaluation formula applies.
            Node::Part(part, a) => split_eval(*part, y, counter, |v| a.eval_adjoint(v, counter)),
        }
    }

    /// Lazy composition `outer ∘ inner`.
    pub fn compose(outer: &RealLinearOp, inner: &RealLinearOp) -> Result<RealLinearOp> {
        check_len("compose", outer.cols, inner.rows)?;
        Ok(Self::from_node(
            outer.rows,
            inner.cols,
            Node::Compose {
                outer: outer.clone(),
                inner: inner.clone(),
            },
        ))
    }

    /// Composition that folds two matrix leaves into a single matrix form.
    pub fn compose_eager(outer: &RealLinearOp, inner: &RealLinearOp) -> Result<RealLinearOp> {
        match (outer.as_matrix_form(), inner.as_matrix_form()) {
            (Some(o), Some(i)) => Ok(Self::matrix(MatrixFormOp::compose(o, i)?)),
            _ => Self::compose(outer, inner),
        }
    }

    /// Lazy sum `a + b`.
    pub fn add(a: &RealLinearOp, b: &RealLinearOp) -> Result<RealLinearOp> {
        Self::check_same_shape("add", a, b)?;
        Ok(Self::from_node(a.rows, a.cols, Node::Sum(a.clone(), b.clone())))
    }

    /// Sum that folds two matrix leaves into a single matrix form.
    pub fn add_eager(a: &RealLinearOp, b: &RealLinearOp) -> Result<RealLinearOp> {
        match (a.as_matrix_form(), b.as_matrix_form()) {
            (Some(x), Some(y)) => Ok(Self::matrix(MatrixFormOp::sum(x, y)?)),
            _ => Self::add(a, b),
        }
    }

    /// Lazy difference `a − b`.
    pub fn sub(a: &RealLinearOp, b: &RealLinearOp) -> Result<RealLinearOp> {
        Self::check_same_shape("sub", a, b)?;
        Ok(Self::from_node(a.rows, a.cols, Node::Diff(a.clone(), b.clone())))
    }

    /// `alpha · A` for real `alpha`.
    pub fn scale(alpha: f64, a: &RealLinearOp) -> Result<RealLinearOp> {
        if !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("scale factor {alpha}")));
        }
        Ok(Self::from_node(a.rows, a.cols, Node::Scale(alpha, a.clone())))
    }

    /// Vertical concatenation `[A₁(x); A₂(x); …]`.
    pub fn stack(children: &[RealLinearOp]) -> Result<RealLinearOp> {
        let first = children
            .first()
            .ok_or_else(|| Error::InvalidParameter("stack of zero operators".into()))?;
        for c in children {
            check_len("stack cols", first.cols, c.cols)?;
        }
        let rows = children.iter().map(|c| c.rows).sum();
        Ok(Self::from_node(rows, first.cols, Node::Stack(children.to_vec())))
    }

    /// `A*` as an operator in its own right; its adjoint is `A` again.
    pub fn adjoint_op(&self) -> RealLinearOp {
        if let Node::Adjoint(inner) = &*self.node {
            return inner.clone();
        }
        Self::from_node(self.cols, self.rows, Node::Adjoint(self.clone()))
    }

    /// Splits `A` into its linear and antilinear parts.
    ///
    /// For matrix leaves this is `(F·x, conj(G·x))` directly. Otherwise the
    /// parts are `½A(x) ∓ (i/2)A(ix)`, costing two underlying evaluations per call.
    pub fn split_linear_antilinear(&self) -> (RealLinearOp, RealLinearOp) {
        if let Some(m) = self.as_matrix_form() {
            let lin = MatrixFormOp {
                rows: m.rows,
                cols: m.cols,
                f: m.f.clone(),
                g: None,
            };
            let anti = MatrixFormOp {
                rows: m.rows,
                cols: m.cols,
                f: None,
                g: m.g.clone(),
            };
            return (Self::matrix(lin), Self::matrix(anti));
        }
        (
            Self::from_node(self.rows, self.cols, Node::Part(Part::Linear, self.clone())),
            Self::from_node(self.rows, self.cols, Node::Part(Part::Antilinear, self.clone())),
        )
    }

    /// Recovers the unique `(F, G)` pair by probing `e_j` and `i·e_j` for every
    /// column. Costs `2·cols` applies; matrices that come out exactly zero are
    /// marked structurally zero.
    pub fn materialize(&self) -> MatrixFormOp {
        if let Some(m) = self.as_matrix_form() {
            return m.clone();
        }
        let scratch = MultCounter::new();
        let mut f = CMatrix::zeros(self.rows, self.cols);
        let mut g = CMatrix::zeros(self.rows, self.cols);
        let mut e = vec![ZERO; self.cols];
        for j in 0..self.cols {
            e[j] = C64::new(1.0, 0.0);
            let a1 = self.eval(&e, &scratch);
            e[j] = I;
            let a2 = self.eval(&e, &scratch);
            e[j] = ZERO;
            for (i, (p, q)) in a1.iter().zip(&a2).enumerate() {
                f[(i, j)] = 0.5 * (p - I * q);
                g[(i, j)] = (0.5 * (p + I * q)).conj();
            }
        }
        let f = (!f.is_zero()).then_some(f);
        let g = (!g.is_zero()).then_some(g);
        MatrixFormOp {
            rows: self.rows,
            cols: self.cols,
            f,
            g,
        }
    }

    fn check_same_shape(context: &'static str, a: &RealLinearOp, b: &RealLinearOp) -> Result<()> {
        check_len(context, a.rows, b.rows)?;
        check_len(context, a.cols, b.cols)
    }
}

fn split_eval(
    part: Part,
    x: &[C64],
    counter: &MultCounter,
    mut f: impl FnMut(&[C64]) -> Vec<C64>,
) -> Vec<C64> {
    let ix: Vec<C64> = x.iter().map(|z| I * z).collect();
    let a1 = f(x);
    let a2 = f(&ix);
    counter.charge(REAL_COMPLEX_MULT * a1.len() as u64);
    let sign = match part {
        Part::Linear => -1.0,
        Part::Antilinear => 1.0,
    };
    a1.iter()
        .zip(&a2)
        .map(|(p, q)| 0.5 * (p + sign * I * q))
        .collect()
}

impl fmt::Debug for RealLinearOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = (self.rows, self.cols);
        match &*self.node {
            Node::Matrix(m) => write!(
                f,
                "Matrix{shape:?}[F:{} G:{}]",
                if m.f.is_some() { "dense" } else { "0" },
                if m.g.is_some() { "dense" } else { "0" }
            ),
            Node::Blackbox(_) => write!(f, "Blackbox{shape:?}"),
            Node::Pointwise(p) => write!(f, "{p:?}{shape:?}"),
            Node::Sum(a, b) => write!(f, "({a:?} + {b:?})"),
            Node::Diff(a, b) => write!(f, "({a:?} - {b:?})"),
            Node::Compose { outer, inner } => write!(f, "({outer:?} ∘ {inner:?})"),
            Node::Scale(s, a) => write!(f, "{s}·{a:?}"),
            Node::Stack(cs) => f.debug_list().entries(cs).finish(),
            Node::Adjoint(a) => write!(f, "({a:?})*"),
            Node::Part(p, a) => write!(f, "{p:?}Part({a:?})"),
        }
    }
}
