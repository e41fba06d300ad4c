//! Lifted operator evaluated naively through complex function calls.
//!
//! When the constituent matrices are only available as blackbox products
//! `M·v` and `Mᴴ·w`, a product with the lifted matrix `Ã` can still be formed
//! by feeding real vectors through the complex calls and keeping the real or
//! imaginary part of each result (`re(M)·r = re(M·r)` for real `r`). Each
//! operator term is expanded into its 2×2 real block form and every nonzero
//! path through the blocks is evaluated from scratch, with no reuse of shared
//! intermediate products. A single-matrix term therefore costs 4 calls per
//! lifted product, and a term `D·conj(E·x)` costs 8 calls to each of `D` and `E`.

use crate::counter::MultCounter;
use crate::error::{check_len, Error, Result};
use crate::lift::LiftedOperator;
use crate::operator::BlackboxOp;
use crate::C64;

/// One factor of an operator chain.
#[derive(Clone, Debug)]
pub enum Factor {
    /// Complex-linear product `M·v`, adjoint `Mᴴ·w`.
    Linear(BlackboxOp),
    /// Elementwise conjugation.
    Conjugate,
}

/// `coeff · Φ_L ∘ … ∘ Φ_1`, with `factors[0]` applied first.
#[derive(Clone, Debug)]
pub struct FuncallTerm {
    pub coeff: f64,
    pub factors: Vec<Factor>,
}

impl FuncallTerm {
    pub fn new(coeff: f64, factors: Vec<Factor>) -> Self {
        Self { coeff, factors }
    }

    fn output_len(&self, input_len: usize) -> Result<usize> {
        let mut dim = input_len;
        for f in &self.factors {
            if let Factor::Linear(m) = f {
                check_len("FuncallTerm chain", m.cols(), dim)?;
                dim = m.rows();
            }
        }
        Ok(dim)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Block {
    Re,
    Im,
}

const BLOCKS: [Block; 2] = [Block::Re, Block::Im];

/// Lifted operator for `x ↦ [B₁(x); B₂(x); …]`, each block row a sum of
/// [`FuncallTerm`]s, evaluated with the naive function-call strategy.
#[derive(Clone, Debug)]
pub struct FuncallLiftedOp {
    complex_cols: usize,
    block_rows: Vec<(usize, Vec<FuncallTerm>)>,
}

impl FuncallLiftedOp {
    pub fn new(complex_cols: usize, block_rows: Vec<Vec<FuncallTerm>>) -> Result<Self> {
        if complex_cols == 0 || block_rows.is_empty() {
            return Err(Error::EmptyDimension {
                context: "FuncallLiftedOp",
                rows: block_rows.len(),
                cols: complex_cols,
            });
        }
        let mut rows = Vec::with_capacity(block_rows.len());
        for terms in block_rows {
            let first = terms
                .first()
                .ok_or_else(|| Error::InvalidParameter("empty block row".into()))?;
            let len = first.output_len(complex_cols)?;
            for t in &terms {
                check_len("FuncallLiftedOp block row", len, t.output_len(complex_cols)?)?;
            }
            rows.push((len, terms));
        }
        Ok(Self {
            complex_cols,
            block_rows: rows,
        })
    }

    /// Generic `A(x) = F·x + conj(G·x)` from blackbox products with `F` and `G`.
    /// Either part may be absent.
    pub fn from_parts(f: Option<BlackboxOp>, g: Option<BlackboxOp>) -> Result<Self> {
        let cols = f
            .as_ref()
            .or(g.as_ref())
            .map(BlackboxOp::cols)
            .ok_or_else(|| Error::InvalidParameter("no operator parts given".into()))?;
        let mut terms = Vec::new();
        if let Some(f) = f {
            terms.push(FuncallTerm::new(1.0, vec![Factor::Linear(f)]));
        }
        if let Some(g) = g {
            terms.push(FuncallTerm::new(1.0, vec![Factor::Linear(g), Factor::Conjugate]));
        }
        Self::new(cols, vec![terms])
    }

    /// Lifted `x ↦ [A·x; √λ·C·x − √λ·D·conj(E·x)]` from blackbox products.
    pub fn conjugate_symmetric(
        a: &BlackboxOp,
        c: &BlackboxOp,
        d: &BlackboxOp,
        e: &BlackboxOp,
        lambda: f64,
    ) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "regularization weight must be positive and finite, got {lambda}"
            )));
        }
        let s = lambda.sqrt();
        Self::new(
            a.cols(),
            vec![
                vec![FuncallTerm::new(1.0, vec![Factor::Linear(a.clone())])],
                vec![
                    FuncallTerm::new(s, vec![Factor::Linear(c.clone())]),
                    FuncallTerm::new(
                        -s,
                        vec![
                            Factor::Linear(e.clone()),
                            Factor::Conjugate,
                            Factor::Linear(d.clone()),
                        ],
                    ),
                ],
            ],
        )
    }

    fn complex_rows(&self) -> usize {
        self.block_rows.iter().map(|(r, _)| r).sum()
    }
}

fn to_complex(v: &[f64]) -> Vec<C64> {
    v.iter().map(|&r| C64::new(r, 0.0)).collect()
}

/// Every block path `t_0 = from, t_1, …, t_L = to` through the factors that
/// avoids the zero off-diagonal blocks of conjugation.
fn block_paths(factors: &[Factor], from: Block, to: Block) -> Vec<Vec<Block>> {
    let mut paths = vec![vec![from]];
    for (k, f) in factors.iter().enumerate() {
        let last = k + 1 == factors.len();
        let mut next = Vec::new();
        for p in paths {
            let cur = *p.last().unwrap();
            for nb in BLOCKS {
                if last && nb != to {
                    continue;
                }
                if matches!(f, Factor::Conjugate) && nb != cur {
                    continue;
                }
                let mut q = p.clone();
                q.push(nb);
                next.push(q);
            }
        }
        paths = next;
    }
    paths
}

/// Applies block `(out, inp)` of the lifted factor to a real vector.
fn forward_block(f: &Factor, out: Block, inp: Block, v: Vec<f64>, counter: &MultCounter) -> Vec<f64> {
    match f {
        Factor::Conjugate => match inp {
            Block::Re => v,
            Block::Im => v.into_iter().map(|x| -x).collect(),
        },
        Factor::Linear(m) => {
            let s = m.call(&to_complex(&v), counter);
            match (out, inp) {
                (Block::Re, Block::Re) | (Block::Im, Block::Im) => s.iter().map(|z| z.re).collect(),
                (Block::Im, Block::Re) => s.iter().map(|z| z.im).collect(),
                (Block::Re, Block::Im) => s.iter().map(|z| -z.im).collect(),
            }
        }
    }
}

/// Applies the transpose of block `(out, inp)` of the lifted factor.
fn transpose_block(f: &Factor, out: Block, inp: Block, w: Vec<f64>, counter: &MultCounter) -> Vec<f64> {
    match f {
        Factor::Conjugate => forward_block(f, out, inp, w, counter),
        Factor::Linear(m) => {
            let s = m.call_adjoint(&to_complex(&w), counter);
            match (out, inp) {
                (Block::Re, Block::Re) | (Block::Im, Block::Im) => s.iter().map(|z| z.re).collect(),
                (Block::Im, Block::Re) => s.iter().map(|z| -z.im).collect(),
                (Block::Re, Block::Im) => s.iter().map(|z| z.im).collect(),
            }
        }
    }
}

fn accumulate(dst: &mut [f64], coeff: f64, src: &[f64], counter: &MultCounter) {
    if coeff.abs() == 1.0 {
        dst.iter_mut().zip(src).for_each(|(d, s)| *d += coeff * s);
    } else {
        counter.charge(src.len() as u64);
        dst.iter_mut().zip(src).for_each(|(d, s)| *d += coeff * s);
    }
}

impl LiftedOperator for FuncallLiftedOp {
    fn rows(&self) -> usize {
        2 * self.complex_rows()
    }

    fn cols(&self) -> usize {
        2 * self.complex_cols
    }

    fn apply(&self, x: &[f64], counter: &MultCounter) -> Result<Vec<f64>> {
        check_len("FuncallLiftedOp::apply", 2 * self.complex_cols, x.len())?;
        let (xr, xi) = x.split_at(self.complex_cols);
        let total = self.complex_rows();
        let mut out = vec![0.0; 2 * total];
        let mut offset = 0;
        for (rows, terms) in &self.block_rows {
            for term in terms {
                for out_block in BLOCKS {
                    for in_block in BLOCKS {
                        let input = match in_block {
                            Block::Re => xr,
                            Block::Im => xi,
                        };
                        for path in block_paths(&term.factors, in_block, out_block) {
                            let mut v = input.to_vec();
                            for (k, f) in term.factors.iter().enumerate() {
                                v = forward_block(f, path[k + 1], path[k], v, counter);
                            }
                            let base = offset + if out_block == Block::Im { total } else { 0 };
                            accumulate(&mut out[base..base + rows], term.coeff, &v, counter);
                        }
                    }
                }
            }
            offset += rows;
        }
        Ok(out)
    }

    fn apply_transpose(&self, y: &[f64], counter: &MultCounter) -> Result<Vec<f64>> {
        let total = self.complex_rows();
        check_len("FuncallLiftedOp::apply_transpose", 2 * total, y.len())?;
        let n = self.complex_cols;
        let mut out = vec![0.0; 2 * n];
        let mut offset = 0;
        for (rows, terms) in &self.block_rows {
            for term in terms {
                for out_block in BLOCKS {
                    let base = offset + if out_block == Block::Im { total } else { 0 };
                    let input = &y[base..base + rows];
                    for in_block in BLOCKS {
                        for path in block_paths(&term.factors, in_block, out_block) {
                            let mut w = input.to_vec();
                            for (k, f) in term.factors.iter().enumerate().rev() {
                                w = transpose_block(f, path[k + 1], path[k], w, counter);
                            }
                            let dst = if in_block == Block::Im { n } else { 0 };
                            accumulate(&mut out[dst..dst + n], term.coeff, &w, counter);
                        }
                    }
                }
            }
            offset += rows;
        }
        Ok(out)
    }
}
