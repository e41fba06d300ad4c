//! Row-major dense matrices, real and complex.
//!
//! Kernels are plain single-threaded loops, so results are bit-reproducible
//! for a given input.

use std::ops::{Index, IndexMut};

use crate::error::{check_len, Error, Result};
use crate::C64;

#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyDimension {
                context: "CMatrix",
                rows,
                cols,
            });
        }
        check_len("CMatrix data", rows * cols, data.len())?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_len("CMatrix row", cols, r.len())?;
            data.extend_from_slice(r);
        }
        Self::from_vec(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scaled_identity(n, C64::new(1.0, 0.0))
    }

    pub fn scaled_identity(n: usize, c: C64) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c } else { C64::new(0.0, 0.0) })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `self · x`
    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        debug_assert_eq!(x.len(), self.cols);
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `selfᴴ · y`
    pub fn matvec_adjoint(&self, y: &[C64]) -> Vec<C64> {
        debug_assert_eq!(y.len(), self.rows);
        let mut out = vec![C64::new(0.0, 0.0); self.cols];
        for (row, yi) in self.data.chunks_exact(self.cols).zip(y) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a.conj() * yi;
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        check_len("CMatrix::matmul", self.cols, rhs.rows)?;
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                for (o, b) in orow.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn conj(&self) -> CMatrix {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn add(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &CMatrix) -> Result<CMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &CMatrix, f: impl Fn(C64, C64) -> C64) -> Result<CMatrix> {
        check_len("CMatrix rows", self.rows, rhs.rows)?;
        check_len("CMatrix cols", self.cols, rhs.cols)?;
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: C64) -> CMatrix {
        self.map(|z| z * c)
    }

    pub fn re(&self) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.re).collect(),
        }
    }

    pub fn im(&self) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.im).collect(),
        }
    }

    /// Stacks matrices vertically; all must share a column count.
    pub fn vstack(blocks: &[&CMatrix]) -> Result<CMatrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            check_len("CMatrix::vstack cols", cols, b.cols)?;
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        CMatrix::from_vec(rows, cols, data)
    }

    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_len("RMatrix data", rows * cols, data.len())?;
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.cols);
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `selfᵀ · y`
    pub fn matvec_transpose(&self, y: &[f64]) -> Vec<f64> {
        debug_assert_eq!(y.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (row, yi) in self.data.chunks_exact(self.cols).zip(y) {
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * yi;
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &RMatrix) -> Result<RMatrix> {
        check_len("RMatrix::matmul", self.cols, rhs.rows)?;
        let mut out = RMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for (k, a) in self.row(i).iter().enumerate() {
                for (o, b) in orow.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> RMatrix {
        RMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> RMatrix {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Elementwise `Σ cᵢ·Mᵢ` over same-shaped matrices.
    pub fn combine(terms: &[(f64, &RMatrix)]) -> Result<RMatrix> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty combination".into()))?;
        let mut out = RMatrix::zeros(first.rows, first.cols);
        for (c, m) in terms {
            check_len("RMatrix::combine rows", first.rows, m.rows)?;
            check_len("RMatrix::combine cols", first.cols, m.cols)?;
            for (o, v) in out.data.iter_mut().zip(&m.data) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    /// Assembles a block matrix from a row-major grid of blocks.
    pub fn from_blocks(grid: &[&[&RMatrix]]) -> Result<RMatrix> {
        let block_cols: Vec<usize> = grid
            .first()
            .map(|r| r.iter().map(|b| b.cols).collect())
            .unwrap_or_default();
        let cols: usize = block_cols.iter().sum();
        let rows: usize = grid.iter().map(|r| r.first().map_or(0, |b| b.rows)).sum();
        let mut out = RMatrix::zeros(rows, cols);
        let mut r0 = 0;
        for brow in grid {
            check_len("RMatrix::from_blocks grid width", block_cols.len(), brow.len())?;
            let h = brow[0].rows;
            let mut c0 = 0;
            for (b, &w) in brow.iter().zip(&block_cols) {
                check_len("RMatrix::from_blocks block rows", h, b.rows)?;
                check_len("RMatrix::from_blocks block cols", w, b.cols)?;
                for i in 0..h {
                    out.data[(r0 + i) * cols + c0..(r0 + i) * cols + c0 + w]
                        .copy_from_slice(b.row(i));
                }
                c0 += w;
            }
            r0 += h;
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, rhs: &RMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn matvec_and_adjoint() {
        let m = CMatrix::from_rows(&[&[c(1., 1.), c(0., 2.)], &[c(3., 0.), c(-1., 0.)]]).unwrap();
        let x = [c(1., 0.), c(0., 1.)];
        assert_eq!(m.matvec(&x), vec![c(-1., 1.), c(3., -1.)]);
        // Mᴴ y with y = e0 is the conjugated first row
        assert_eq!(m.matvec_adjoint(&[c(1., 0.), c(0., 0.)]), vec![c(1., -1.), c(0., -2.)]);
        assert_eq!(m.adjoint().matvec(&x), m.matvec_adjoint(&x));
    }

    #[test]
    fn matmul_matches_sequential_matvec() {
        let a = CMatrix::from_fn(3, 2, |i, j| c(i as f64 + 1., j as f64 - 0.5));
        let b = CMatrix::from_fn(2, 4, |i, j| c(j as f64, 1.0 - i as f64));
        let x = [c(0.3, 1.), c(-2., 0.), c(1., 1.), c(0., -1.)];
        let ab = a.matmul(&b).unwrap();
        for (p, q) in ab.matvec(&x).iter().zip(a.matvec(&b.matvec(&x))) {
            assert!((p - q).norm() < 1e-14);
        }
    }

    #[test]
    fn blocks_assemble() {
        let a = RMatrix::from_fn(1, 2, |_, j| j as f64);
        let b = RMatrix::from_fn(1, 1, |_, _| 9.0);
        let m = RMatrix::from_blocks(&[&[&a, &b], &[&a, &b]]).unwrap();
        assert_eq!(m.as_slice(), &[0., 1., 9., 0., 1., 9.]);
        assert_eq!(m.matvec_transpose(&[1., 1.]), vec![0., 2., 18.]);
    }

    #[test]
    fn rejects_empty() {
        assert!(CMatrix::from_vec(0, 3, vec![]).is_err());
    }
}
