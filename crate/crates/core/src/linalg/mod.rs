//! Dense complex matrices, the symmetric tridiagonal eigensolver and the
//! matrix exponential.

mod expm;
mod tridiag;

pub use expm::expm_taylor;
pub use tridiag::{tridiagonal_eigen, TridiagEigen};

use rayon::prelude::*;

use crate::arith::{Cplx, Scalar};

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Cplx<T>>,
}

impl<T: Scalar> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize, like: &T) -> Self {
        Self {
            rows,
            cols,
            data: vec![Cplx::zero_like(like); rows * cols],
        }
    }

    pub fn identity(n: usize, like: &T) -> Self {
        let mut m = Self::zeros(n, n, like);
        for j in 0..n {
            m.set(j, j, Cplx::real(like.one_like()));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cplx<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Cplx<T> {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Cplx<T> {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cplx<T>) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Cplx<T>] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Cplx<T>> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self {
            rows: self.cols,
            cols: self.rows,
            data: Vec::with_capacity(self.data.len()),
        };
        for c in 0..self.cols {
            for r in 0..self.rows {
                out.data.push(self.get(r, c).conj());
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matmul");
        let like = self.data[0].re.clone();
        let cols = other.cols;
        let data: Vec<Cplx<T>> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|r| {
                let mut acc = vec![Cplx::zero_like(&like); cols];
                for (k, a) in self.row(r).iter().enumerate() {
                    if a.re.is_zero() && a.im.is_zero() {
                        continue;
                    }
                    for (c, slot) in acc.iter_mut().enumerate() {
                        slot.fma_assign(a, other.get(k, c));
                    }
                }
                acc
            })
            .collect();
        Self {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &Cplx<T>) -> Self {
        let data = self.data.iter().map(|a| a.clone() * s).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|a| a.abs().to_f64())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b).abs().to_f64())
            .fold(0.0, f64::max)
    }

    /// Top-left `w × w` corner.
    pub fn corner(&self, w: usize) -> Self {
        Self::from_fn(w, w, |r, c| self.get(r, c).clone())
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|a| a.abs().to_f64()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `‖U*U − I‖_max`.
    pub fn unitarity_residual(&self) -> f64 {
        let like = self.data[0].re.clone();
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.cols, &like))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&Cplx<T>) -> Cplx<U>) -> CMatrix<U> {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}
