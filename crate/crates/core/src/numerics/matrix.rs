//! Dense row-major complex matrices.

use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::scalar::{cabs, Cx, Real};
use crate::error::{Error, Result};

pub type CMat64 = CMat<f64>;

#[derive(Clone, Debug, PartialEq)]
pub struct CMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Cx<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Cx::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cx::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cx<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    pub fn from_diag(d: &[Cx<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Cx<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Cx<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        let n = rhs.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o = o.clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cx<T>]) -> Vec<Cx<T>> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Cx::zero(), |acc: Cx<T>, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn add(&self, rhs: &CMat<T>) -> CMat<T> {
        self.zip_with(rhs, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, rhs: &CMat<T>) -> CMat<T> {
        self.zip_with(rhs, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, rhs: &CMat<T>, f: impl Fn(&Cx<T>, &Cx<T>) -> Cx<T>) -> CMat<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `self += s * rhs`
    pub fn axpy(&mut self, s: &Cx<T>, rhs: &CMat<T>) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a = a.clone() + s.clone() * b.clone();
            }
        }
    }

    pub fn scale(&self, s: &Cx<T>) -> CMat<T> {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.clone() * s.clone()).collect(),
        }
    }

    pub fn scale_real(&self, s: &T) -> CMat<T> {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| Cx::new(a.re.clone() * s.clone(), a.im.clone() * s.clone())).collect(),
        }
    }

    pub fn adjoint(&self) -> CMat<T> {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Cx<T> {
        (0..self.rows.min(self.cols)).fold(Cx::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `tr(self^H rhs)`, the Frobenius inner product.
    pub fn inner(&self, rhs: &CMat<T>) -> Cx<T> {
        self.data
            .iter()
            .zip(&rhs.data)
            .fold(Cx::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
    }

    pub fn frob_norm(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, a| acc + a.norm_sqr())
            .sqrt()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> T {
        let mut best = T::zero();
        for j in 0..self.cols {
            let mut s = T::zero();
            for i in 0..self.rows {
                s = s + cabs(&self[(i, j)]);
            }
            best = T::max_of(best, s);
        }
        best
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, a| T::max_of(acc, cabs(a)))
    }

    pub fn commutator(&self, rhs: &CMat<T>) -> CMat<T> {
        self.matmul(rhs).sub(&rhs.matmul(self))
    }

    pub fn map<U: Real>(&self, f: impl Fn(&Cx<T>) -> Cx<U>) -> CMat<U> {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j && cabs(&self[(i, j)]).to_f64() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Solve `self · X = rhs` by LU with partial pivoting.
    pub fn solve(&self, rhs: &CMat<T>) -> Result<CMat<T>> {
        let n = self.rows;
        if !self.is_square() || rhs.rows != n {
            return Err(Error::Shape(format!(
                "solve: {}x{} system with {} right-hand rows",
                self.rows, self.cols, rhs.rows
            )));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        let m = b.cols;
        for col in 0..n {
            let mut piv = col;
            let mut best = a[(col, col)].norm_sqr();
            for r in col + 1..n {
                let v = a[(r, col)].norm_sqr();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best.is_zero() {
                return Err(Error::Numerical("singular matrix in solve".into()));
            }
            if piv != col {
                a.swap_rows(piv, col);
                b.swap_rows(piv, col);
            }
            let inv = Cx::<T>::one() / a[(col, col)].clone();
            for r in col + 1..n {
                let f = a[(r, col)].clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a[(col, c)].clone();
                    a[(r, c)] = a[(r, c)].clone() - f.clone() * v;
                }
                for c in 0..m {
                    let v = b[(col, c)].clone();
                    b[(r, c)] = b[(r, c)].clone() - f.clone() * v;
                }
            }
        }
        for col in (0..n).rev() {
            let inv = Cx::<T>::one() / a[(col, col)].clone();
            for c in 0..m {
                let mut s = b[(col, c)].clone();
                for k in col + 1..n {
                    s = s - a[(col, k)].clone() * b[(k, c)].clone();
                }
                b[(col, c)] = s * inv.clone();
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<CMat<T>> {
        self.solve(&CMat::identity(self.rows))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Lower Cholesky factor `C` with `self = C C^H` for Hermitian positive definite input.
    pub fn cholesky(&self) -> Result<CMat<T>> {
        let n = self.rows;
        let mut l = CMat::zeros(n, n);
        for j in 0..n {
            let mut d = self[(j, j)].re.clone();
            for k in 0..j {
                d = d - l[(j, k)].norm_sqr();
            }
            if d <= T::zero() {
                return Err(Error::NotPositiveDefinite { min_eigenvalue: d.to_f64(), t: None });
            }
            let djj = d.sqrt();
            l[(j, j)] = Complex::new(djj.clone(), T::zero());
            for i in j + 1..n {
                let mut s = self[(i, j)].clone();
                for k in 0..j {
                    s = s - l[(i, k)].clone() * l[(j, k)].conj();
                }
                l[(i, j)] = Complex::new(s.re / djj.clone(), s.im / djj.clone());
            }
        }
        Ok(l)
    }
}

impl<T> Index<(usize, usize)> for CMat<T> {
    type Output = Cx<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Cx<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cx<T> {
        &mut self.data[i * self.cols + j]
    }
}
