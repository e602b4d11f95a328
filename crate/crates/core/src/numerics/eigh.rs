//! Hermitian eigen-decomposition (cyclic complex Jacobi) and the principal
//! logarithm of Hermitian positive-definite matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::CMat;
use super::scalar::{cabs, Cx, Real};
use crate::error::{Error, Result};

pub struct HermitianEigen<T> {
    /// Ascending.
    pub values: Vec<T>,
    /// Columns are the eigenvectors matching `values`.
    pub vectors: CMat<T>,
}

const MAX_SWEEPS: usize = 100;

pub fn eigh<T: Real>(a: &CMat<T>) -> Result<HermitianEigen<T>> {
    if !a.is_square() {
        return Err(Error::Shape(format!("eigh of {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut m = a.clone();
    // symmetrise the input
    for i in 0..n {
        m[(i, i)] = Complex::new(m[(i, i)].re.clone(), T::zero());
        for j in i + 1..n {
            let avg = (m[(i, j)].clone() + m[(j, i)].conj()).scale(T::from_f64(0.5));
            m[(j, i)] = avg.conj();
            m[(i, j)] = avg;
        }
    }
    let mut v = CMat::<T>::identity(n);
    let scale = m.frob_norm();
    let threshold = T::from_f64(T::epsilon()) * scale.clone();

    let mut converged = n < 2 || scale.is_zero();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut off = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + m[(i, j)].norm_sqr();
            }
        }
        if off.sqrt() <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        let mut off = T::zero();
        for i in 0..n {
            for j in i + 1..n {
                off = off + m[(i, j)].norm_sqr();
            }
        }
        if off.sqrt() > threshold * T::from_f64(1e3) {
            return Err(Error::NoConvergence { residual: off.sqrt().to_f64(), sweeps: MAX_SWEEPS });
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(x, x)].re.partial_cmp(&m[(y, y)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| m[(i, i)].re.clone()).collect();
    let vectors = CMat::from_fn(n, n, |r, c| v[(r, order[c])].clone());
    Ok(HermitianEigen { values, vectors })
}

/// One two-sided Jacobi rotation annihilating `m[p][q]`.
fn rotate<T: Real>(m: &mut CMat<T>, v: &mut CMat<T>, p: usize, q: usize) {
    let apq = m[(p, q)].clone();
    let mag = cabs(&apq);
    if mag.is_zero() {
        return;
    }
    let phase = Complex::new(apq.re.clone() / mag.clone(), apq.im.clone() / mag.clone());
    let app = m[(p, p)].re.clone();
    let aqq = m[(q, q)].re.clone();
    let two = T::from_f64(2.0);
    let tau = (aqq - app) / (two * mag);
    let t = {
        let denom = tau.abs() + (T::one() + tau.clone() * tau.clone()).sqrt();
        if tau >= T::zero() {
            T::one() / denom
        } else {
            -(T::one() / denom)
        }
    };
    let c = T::one() / (T::one() + t.clone() * t.clone()).sqrt();
    let s = t * c.clone();
    // J = D R with D = diag(1, conj(phase)) and R = [[c, s], [-s, c]]
    let cj = Complex::new(c.clone(), T::zero());
    let j_pp = cj.clone();
    let j_pq = Complex::new(s.clone(), T::zero());
    let j_qp = phase.conj() * Complex::new(-s.clone(), T::zero());
    let j_qq = phase.conj() * cj;
    let n = m.rows();
    // columns: M <- M J
    for r in 0..n {
        let mp = m[(r, p)].clone();
        let mq = m[(r, q)].clone();
        m[(r, p)] = mp.clone() * j_pp.clone() + mq.clone() * j_qp.clone();
        m[(r, q)] = mp * j_pq.clone() + mq * j_qq.clone();
        let vp = v[(r, p)].clone();
        let vq = v[(r, q)].clone();
        v[(r, p)] = vp.clone() * j_pp.clone() + vq.clone() * j_qp.clone();
        v[(r, q)] = vp * j_pq.clone() + vq * j_qq.clone();
    }
    // rows: M <- J^H M
    for c in 0..n {
        let mp = m[(p, c)].clone();
        let mq = m[(q, c)].clone();
        m[(p, c)] = j_pp.conj() * mp.clone() + j_qp.conj() * mq.clone();
        m[(q, c)] = j_pq.conj() * mp + j_qq.conj() * mq;
    }
    m[(p, q)] = Cx::zero();
    m[(q, p)] = Cx::zero();
    m[(p, p)] = Complex::new(m[(p, p)].re.clone(), T::zero());
    m[(q, q)] = Complex::new(m[(q, q)].re.clone(), T::zero());
}

/// `V diag(f(λ)) V^H`.
pub fn hermitian_function<T: Real>(e: &HermitianEigen<T>, f: impl Fn(&T) -> T) -> CMat<T> {
    let n = e.values.len();
    let fv: Vec<T> = e.values.iter().map(f).collect();
    CMat::from_fn(n, n, |i, j| {
        let mut acc = Cx::<T>::zero();
        for k in 0..n {
            let w = e.vectors[(i, k)].clone() * e.vectors[(j, k)].conj();
            acc = acc + w.scale(fv[k].clone());
        }
        acc
    })
}

/// Unique Hermitian `Q` with `exp(Q) = e` for Hermitian positive-definite `e`.
pub fn matrix_log_pd<T: Real>(e: &CMat<T>) -> Result<CMat<T>> {
    let scale = e.frob_norm();
    let asym = e.sub(&e.adjoint()).frob_norm();
    if asym.to_f64() > 1e-10 * scale.to_f64().max(f64::MIN_POSITIVE) {
        return Err(Error::Numerical(format!("matrix_log_pd: input is not Hermitian (asymmetry {:e})", asym.to_f64())));
    }
    let eig = eigh(e)?;
    let floor = T::from_f64(T::epsilon() * 16.0 * e.rows() as f64) * scale;
    let min = eig.values.first().cloned().unwrap_or_else(T::one);
    if min <= floor {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min.to_f64(), t: None });
    }
    Ok(hermitian_function(&eig, |x| x.ln()))
}
