//! Matrix exponential by scaling and squaring with a diagonal Padé kernel.


use super::matrix::CMat;
use super::scalar::{Cx, Real};
use crate::error::{Error, Result};

/// Norm above which [`matrix_exp`] refuses to exponentiate.
pub const DEFAULT_MAX_NORM: f64 = 1e4;

/// Scaled operand norm the Padé kernel is evaluated at.
const THETA: f64 = 0.5;

/// `exp(a)` with 2-norm error below `tol` (floored at working precision).
pub fn matrix_exp<T: Real>(a: &CMat<T>, tol: f64) -> Result<CMat<T>> {
    matrix_exp_bounded(a, tol, DEFAULT_MAX_NORM)
}

pub fn matrix_exp_bounded<T: Real>(a: &CMat<T>, tol: f64, max_norm: f64) -> Result<CMat<T>> {
    if !a.is_square() {
        return Err(Error::Shape(format!("exp of {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let norm = a.norm1().to_f64();
    if !norm.is_finite() {
        return Err(Error::Numerical("non-finite entries in matrix_exp".into()));
    }
    if norm > max_norm {
        return Err(Error::Overflow { norm, bound: max_norm });
    }
    if norm == 0.0 {
        return Ok(CMat::identity(n));
    }
    let squarings = if norm > THETA { (norm / THETA).log2().ceil() as u32 } else { 0 };
    let target = tol.min(1.0).max(T::epsilon()) / (1u64 << squarings.min(60)) as f64;
    let degree = pade_degree(target);
    let scaled = a.scale_real(&T::from_f64(0.5f64.powi(squarings as i32)));

    // Numerator and denominator share even powers and differ in the sign of odd ones.
    let coeffs = pade_coefficients::<T>(degree);
    let mut even = CMat::<T>::identity(n).scale_real(&coeffs[0]);
    let mut odd = CMat::<T>::zeros(n, n);
    let mut power = CMat::<T>::identity(n);
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        power = power.matmul(&scaled);
        let c = Cx::new(c.clone(), T::zero());
        if k % 2 == 0 {
            even.axpy(&c, &power);
        } else {
            odd.axpy(&c, &power);
        }
    }
    let num = even.add(&odd);
    let den = even.sub(&odd);
    let mut r = den.solve(&num)?;
    for _ in 0..squarings {
        r = r.matmul(&r);
    }
    Ok(r)
}

/// Smallest diagonal Padé degree whose truncation bound at `THETA` is below `target`.
fn pade_degree(target: f64) -> usize {
    // bound_m = (m!)^2 / ((2m)! (2m+1)!) * theta^(2m+1)
    let mut m = 1usize;
    loop {
        let mut log_bound = (2 * m + 1) as f64 * THETA.ln();
        for i in 1..=m {
            log_bound += 2.0 * (i as f64).ln();
        }
        for i in 1..=2 * m {
            log_bound -= (i as f64).ln();
        }
        for i in 1..=2 * m + 1 {
            log_bound -= (i as f64).ln();
        }
        if log_bound < target.ln() || m >= 200 {
            return m;
        }
        m += 1;
    }
}

/// c_k = (2m-k)! m! / ((2m)! k! (m-k)!), built by the ratio recurrence.
fn pade_coefficients<T: Real>(m: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(m + 1);
    let mut c = T::one();
    out.push(c.clone());
    for k in 1..=m {
        let num = T::from_f64((m - k + 1) as f64);
        let den = T::from_f64(((2 * m - k + 1) * k) as f64);
        c = c * num / den;
        out.push(c.clone());
    }
    out
}

/// Truncated Taylor series with `terms` terms and no scaling; reference kernel
/// for cross-checks on small-norm inputs.
pub fn matrix_exp_series<T: Real>(a: &CMat<T>, terms: usize) -> CMat<T> {
    let n = a.rows();
    let mut out = CMat::identity(n);
    let mut term = CMat::identity(n);
    for k in 1..terms {
        term = term.matmul(a).scale_real(&(T::one() / T::from_f64(k as f64)));
        out = out.add(&term);
        if term.max_abs().is_zero() {
            break;
        }
    }
    out
}
