//! Diagonalization of Hermitian algebra elements by rotations in the su(2)
//! subalgebras attached to the roots.

use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::expm::matrix_exp;
use super::scalar::{cabs, cis, Cx, Real};
use super::CMat;
use crate::algebra::{AlgebraElement, AlgebraSpec, Basis, Sign};
use crate::error::{Error, Result};
use crate::rep::{Frame, MatrixRep};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Rotation `exp(θ s (e^{iφ} e+_j − e^{−iφ} e-_j))` with `s = sqrt(2/α_j([e+_j, e-_j]))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rotation {
    pub root: usize,
    pub theta: f64,
    pub phi: f64,
}

impl Rotation {
    /// Compact generator `K` with the rotation equal to `e^K`.
    pub fn generator(&self, spec: &AlgebraSpec) -> AlgebraElement {
        let s = root_scale(spec, self.root);
        let mut k = AlgebraElement::zeros(spec);
        let z = Complex::from_polar(self.theta * s, self.phi);
        k.coeffs_mut()[spec.index(Basis::Root(self.root, Sign::Plus))] = z;
        k.coeffs_mut()[spec.index(Basis::Root(self.root, Sign::Minus))] = -z.conj();
        k
    }
}

/// `sqrt(2/κ_j)`: rescales `e±_j` into a standard sl(2) triple.
pub fn root_scale(spec: &AlgebraSpec, j: usize) -> f64 {
    (2.0 / spec.root_norm(j).to_f64().unwrap_or(f64::NAN)).sqrt()
}

#[derive(Clone, Debug)]
pub struct JacobiResult<T> {
    /// Cartan coordinates of `U^{-1} X U`.
    pub diagonal: Vec<T>,
    /// Rotations in the order applied; `U = e^{K_1} ⋯ e^{K_m}`.
    pub rotations: Vec<Rotation>,
    pub residual: f64,
    pub sweeps: usize,
    /// Off-diagonal norm before the first sweep and after every sweep.
    pub residual_trace: Vec<f64>,
}

impl<T: Real> JacobiResult<T> {
    pub fn diagonal_f64(&self) -> Vec<f64> {
        self.diagonal.iter().map(|x| x.to_f64()).collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct JacobiOptions {
    pub tol: f64,
    pub max_sweeps: usize,
    /// Compare the residual against `tol · max(1, ‖X‖_F)` instead of `tol`.
    pub relative: bool,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        JacobiOptions { tol: DEFAULT_TOL, max_sweeps: DEFAULT_MAX_SWEEPS, relative: false }
    }
}

fn off_diagonal<T: Real>(frame: &Frame<T>, x: &CMat<T>, rank: usize) -> (Vec<Cx<T>>, T) {
    let mut cartan: Vec<Cx<T>> = vec![Cx::zero(); frame.num_basis()];
    for (k, c) in cartan.iter_mut().enumerate().take(rank) {
        *c = frame.coefficient(x, k);
    }
    let off = x.sub(&frame.element(&cartan)).frob_norm();
    (cartan, off)
}

fn hermitize<T: Real>(x: &CMat<T>) -> CMat<T> {
    let half = T::from_f64(0.5);
    x.add(&x.adjoint()).scale_real(&half)
}

/// Cyclic Jacobi sweeps on a Hermitian element given by its frame image.
pub fn jacobi_diagonalize_image<T: Real>(
    spec: &AlgebraSpec,
    frame: &Frame<T>,
    x: &CMat<T>,
    opts: JacobiOptions,
) -> Result<JacobiResult<T>> {
    let r = spec.rank();
    let l = spec.num_pos_roots();
    let mut x = hermitize(x);
    let norm = x.frob_norm().to_f64();
    let target = if opts.relative { opts.tol * norm.max(1.0) } else { opts.tol };
    let skip = T::epsilon() * 1e-3 * norm.max(f64::MIN_POSITIVE);
    let a: Vec<Vec<T>> = (0..l).map(|j| spec.root_vector(j).iter().map(T::from_rational).collect()).collect();
    let scales: Vec<T> =
        (0..l).map(|j| (T::from_f64(2.0) / T::from_rational(&spec.root_norm(j))).sqrt()).collect();
    let (_, mut off) = off_diagonal(frame, &x, r);
    let mut trace = vec![off.to_f64()];
    let mut rotations = Vec::new();
    let mut sweeps = 0;
    while off.to_f64() >= target {
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence { residual: off.to_f64(), sweeps });
        }
        sweeps += 1;
        for j in 0..l {
            let up = frame.coefficient(&x, r + j);
            let s = &scales[j];
            let z = Cx::new(up.re.clone() / s.clone(), up.im.clone() / s.clone());
            let zabs = cabs(&z);
            if zabs.to_f64() <= skip {
                continue;
            }
            let mut alpha_u = T::zero();
            for k in 0..r {
                alpha_u = alpha_u + a[j][k].clone() * frame.coefficient(&x, k).re;
            }
            let c = alpha_u / T::from_f64(2.0);
            let mut lambda = c.hypot(&zabs);
            if c < T::zero() {
                lambda = -lambda;
            }
            let denom = c + lambda;
            let theta = (-zabs.clone()).atan2(&denom);
            let phi = z.im.atan2(&z.re);
            // K = θ s (e^{iφ} e+ − e^{−iφ} e−)
            let ph = cis(&phi);
            let coef = ph.scale(theta.clone() * s.clone());
            let mut kc: Vec<Cx<T>> = vec![Cx::zero(); frame.num_basis()];
            kc[r + j] = coef.clone();
            kc[r + l + j] = -coef.conj();
            let kmat = frame.element(&kc);
            let ek = matrix_exp(&kmat, T::epsilon())?;
            x = ek.adjoint().matmul(&x).matmul(&ek);
            rotations.push(Rotation { root: j, theta: theta.to_f64(), phi: phi.to_f64() });
        }
        x = hermitize(&x);
        off = off_diagonal(frame, &x, r).1;
        trace.push(off.to_f64());
    }
    let diagonal = (0..r).map(|k| frame.coefficient(&x, k).re).collect();
    Ok(JacobiResult { diagonal, rotations, residual: off.to_f64(), sweeps, residual_trace: trace })
}

/// Double-precision entry point on CW coefficients.
pub fn jacobi_diagonalize(
    x: &AlgebraElement,
    spec: &AlgebraSpec,
    rep: &MatrixRep,
    tol: f64,
    max_sweeps: usize,
) -> Result<JacobiResult<f64>> {
    if !x.is_hermitian(1e-10 * (1.0 + x.norm())) {
        return Err(Error::Numerical("Jacobi diagonalization needs a Hermitian element".into()));
    }
    let frame = Frame::<f64>::new(spec, rep)?;
    let img = frame.element(x.coeffs());
    jacobi_diagonalize_image(spec, &frame, &img, JacobiOptions { tol, max_sweeps, relative: false })
}
