use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use super::{AlgebraSpec, Basis, Sign};
use crate::error::{Error, Result};

/// Complex coefficient vector over the CW basis of a spec.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    rank: usize,
    coeffs: Vec<Complex64>,
}

/// Written as a list of `[re, im]` pairs in basis order.
impl serde::Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| [c.re, c.im]))
    }
}

impl AlgebraElement {
    pub fn zeros(spec: &AlgebraSpec) -> Self {
        AlgebraElement { rank: spec.rank(), coeffs: vec![Complex64::new(0.0, 0.0); spec.dim()] }
    }

    pub fn basis(spec: &AlgebraSpec, b: Basis) -> Self {
        let mut x = Self::zeros(spec);
        x.coeffs[spec.index(b)] = Complex64::new(1.0, 0.0);
        x
    }

    pub fn from_fn(spec: &AlgebraSpec, f: impl FnMut(usize) -> Complex64) -> Self {
        AlgebraElement { rank: spec.rank(), coeffs: (0..spec.dim()).map(f).collect() }
    }

    pub fn from_coeffs(spec: &AlgebraSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != spec.dim() {
            return Err(Error::Shape(format!(
                "element has {} coefficients, algebra {} has dimension {}",
                coeffs.len(),
                spec.name(),
                spec.dim()
            )));
        }
        Ok(AlgebraElement { rank: spec.rank(), coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    fn num_pos_roots(&self) -> usize {
        (self.coeffs.len() - self.rank) / 2
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn cartan(&self) -> &[Complex64] {
        &self.coeffs[..self.rank]
    }

    pub fn raising(&self) -> &[Complex64] {
        &self.coeffs[self.rank..self.rank + self.num_pos_roots()]
    }

    pub fn lowering(&self) -> &[Complex64] {
        &self.coeffs[self.rank + self.num_pos_roots()..]
    }

    pub fn get(&self, spec: &AlgebraSpec, b: Basis) -> Complex64 {
        self.coeffs[spec.index(b)]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        AlgebraElement { rank: self.rank, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Norm of the raising and lowering part.
    pub fn offdiag_norm(&self) -> f64 {
        self.coeffs[self.rank..].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Hermitian transpose: `h† = h`, `(e±_j)† = e∓_j`, coefficients conjugated.
    pub fn dagger(&self) -> Self {
        let l = self.num_pos_roots();
        let r = self.rank;
        let mut out = self.coeffs.iter().map(|c| c.conj()).collect::<Vec<_>>();
        for j in 0..l {
            out.swap(r + j, r + l + j);
        }
        AlgebraElement { rank: r, coeffs: out }
    }

    /// Compact real form: skew-Hermitian images.
    pub fn is_compact(&self, tol: f64) -> bool {
        let l = self.num_pos_roots();
        self.cartan().iter().all(|c| c.re.abs() <= tol)
            && (0..l).all(|j| (self.lowering()[j] + self.raising()[j].conj()).norm() <= tol)
    }

    /// Hermitian images, i.e. the element lies in `i·𝔥`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let l = self.num_pos_roots();
        self.cartan().iter().all(|c| c.im.abs() <= tol)
            && (0..l).all(|j| (self.lowering()[j] - self.raising()[j].conj()).norm() <= tol)
    }

    pub fn is_cartan(&self, tol: f64) -> bool {
        self.offdiag_norm() <= tol
    }

    pub fn bracket(&self, other: &AlgebraElement, spec: &AlgebraSpec) -> AlgebraElement {
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (u, x) in self.coeffs.iter().enumerate() {
            if *x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (v, y) in other.coeffs.iter().enumerate() {
                if *y == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let xy = x * y;
                for (w, s) in spec.basis_bracket_f64(u, v) {
                    out[*w] += xy * s;
                }
            }
        }
        AlgebraElement { rank: self.rank, coeffs: out }
    }

    /// `Σ_k u_k λ(h_k)` for a functional given by its values on the `h_k`.
    pub fn contract_cartan(&self, values: &[f64]) -> Complex64 {
        self.cartan().iter().zip(values).map(|(c, v)| c * v).sum()
    }

    pub fn raising_index(&self, j: usize, sign: Sign) -> usize {
        match sign {
            Sign::Plus => self.rank + j,
            Sign::Minus => self.rank + self.num_pos_roots() + j,
        }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { rank: self.rank, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { rank: self.rank, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale_real(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_so2n;

    #[test]
    fn compact_and_hermitian_predicates() {
        let s = build_so2n(2).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let mut x = AlgebraElement::zeros(&s);
        x.coeffs_mut()[0] = i * 0.3;
        x.coeffs_mut()[2] = Complex64::new(0.4, 0.1);
        x.coeffs_mut()[4] = -Complex64::new(0.4, 0.1).conj();
        assert!(x.is_compact(1e-15));
        assert!(!x.is_hermitian(1e-15));
        let h = x.scale(i);
        assert!(h.is_hermitian(1e-15));
        assert!(!h.is_compact(1e-15));
        assert_eq!(h.dagger(), h);
    }

    #[test]
    fn dagger_reverses_brackets() {
        let s = build_so2n(3).unwrap();
        let x = AlgebraElement::from_fn(&s, |u| Complex64::new(u as f64 * 0.1, 1.0 - u as f64 * 0.05));
        let y = AlgebraElement::from_fn(&s, |u| Complex64::new((u as f64).sin(), (u as f64).cos()));
        let lhs = x.bracket(&y, &s).dagger();
        let rhs = y.dagger().bracket(&x.dagger(), &s);
        assert!((&lhs - &rhs).norm() < 1e-13);
    }
}
