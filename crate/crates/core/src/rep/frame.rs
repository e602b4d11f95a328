use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

use super::MatrixRep;
use crate::algebra::{AlgebraSpec, Rational};
use crate::error::{Error, Result};
use crate::numerics::scalar::{cabs, Cx, Real};
use crate::numerics::CMat;

type SparseMat<T> = Vec<(usize, usize, Cx<T>)>;

/// Images of a rep in coordinates where the invariant inner product is the standard
/// one, so compact elements act by skew-Hermitian matrices, together with a dual
/// basis for expanding matrices back into CW coefficients.
#[derive(Clone, Debug)]
pub struct Frame<T: Real> {
    d: usize,
    rank: usize,
    images: Vec<CMat<T>>,
    sparse: Vec<SparseMat<T>>,
    dual: Vec<SparseMat<T>>,
    weights: Option<Vec<Vec<Rational>>>,
}

fn to_sparse<T: Real>(m: &CMat<T>) -> SparseMat<T> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                out.push((i, j, m[(i, j)].clone()));
            }
        }
    }
    out
}

/// Inverse of a Hermitian matrix through the connected components of its sparsity
/// graph; images of disjoint support give a nearly diagonal Gram.
fn block_inverse<T: Real>(f: &CMat<T>) -> Result<CMat<T>> {
    let m = f.rows();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for u in 0..m {
        for v in u + 1..m {
            if !f[(u, v)].is_zero() {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for u in 0..m {
        let root = find(&mut parent, u);
        if slot[root] == usize::MAX {
            slot[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[root]].push(u);
    }
    let mut out = CMat::<T>::zeros(m, m);
    for idx in &blocks {
        let b = CMat::from_fn(idx.len(), idx.len(), |i, j| f[(idx[i], idx[j])].clone());
        let bi = b.inverse()?;
        for (i, &u) in idx.iter().enumerate() {
            for (j, &v) in idx.iter().enumerate() {
                out[(u, v)] = bi[(i, j)].clone();
            }
        }
    }
    Ok(out)
}

impl<T: Real> Frame<T> {
    pub fn new(spec: &AlgebraSpec, rep: &MatrixRep) -> Result<Self> {
        let d = rep.dim();
        let raw: Vec<CMat<T>> = match rep.exact_images() {
            Some(ex) => ex
                .iter()
                .map(|m| CMat::from_fn(d, d, |i, j| Complex::new(T::from_rational(&m[i * d + j]), T::zero())))
                .collect(),
            None => rep
                .images()
                .iter()
                .map(|m| m.map(|c| Complex::new(T::from_f64(c.re), T::from_f64(c.im))))
                .collect(),
        };
        let gram: Option<CMat<T>> = match (rep.exact_gram(), rep.gram()) {
            (Some(g), _) => Some(CMat::from_fn(d, d, |i, j| Complex::new(T::from_rational(&g[i * d + j]), T::zero()))),
            (None, Some(g)) => Some(g.map(|c| Complex::new(T::from_f64(c.re), T::from_f64(c.im)))),
            (None, None) => None,
        };
        let images = match gram {
            Some(g) => {
                // <x, y> = x^H G y with G = C C^H, so x' = C^H x.
                let c = g.cholesky()?;
                let ch = c.adjoint();
                let chi = ch.inverse()?;
                raw.iter().map(|x| ch.matmul(x).matmul(&chi)).collect()
            }
            None => raw,
        };

        let m = images.len();
        let mut f = CMat::<T>::zeros(m, m);
        let sparse: Vec<SparseMat<T>> = images.iter().map(to_sparse).collect();
        for u in 0..m {
            for v in u..m {
                let mut s = Cx::<T>::zero();
                for (i, j, x) in &sparse[u] {
                    let y = &images[v][(*i, *j)];
                    if !y.is_zero() {
                        s = s + x.conj() * y.clone();
                    }
                }
                f[(v, u)] = s.conj();
                f[(u, v)] = s;
            }
        }
        let finv = block_inverse(&f).map_err(|_| Error::InvalidSpec("basis images are linearly dependent".into()))?;
        let scale = finv.max_abs().to_f64();
        let drop = 4.0 * T::epsilon() * scale * m as f64;
        let dual = (0..m)
            .map(|u| {
                let mut acc = CMat::<T>::zeros(d, d);
                for v in 0..m {
                    // dual_u = Σ_v X_v (F^{-1})_{vu}
                    let coef = finv[(v, u)].clone();
                    if cabs(&coef).to_f64() > drop {
                        acc.axpy(&coef, &images[v]);
                    }
                }
                to_sparse(&acc)
            })
            .collect();

        let weights = rep.exact_images().and_then(|ex| {
            let diag = (0..spec.rank()).all(|k| {
                (0..d).all(|i| (0..d).all(|j| i == j || ex[k][i * d + j].is_zero()))
            });
            diag.then(|| (0..d).map(|i| (0..spec.rank()).map(|k| ex[k][i * d + i].clone()).collect()).collect())
        });

        Ok(Frame { d, rank: spec.rank(), images, sparse, dual, weights })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_basis(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, u: usize) -> &CMat<T> {
        &self.images[u]
    }

    /// Weights `μ_i(h_k)` of the frame basis vectors, when the Cartan images are
    /// diagonal.
    pub fn weights(&self) -> Option<&[Vec<Rational>]> {
        self.weights.as_deref()
    }

    pub fn weights_f64(&self) -> Option<Vec<Vec<f64>>> {
        self.weights
            .as_ref()
            .map(|w| w.iter().map(|row| row.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect()).collect())
    }

    pub fn element(&self, coeffs: &[Cx<T>]) -> CMat<T> {
        let mut out = CMat::zeros(self.d, self.d);
        for (u, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, j, x) in &self.sparse[u] {
                out[(*i, *j)] = out[(*i, *j)].clone() + c.clone() * x.clone();
            }
        }
        out
    }

    pub fn coefficient(&self, y: &CMat<T>, u: usize) -> Cx<T> {
        let mut s = Cx::<T>::zero();
        for (i, j, x) in &self.dual[u] {
            s = s + x.conj() * y[(*i, *j)].clone();
        }
        s
    }

    /// CW coefficients of `y` and the Frobenius norm of the part outside the span.
    pub fn expand(&self, y: &CMat<T>) -> (Vec<Cx<T>>, T) {
        let coeffs: Vec<Cx<T>> = (0..self.images.len()).map(|u| self.coefficient(y, u)).collect();
        let residual = y.sub(&self.element(&coeffs)).frob_norm();
        (coeffs, residual)
    }

    /// Expansion that fails when the residual exceeds `tol · (1 + ‖y‖_F)`.
    pub fn expand_checked(&self, y: &CMat<T>, tol: f64) -> Result<Vec<Cx<T>>> {
        let (c, r) = self.expand(y);
        let bound = tol * (1.0 + y.frob_norm().to_f64());
        if !(r.to_f64() <= bound) {
            return Err(Error::ExpansionResidual { residual: r.to_f64(), tol: bound });
        }
        Ok(c)
    }
}
