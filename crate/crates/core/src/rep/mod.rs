//! Matrix representations of CW algebras and weight machinery.

mod frame;
mod weights;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use frame::Frame;
pub use weights::{enumerate_weights, max_weight_eigenvalue, MaxWeight, WeightEnumeration, WeightState};

use crate::algebra::validate::killing_form;
use crate::algebra::{rat, AlgebraElement, AlgebraSpec, Basis, Rational, Sign};
use crate::error::{Error, Result};
use crate::numerics::{CMat, CMat64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    Adjoint,
    Defining,
    Custom,
}

/// Dense exact real matrix, row-major.
pub type ExactMat = Vec<Rational>;

#[derive(Clone, Debug)]
pub struct MatrixRep {
    dim: usize,
    kind: RepKind,
    images: Vec<CMat64>,
    gram: Option<CMat64>,
    exact_images: Option<Vec<ExactMat>>,
    exact_gram: Option<ExactMat>,
}

fn exact_to_cmat(d: usize, m: &[Rational]) -> CMat64 {
    CMat::from_fn(d, d, |i, j| Complex64::new(m[i * d + j].to_f64().unwrap_or(f64::NAN), 0.0))
}

impl MatrixRep {
    /// Rep from exact rational images, with an optional exact Gram matrix.
    pub fn from_exact(kind: RepKind, dim: usize, exact_images: Vec<ExactMat>, exact_gram: Option<ExactMat>) -> Self {
        let images = exact_images.iter().map(|m| exact_to_cmat(dim, m)).collect();
        let gram = exact_gram.as_ref().map(|g| exact_to_cmat(dim, g));
        MatrixRep { dim, kind, images, gram, exact_images: Some(exact_images), exact_gram }
    }

    /// Custom rep from floating images. Checks shapes and the homomorphism property.
    pub fn custom(spec: &AlgebraSpec, images: Vec<CMat64>, gram: Option<CMat64>) -> Result<Self> {
        if images.len() != spec.dim() {
            return Err(Error::Shape(format!("{} images for an algebra of dimension {}", images.len(), spec.dim())));
        }
        let dim = images[0].rows();
        if images.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Shape("images must be square of equal size".into()));
        }
        if let Some(g) = &gram {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::Shape("Gram matrix size differs from the image size".into()));
            }
        }
        let rep = MatrixRep { dim, kind: RepKind::Custom, images, gram, exact_images: None, exact_gram: None };
        let err = rep.homomorphism_error(spec);
        if err > 1e-10 {
            return Err(Error::InvalidSpec(format!("images violate the brackets (error {err:e})")));
        }
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn images(&self) -> &[CMat64] {
        &self.images
    }

    pub fn image(&self, u: usize) -> &CMat64 {
        &self.images[u]
    }

    /// Gram matrix of the invariant inner product; `None` means the identity.
    pub fn gram(&self) -> Option<&CMat64> {
        self.gram.as_ref()
    }

    pub fn exact_images(&self) -> Option<&[ExactMat]> {
        self.exact_images.as_deref()
    }

    pub fn exact_gram(&self) -> Option<&ExactMat> {
        self.exact_gram.as_ref()
    }

    pub fn element_image(&self, x: &AlgebraElement) -> CMat64 {
        let mut out = CMat64::zeros(self.dim, self.dim);
        for (u, c) in x.coeffs().iter().enumerate() {
            if *c != Complex64::zero() {
                out.axpy(c, &self.images[u]);
            }
        }
        out
    }

    /// Max Frobenius error of `ρ([b_u, b_v]) − [ρ(b_u), ρ(b_v)]` over all basis pairs.
    pub fn homomorphism_error(&self, spec: &AlgebraSpec) -> f64 {
        let m = spec.dim();
        let mut worst = 0.0f64;
        for u in 0..m {
            for v in 0..m {
                let mut lhs = CMat64::zeros(self.dim, self.dim);
                for (w, q) in spec.basis_bracket_f64(u, v) {
                    lhs.axpy(&Complex64::new(*q, 0.0), &self.images[*w]);
                }
                let rhs = self.images[u].commutator(&self.images[v]);
                worst = worst.max(lhs.sub(&rhs).frob_norm());
            }
        }
        worst
    }

    /// `‖G X + X† G‖_F`; zero when the image of a compact element is skew-adjoint.
    pub fn skew_adjointness_error(&self, x: &AlgebraElement) -> f64 {
        let img = self.element_image(x);
        match &self.gram {
            Some(g) => g.matmul(&img).add(&img.adjoint().matmul(g)).frob_norm(),
            None => img.add(&img.adjoint()).frob_norm(),
        }
    }
}

/// Adjoint representation with the Gram matrix `G_uv = K(b_u†, b_v)`.
pub fn build_adjoint(spec: &AlgebraSpec) -> Result<MatrixRep> {
    let report = crate::algebra::validate_spec(spec)?;
    if !report.is_clean() {
        return Err(Error::InvalidSpec(format!("{}", report.violations[0])));
    }
    let m = spec.dim();
    let images: Vec<ExactMat> = (0..m)
        .map(|u| {
            let mut mat = vec![Rational::zero(); m * m];
            for v in 0..m {
                for (w, q) in spec.basis_bracket(u, v) {
                    mat[w * m + v] = q.clone();
                }
            }
            mat
        })
        .collect();
    let k = killing_form(spec);
    let mut gram = vec![Rational::zero(); m * m];
    for u in 0..m {
        let ud = spec.index(spec.basis(u).dagger());
        for v in 0..m {
            gram[u * m + v] = k[ud][v].clone();
        }
    }
    Ok(MatrixRep::from_exact(RepKind::Adjoint, m, images, Some(gram)))
}

/// `2N`-dimensional defining representation of the built-in so(2N).
pub fn build_fermionic_defining(n: usize) -> Result<MatrixRep> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("so(2N) requires N >= 2, got N = {n}")));
    }
    let images = crate::algebra::builtin::so2n_defining_images(n)
        .into_iter()
        .map(|m| m.into_iter().map(rat).collect())
        .collect();
    Ok(MatrixRep::from_exact(RepKind::Defining, 2 * n, images, None))
}

/// Spin-1/2 representation of the built-in su(2).
pub fn build_su2_defining() -> MatrixRep {
    let z = || rat(0);
    let h = vec![rat(1), z(), z(), rat(-1)];
    let ep = vec![z(), rat(1), z(), z()];
    let em = vec![z(), z(), rat(1), z()];
    MatrixRep::from_exact(RepKind::Defining, 2, vec![h, ep, em], None)
}

/// Smallest faithful rep available: the defining rep for built-in names, the
/// adjoint rep otherwise.
pub fn default_rep(spec: &AlgebraSpec) -> Result<MatrixRep> {
    if *spec == crate::algebra::build_su2() {
        return Ok(build_su2_defining());
    }
    if let Some(n) = spec.name().strip_prefix("so(").and_then(|r| r.strip_suffix(')')).and_then(|r| r.parse::<usize>().ok()) {
        if n % 2 == 0 && n >= 4 && *spec == crate::algebra::build_so2n(n / 2)? {
            return build_fermionic_defining(n / 2);
        }
    }
    build_adjoint(spec)
}

/// Serialized rep: images as row-major `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixRepJson {
    pub kind: RepKind,
    pub dim: usize,
    pub images: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<[f64; 2]>>,
}

fn mat_to_pairs(m: &CMat64) -> Vec<[f64; 2]> {
    m.data().iter().map(|c| [c.re, c.im]).collect()
}

fn pairs_to_mat(d: usize, p: &[[f64; 2]]) -> Result<CMat64> {
    if p.len() != d * d {
        return Err(Error::Shape(format!("matrix has {} entries, expected {}", p.len(), d * d)));
    }
    Ok(CMat::from_fn(d, d, |i, j| Complex64::new(p[i * d + j][0], p[i * d + j][1])))
}

impl MatrixRepJson {
    pub fn from_rep(rep: &MatrixRep) -> Self {
        MatrixRepJson {
            kind: rep.kind,
            dim: rep.dim,
            images: rep.images.iter().map(mat_to_pairs).collect(),
            gram: rep.gram.as_ref().map(mat_to_pairs),
        }
    }

    pub fn to_rep(&self, spec: &AlgebraSpec) -> Result<MatrixRep> {
        let images = self.images.iter().map(|p| pairs_to_mat(self.dim, p)).collect::<Result<Vec<_>>>()?;
        let gram = self.gram.as_ref().map(|g| pairs_to_mat(self.dim, g)).transpose()?;
        let mut rep = MatrixRep::custom(spec, images, gram)?;
        rep.kind = self.kind;
        Ok(rep)
    }
}

/// Basis index of a root vector, for callers building elements by hand.
pub fn root_index(spec: &AlgebraSpec, j: usize, sign: Sign) -> usize {
    spec.index(Basis::Root(j, sign))
}
