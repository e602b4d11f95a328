//! Brute-force reference: CW basis images at full Hilbert-space dimension.

mod models;

use num_complex::Complex64;

pub use models::{annihilation, fermionic_quadratic_matrix, ising_spin_hamiltonian};

use crate::algebra::{build_so2n, build_su2, rat, rat_frac, AlgebraElement, AlgebraSpec, Weight};
use crate::engine::{Ensemble, GateSequence, Measurement};
use crate::error::{Error, Result};
use crate::numerics::{matrix_exp, CMat64};

/// Largest fermion mode count the oracle accepts.
pub const MAX_MODES: usize = 12;

/// Operator with at most one nonzero entry per column: column `c` maps to
/// `vals[c] · |rows[c]⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnOp {
    rows: Vec<usize>,
    vals: Vec<f64>,
}

impl ColumnOp {
    fn zero(d: usize) -> Self {
        ColumnOp { rows: (0..d).collect(), vals: vec![0.0; d] }
    }

    fn diag(vals: Vec<f64>) -> Self {
        ColumnOp { rows: (0..vals.len()).collect(), vals }
    }

    pub fn dim(&self) -> usize {
        self.vals.len()
    }

    /// `self · other`
    pub fn compose(&self, other: &ColumnOp) -> ColumnOp {
        let d = self.dim();
        let mut out = ColumnOp::zero(d);
        for c in 0..d {
            let v1 = other.vals[c];
            if v1 != 0.0 {
                let r1 = other.rows[c];
                let v2 = self.vals[r1];
                if v2 != 0.0 {
                    out.rows[c] = self.rows[r1];
                    out.vals[c] = v1 * v2;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> ColumnOp {
        let d = self.dim();
        let mut out = ColumnOp::zero(d);
        for c in 0..d {
            if self.vals[c] != 0.0 {
                out.rows[self.rows[c]] = c;
                out.vals[self.rows[c]] = self.vals[c];
            }
        }
        out
    }

    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (c, p) in psi.iter().enumerate() {
            if self.vals[c] != 0.0 {
                out[self.rows[c]] += p * self.vals[c];
            }
        }
        out
    }

    pub fn to_dense(&self) -> CMat64 {
        let mut m = CMat64::zeros(self.dim(), self.dim());
        for c in 0..self.dim() {
            if self.vals[c] != 0.0 {
                m[(self.rows[c], c)] += Complex64::new(self.vals[c], 0.0);
            }
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct DenseOperatorSet {
    spec: AlgebraSpec,
    images: Vec<ColumnOp>,
    hw_index: usize,
    weight: Weight,
}

impl DenseOperatorSet {
    fn new(spec: AlgebraSpec, images: Vec<ColumnOp>, hw_index: usize, weight: Weight) -> Result<Self> {
        let set = DenseOperatorSet { spec, images, hw_index, weight };
        set.verify()?;
        Ok(set)
    }

    /// Homomorphism on all basis pairs and the highest-weight conditions.
    fn verify(&self) -> Result<()> {
        let err = self.homomorphism_error();
        if err > 1e-12 {
            return Err(Error::Numerical(format!("oracle images violate the brackets by {err:e}")));
        }
        let hw = self.hw_state();
        let r = self.spec.rank();
        let l = self.spec.num_pos_roots();
        for j in 0..l {
            let v = self.images[r + j].apply(&hw);
            if v.iter().any(|x| x.norm() > 0.0) {
                return Err(Error::Numerical(format!("raising operator {} does not annihilate |hw>", j + 1)));
            }
        }
        let w = self.weight.values_f64();
        for k in 0..r {
            let v = self.images[k].apply(&hw);
            if (v[self.hw_index].re - w[k]).abs() > 1e-14 {
                return Err(Error::Numerical(format!("h{} eigenvalue on |hw> differs from the weight", k + 1)));
            }
        }
        Ok(())
    }

    pub fn homomorphism_error(&self) -> f64 {
        let m = self.spec.dim();
        let d = self.dim();
        let mut worst = 0.0f64;
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for u in 0..m {
            for v in 0..m {
                let ab = self.images[u].compose(&self.images[v]);
                let ba = self.images[v].compose(&self.images[u]);
                let br = self.spec.basis_bracket_f64(u, v);
                for c in 0..d {
                    entries.clear();
                    entries.push((ab.rows[c], ab.vals[c]));
                    entries.push((ba.rows[c], -ba.vals[c]));
                    for (w, q) in br {
                        entries.push((self.images[*w].rows[c], -q * self.images[*w].vals[c]));
                    }
                    entries.sort_by_key(|e| e.0);
                    let mut i = 0;
                    while i < entries.len() {
                        let mut s = 0.0;
                        let row = entries[i].0;
                        while i < entries.len() && entries[i].0 == row {
                            s += entries[i].1;
                            i += 1;
                        }
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.images[0].dim()
    }

    pub fn hw_index(&self) -> usize {
        self.hw_index
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn basis_image(&self, u: usize) -> &ColumnOp {
        &self.images[u]
    }

    pub fn hw_state(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.dim()];
        v[self.hw_index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn element_image(&self, x: &AlgebraElement) -> CMat64 {
        let d = self.dim();
        let mut m = CMat64::zeros(d, d);
        for (u, c) in x.coeffs().iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            let op = &self.images[u];
            for col in 0..d {
                if op.vals[col] != 0.0 {
                    m[(op.rows[col], col)] += c * op.vals[col];
                }
            }
        }
        m
    }

    pub fn apply_element(&self, x: &AlgebraElement, psi: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (u, c) in x.coeffs().iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            let op = &self.images[u];
            for (col, p) in psi.iter().enumerate() {
                if op.vals[col] != 0.0 {
                    out[op.rows[col]] += c * p * op.vals[col];
                }
            }
        }
        out
    }

    /// `U|hw⟩` with dense exponentials of every gate at full dimension.
    /// Same images with a different reference state; the highest-weight conditions
    /// are re-checked.
    pub fn with_highest_weight(&self, hw_index: usize, weight: Weight) -> Result<Self> {
        if hw_index >= self.dim() || weight.rank() != self.spec.rank() {
            return Err(Error::Shape("reference state index or weight out of range".into()));
        }
        DenseOperatorSet::new(self.spec.clone(), self.images.clone(), hw_index, weight)
    }

    /// `⟨ψ|X|ψ⟩` for the prepared state `ψ = U|hw⟩`.
    pub fn energy(&self, prep: &GateSequence, x: &AlgebraElement) -> Result<Complex64> {
        let psi = self.state(prep)?;
        Ok(inner(&psi, &self.apply_element(x, &psi)))
    }

    pub fn state(&self, prep: &GateSequence) -> Result<Vec<Complex64>> {
        let mut psi = self.hw_state();
        for g in &prep.gates {
            let u = matrix_exp(&self.element_image(&g.exponent()), 1e-15)?;
            psi = u.mul_vec(&psi);
        }
        Ok(psi)
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// su(2) irrep of dimension `j2 + 1` with `h = 2J_z`, `e± = J±`; `|hw⟩` is index 0.
pub fn build_spin_oracle(j2: usize) -> Result<DenseOperatorSet> {
    if j2 == 0 {
        return Err(Error::InvalidInput("spin oracle needs 2j >= 1".into()));
    }
    let d = j2 + 1;
    let j = j2 as f64 / 2.0;
    // index i has m = j − i
    let h = ColumnOp::diag((0..d).map(|i| j2 as f64 - 2.0 * i as f64).collect());
    let mut up = ColumnOp::zero(d);
    for i in 1..d {
        let m = j - i as f64;
        up.rows[i] = i - 1;
        up.vals[i] = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
    }
    let down = up.adjoint();
    DenseOperatorSet::new(build_su2(), vec![h, up, down], 0, Weight::new(vec![rat(j2 as i64)]))
}

fn fermion_ops(n: usize) -> Vec<ColumnOp> {
    (0..n).map(|j| annihilation(n, j)).collect()
}

/// Jordan–Wigner images of the so(2N) CW basis on the `2^N`-dimensional Fock space.
///
/// Bit `j` of a basis index is the occupation of mode `j`; `|hw⟩` is the filled state
/// with weight `(1/2, …, 1/2)`.
pub fn build_fermion_oracle(n: usize) -> Result<DenseOperatorSet> {
    if n > MAX_MODES {
        return Err(Error::DimensionGuard { n, max: MAX_MODES });
    }
    let spec = build_so2n(n)?;
    let d = 1usize << n;
    let c = fermion_ops(n);
    let cd: Vec<ColumnOp> = c.iter().map(ColumnOp::adjoint).collect();
    let mut images = Vec::with_capacity(spec.dim());
    for k in 0..n {
        images.push(ColumnOp::diag((0..d).map(|s| ((s >> k) & 1) as f64 - 0.5).collect()));
    }
    let roots = crate::algebra::builtin::so2n_roots(n);
    let mut raise = Vec::new();
    let mut lower = Vec::new();
    for &(i, j, pair) in &roots {
        if pair {
            raise.push(cd[i].compose(&cd[j]));
            lower.push(c[j].compose(&c[i]));
        } else {
            raise.push(cd[i].compose(&c[j]));
            lower.push(cd[j].compose(&c[i]));
        }
    }
    images.extend(raise);
    images.extend(lower);
    let half = rat_frac(1, 2);
    DenseOperatorSet::new(spec, images, d - 1, Weight::new(vec![half; n]))
}

/// Fock oracle with `|hw⟩` the state with only the last mode empty, the highest
/// weight `(1/2, …, 1/2, −1/2)` of the odd-parity sector.
pub fn build_fermion_oracle_odd(n: usize) -> Result<DenseOperatorSet> {
    let even = build_fermion_oracle(n)?;
    let d = 1usize << n;
    let mut w = vec![rat_frac(1, 2); n];
    w[n - 1] = rat_frac(-1, 2);
    even.with_highest_weight(d - 1 - (1 << (n - 1)), Weight::new(w))
}

/// `⟨W⟩` or `|⟨e^H⟩|²` over the ensemble, by dense evaluation.
pub fn oracle_expect(ops: &DenseOperatorSet, rho: &Ensemble, measure: &Measurement) -> Result<Complex64> {
    match measure {
        Measurement::Element(w) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for (p, seq) in &rho.terms {
                let psi = ops.state(seq)?;
                acc += inner(&psi, &ops.apply_element(w, &psi)) * p;
            }
            Ok(acc)
        }
        Measurement::ExponentialAbs2(h) => {
            let eh = matrix_exp(&ops.element_image(h), 1e-15)?;
            let mut acc = Complex64::new(0.0, 0.0);
            for (p, seq) in &rho.terms {
                let psi = ops.state(seq)?;
                acc += inner(&psi, &eh.mul_vec(&psi)) * p;
            }
            Ok(Complex64::new(acc.norm_sqr(), 0.0))
        }
    }
}

/// `⟨ψ_s|e^H|ψ_s⟩` for a single preparation.
pub fn oracle_exp_amplitude(ops: &DenseOperatorSet, prep: &GateSequence, h: &AlgebraElement) -> Result<Complex64> {
    let eh = matrix_exp(&ops.element_image(h), 1e-15)?;
    let psi = ops.state(prep)?;
    Ok(inner(&psi, &eh.mul_vec(&psi)))
}

/// `Σ_s p_s ⟨ψ_s| W¹ ⋯ W^q |ψ_s⟩`.
pub fn oracle_correlate(ops: &DenseOperatorSet, ws: &[AlgebraElement], rho: &Ensemble) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, seq) in &rho.terms {
        let psi = ops.state(seq)?;
        let mut v = psi.clone();
        for w in ws.iter().rev() {
            v = ops.apply_element(w, &v);
        }
        acc += inner(&psi, &v) * p;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Gate;

    #[test]
    fn spin_half_matrices() {
        let o = build_spin_oracle(1).unwrap();
        assert_eq!(o.basis_image(0).to_dense().data().iter().map(|c| c.re).collect::<Vec<_>>(), vec![1., 0., 0., -1.]);
        for j2 in 1..=8 {
            assert!(build_spin_oracle(j2).unwrap().homomorphism_error() < 1e-14);
        }
    }

    #[test]
    fn fermion_anticommutators() {
        let n = 3;
        let c = fermion_ops(n);
        for i in 0..n {
            for j in 0..n {
                let cdj = c[j].adjoint();
                let a = c[i].compose(&cdj).to_dense().add(&cdj.compose(&c[i]).to_dense());
                let expect = if i == j { CMat64::identity(1 << n) } else { CMat64::zeros(1 << n, 1 << n) };
                assert!(a.sub(&expect).frob_norm() < 1e-14);
                let b = c[i].compose(&c[j]).to_dense().add(&c[j].compose(&c[i]).to_dense());
                assert!(b.frob_norm() < 1e-14);
            }
        }
    }

    #[test]
    fn number_operator_spectrum() {
        let c = fermion_ops(2);
        let n1 = c[0].adjoint().compose(&c[0]);
        let mut v = n1.to_dense();
        let mut diag: Vec<f64> = (0..4).map(|i| v[(i, i)].re).collect();
        diag.sort_by(f64::total_cmp);
        assert_eq!(diag, vec![0.0, 0.0, 1.0, 1.0]);
        v = v.sub(&CMat64::from_diag(&(0..4).map(|i| v[(i, i)]).collect::<Vec<_>>()));
        assert_eq!(v.frob_norm(), 0.0);
    }

    #[test]
    fn fermion_oracle_construction_checks_pass() {
        for n in 2..=6 {
            let o = build_fermion_oracle(n).unwrap();
            assert!(o.homomorphism_error() < 1e-12);
        }
        assert!(matches!(build_fermion_oracle(13), Err(Error::DimensionGuard { .. })));
    }

    #[test]
    fn identity_circuit_measures_weight() {
        let o = build_fermion_oracle(3).unwrap();
        let rho = Ensemble::pure(GateSequence::empty());
        for k in 0..3 {
            let hk = o.spec().cartan_element(&[if k == 0 { 1.0 } else { 0.0 }, if k == 1 { 1.0 } else { 0.0 }, if k == 2 { 1.0 } else { 0.0 }]);
            let v = oracle_expect(&o, &rho, &Measurement::Element(hk)).unwrap();
            assert!((v.re - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn unitary_circuit_preserves_norm() {
        let o = build_fermion_oracle(3).unwrap();
        let s = o.spec().clone();
        let x = AlgebraElement::from_fn(&s, |u| Complex64::new((u as f64).sin(), (u as f64 * 0.7).cos()));
        let k = &x - &x.dagger();
        let seq = GateSequence::new(vec![Gate::new(k, 0.8).unwrap()]);
        let psi = o.state(&seq).unwrap();
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }
}
