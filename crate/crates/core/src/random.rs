//! Seeded random inputs for cross-checks and benchmarks.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::engine::{Ensemble, Gate, GateSequence};
use crate::gmfh::FermionicQuadratic;

fn unit<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Coefficients uniform in the unit square.
pub fn element<R: Rng>(spec: &AlgebraSpec, rng: &mut R) -> AlgebraElement {
    AlgebraElement::from_fn(spec, |_| unit(rng))
}

/// `(x − x†)/2`, skew-Hermitian in a unitary rep.
pub fn compact<R: Rng>(spec: &AlgebraSpec, rng: &mut R) -> AlgebraElement {
    let x = element(spec, rng);
    (&x - &x.dagger()).scale_real(0.5)
}

pub fn hermitian<R: Rng>(spec: &AlgebraSpec, rng: &mut R) -> AlgebraElement {
    let x = element(spec, rng);
    (&x + &x.dagger()).scale_real(0.5)
}

/// `depth` gates with compact generators normalized to unit norm and times in `[−1, 1]`.
pub fn prep<R: Rng>(spec: &AlgebraSpec, rng: &mut R, depth: usize) -> GateSequence {
    GateSequence::new(
        (0..depth)
            .map(|_| {
                let k = compact(spec, rng);
                let k = k.scale_real(1.0 / k.norm().max(f64::MIN_POSITIVE));
                Gate::new(k, rng.gen_range(-1.0..1.0)).expect("compact generator")
            })
            .collect(),
    )
}

/// Up to `max_terms` preparations with random normalized weights.
pub fn ensemble<R: Rng>(spec: &AlgebraSpec, rng: &mut R, max_terms: usize, depth: usize) -> Ensemble {
    let n = rng.gen_range(1..=max_terms.max(1));
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut terms: Vec<(f64, GateSequence)> = raw.iter().map(|p| (p / total, prep(spec, rng, depth))).collect();
    let head: f64 = terms[1..].iter().map(|(p, _)| p).sum();
    terms[0].0 = 1.0 - head;
    Ensemble::new(terms).expect("normalized ensemble")
}

pub fn fermionic<R: Rng>(n: usize, rng: &mut R) -> FermionicQuadratic {
    let z = Complex64::new(0.0, 0.0);
    let mut t = vec![vec![z; n]; n];
    let mut u = vec![vec![z; n]; n];
    for i in 0..n {
        t[i][i] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let a = unit(rng);
            let b = unit(rng);
            t[i][j] = a;
            t[j][i] = a.conj();
            u[i][j] = b;
            u[j][i] = -b;
        }
    }
    FermionicQuadratic::new(t, u).expect("valid quadratic form")
}
