//! `⟨hw| e^X |hw⟩` with its phase, from the Gauss factorization `e^X = N₋ D N₊`.
//!
//! In a basis ordered by decreasing height the factorization is an LU
//! decomposition without pivoting, and `D = e^{d}` for a Cartan element `d`.
//! The logarithms of the pivots are continued along a path from the identity,
//! which fixes `d` in any faithful rep and gives `⟨hw|e^X|hw⟩ = e^{w(d)}`.

use num_complex::Complex64;

use super::Simulator;
use crate::algebra::{AlgebraElement, RootSystem};
use crate::error::{Error, Result};
use crate::numerics::{matrix_exp, CMat64};

const MIN_STEP: f64 = 1e-7;
const MAX_JUMP: f64 = 0.5;
/// Imaginary bulges of the fallback paths `τ(s) = s + iδ s (1 − s)`.
const PATH_BULGES: [f64; 3] = [0.0, 0.37, -0.61];

fn heights(sim: &Simulator, weights: &[Vec<f64>]) -> Result<Vec<f64>> {
    let rs = RootSystem::standard(sim.spec)?;
    let r = sim.spec.rank();
    if rs.num_simple() != r {
        return Err(Error::Numerical("height function needs rank-many simple roots".into()));
    }
    // q0 with β_i(q0) = 1 for all simple roots
    let a = CMat64::from_fn(r, r, |i, k| {
        Complex64::new(num_traits::ToPrimitive::to_f64(&rs.simple_vector(i)[k]).unwrap_or(f64::NAN), 0.0)
    });
    let ones = CMat64::from_fn(r, 1, |_, _| Complex64::new(1.0, 0.0));
    let q0 = a.solve(&ones)?;
    Ok(weights.iter().map(|mu| mu.iter().enumerate().map(|(k, m)| m * q0[(k, 0)].re).sum()).collect())
}

/// Pivots of an LU factorization without row exchanges.
fn lu_pivots(mut g: CMat64) -> Option<Vec<Complex64>> {
    let n = g.rows();
    let scale = g.max_abs().max(f64::MIN_POSITIVE);
    let mut piv = Vec::with_capacity(n);
    for k in 0..n {
        let p = g[(k, k)];
        if p.norm() < 1e-11 * scale {
            return None;
        }
        piv.push(p);
        for i in k + 1..n {
            let f = g[(i, k)] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let v = g[(k, j)];
                g[(i, j)] -= f * v;
            }
        }
    }
    Some(piv)
}

fn unwrap_log(z: Complex64, prev: Complex64) -> Complex64 {
    let mut l = z.ln();
    let two_pi = 2.0 * std::f64::consts::PI;
    let k = ((prev.im - l.im) / two_pi).round();
    l.im += k * two_pi;
    l
}

fn continued_logs(x: &CMat64, order: &[usize], bulge: f64) -> Option<Vec<Complex64>> {
    let d = order.len();
    let permuted = |g: &CMat64| CMat64::from_fn(d, d, |i, j| g[(order[i], order[j])]);
    let tau = |s: f64| Complex64::new(s, bulge * s * (1.0 - s));
    let mut s: f64 = 0.0;
    let mut step: f64 = 0.125;
    let mut logs = vec![Complex64::new(0.0, 0.0); d];
    while s < 1.0 {
        let next = (s + step).min(1.0);
        let g = matrix_exp(&x.scale(&tau(next)), 1e-15).ok()?;
        let accepted = lu_pivots(permuted(&g)).and_then(|piv| {
            let cand: Vec<Complex64> = piv.iter().zip(&logs).map(|(p, prev)| unwrap_log(*p, *prev)).collect();
            let jump = cand.iter().zip(&logs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            (jump <= MAX_JUMP).then_some(cand)
        });
        match accepted {
            Some(cand) => {
                logs = cand;
                s = next;
                step = (step * 1.5).min(0.25);
            }
            None => {
                step *= 0.5;
                if step < MIN_STEP {
                    return None;
                }
            }
        }
    }
    Some(logs)
}

/// `⟨hw| e^X |hw⟩` for a complex algebra element `X`.
pub fn exp_amplitude(sim: &Simulator, x: &AlgebraElement) -> Result<Complex64> {
    let frame = sim.frame();
    let weights = frame
        .weights_f64()
        .ok_or_else(|| Error::Numerical("phase-resolved overlaps need a rep with diagonal Cartan images".into()))?;
    let h = heights(sim, &weights)?;
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| h[b].total_cmp(&h[a]));
    let xbar = frame.element(x.coeffs());
    let logs = PATH_BULGES
        .iter()
        .find_map(|&b| continued_logs(&xbar, &order, b))
        .ok_or_else(|| Error::Numerical("Gauss factorization degenerates along every continuation path".into()))?;

    // Least squares μ_i(d) = ℓ_i over basis vectors with nonzero weight.
    let r = sim.spec.rank();
    let rows: Vec<(Vec<f64>, Complex64)> = order
        .iter()
        .zip(&logs)
        .filter(|(i, _)| weights[**i].iter().any(|m| *m != 0.0))
        .map(|(i, l)| (weights[*i].clone(), *l))
        .collect();
    let mut ata = CMat64::zeros(r, r);
    let mut atb = CMat64::zeros(r, 1);
    for (mu, l) in &rows {
        for a in 0..r {
            atb[(a, 0)] += l * mu[a];
            for b in 0..r {
                ata[(a, b)] += Complex64::new(mu[a] * mu[b], 0.0);
            }
        }
    }
    let dsol = ata.solve(&atb)?;
    let resid = rows
        .iter()
        .map(|(mu, l)| {
            let fit: Complex64 = (0..r).map(|k| dsol[(k, 0)] * mu[k]).sum();
            (fit - l).norm()
        })
        .fold(0.0, f64::max);
    if resid > 1e-6 {
        return Err(Error::Numerical(format!("pivot logarithms are not a weight functional (misfit {resid:e})")));
    }
    let wd: Complex64 = (0..r).map(|k| dsol[(k, 0)] * sim.weight_f64()[k]).sum();
    Ok(wd.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_so2n, build_su2, rat_frac, Weight};
    use crate::engine::GateSequence;
    use crate::oracle::{build_fermion_oracle, build_spin_oracle, oracle_exp_amplitude};
    use crate::rep::{build_fermionic_defining, build_su2_defining};

    fn rnd(seed: &mut u64) -> f64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }

    #[test]
    fn spin_amplitudes_with_phase() {
        let s = build_su2();
        let rep = build_su2_defining();
        let mut seed = 3;
        for j2 in 1..=6 {
            let w = Weight::from_ints(&[j2 as i64]);
            let sim = Simulator::new(&s, &rep, &w).unwrap();
            let o = build_spin_oracle(j2).unwrap();
            for _ in 0..5 {
                let x = AlgebraElement::from_fn(&s, |_| Complex64::new(rnd(&mut seed), rnd(&mut seed)).scale(1.5));
                let z = exp_amplitude(&sim, &x).unwrap();
                let zo = oracle_exp_amplitude(&o, &GateSequence::empty(), &x).unwrap();
                assert!((z - zo).norm() < 1e-9 * (1.0 + zo.norm()), "{z} vs {zo}");
            }
        }
    }

    #[test]
    fn spinor_amplitudes_with_phase() {
        for n in 2..=4 {
            let s = build_so2n(n).unwrap();
            let rep = build_fermionic_defining(n).unwrap();
            let w = Weight::new(vec![rat_frac(1, 2); n]);
            let sim = Simulator::new(&s, &rep, &w).unwrap();
            let o = build_fermion_oracle(n).unwrap();
            let mut seed = 11 + n as u64;
            for _ in 0..5 {
                let x = AlgebraElement::from_fn(&s, |_| Complex64::new(rnd(&mut seed), rnd(&mut seed)).scale(1.2));
                let z = exp_amplitude(&sim, &x).unwrap();
                let zo = oracle_exp_amplitude(&o, &GateSequence::empty(), &x).unwrap();
                assert!((z - zo).norm() < 1e-9 * (1.0 + zo.norm()), "{z} vs {zo}");
            }
        }
    }
}
