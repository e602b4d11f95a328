//! `|⟨e^H⟩|²` through the projector limit `|hw⟩⟨hw| = lim e^{t(L − ω)}`.
//!
//! For `B = U^{-1} e^H U` the operator `e^{−3ωt} e^{tL} B e^{tL} B† e^{tL}` is a
//! positive group element whose top eigenvalue tends to `|⟨hw|B|hw⟩|²`. Its
//! logarithm is rotated into the Cartan subalgebra and the top eigenvalue in the
//! irrep is read off the highest weight. Entries span `e^{±3t·spread(L)}`, so the
//! matrices are handled in multiprecision with a bit budget that grows with `t`.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::gauss::exp_amplitude;
use super::{Ensemble, GateSequence, Simulator};
use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::numerics::jacobi::{jacobi_diagonalize_image, JacobiOptions};
use crate::numerics::scalar::{cx_from64, Cx};
use crate::numerics::{matrix_exp, matrix_log_pd, with_mp_precision, CMat, Mp, Real};
use crate::rep::{max_weight_eigenvalue, Frame};

/// Doubling schedule for the projector parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TSchedule {
    pub t0: f64,
    pub factor: f64,
    pub cap: f64,
    /// Stop once `|κ(factor·t) − κ(t)|` drops below this.
    pub tol: f64,
}

impl Default for TSchedule {
    fn default() -> Self {
        TSchedule { t0: 1.0, factor: 2.0, cap: 64.0, tol: 1e-10 }
    }
}

impl TSchedule {
    pub fn check(&self) -> Result<()> {
        if !(self.t0 > 0.0 && self.cap >= self.t0 && self.factor > 1.0 && self.tol > 0.0) {
            return Err(Error::InvalidInput(format!("bad t schedule {self:?}")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KappaTrace {
    pub t: Vec<f64>,
    pub kappa: Vec<f64>,
    pub precision_bits: Vec<u32>,
}

impl KappaTrace {
    /// `|κ(t_{i+1}) − κ(t_i)|` along the schedule.
    pub fn increments(&self) -> Vec<f64> {
        self.kappa.windows(2).map(|w| (w[1] - w[0]).abs()).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Abs2Result {
    pub value: f64,
    pub error_estimate: f64,
    /// Per ensemble term.
    pub traces: Vec<KappaTrace>,
    /// Phase-resolved `⟨φ_s|e^H|φ_s⟩`, computed for mixed ensembles only.
    pub amplitudes: Vec<Complex64>,
}

fn precision_bits(t: f64, spread: f64, h_norm: f64, gate_norm: f64) -> u32 {
    let growth = 3.0 * t * spread + 2.0 * (h_norm + 2.0 * gate_norm);
    (128.0 + 1.5 * growth / std::f64::consts::LN_2).ceil() as u32
}

fn mp_cx(c: &[Complex64]) -> Vec<Cx<Mp>> {
    c.iter().map(|z| cx_from64::<Mp>(*z)).collect()
}

/// `κ(t)` for one preparation.
pub fn kappa_at(sim: &Simulator, h: &AlgebraElement, prep: &GateSequence, t: f64) -> Result<(f64, u32)> {
    let weights = sim
        .frame()
        .weights()
        .ok_or_else(|| Error::Numerical("projector limit needs a rep with diagonal Cartan images".into()))?
        .to_vec();
    let wq = sim.weight.values();
    let lvals: Vec<f64> = weights
        .iter()
        .map(|mu| mu.iter().zip(wq).map(|(a, b)| (a * b).to_f64().unwrap_or(f64::NAN)).sum())
        .collect();
    let spread = lvals.iter().cloned().fold(f64::MIN, f64::max) - lvals.iter().cloned().fold(f64::MAX, f64::min);
    let h_norm = sim.frame().element(h.coeffs()).norm1();
    let gate_norm: f64 = prep.gates.iter().map(|g| sim.frame().element(g.exponent().coeffs()).norm1()).sum();
    let bits = precision_bits(t, spread, h_norm, gate_norm);
    let omega = sim.weight.omega_f64();

    let q = with_mp_precision(bits, || -> Result<Vec<f64>> {
        let frame = Frame::<Mp>::new(sim.spec, sim.rep)?;
        let eps = 2f64.powi(-(bits as i32));
        let d = frame.dim();
        let mut u = CMat::<Mp>::identity(d);
        for g in &prep.gates {
            u = matrix_exp(&frame.element(&mp_cx(g.exponent().coeffs())), eps)?.matmul(&u);
        }
        let eh = matrix_exp(&frame.element(&mp_cx(h.coeffs())), eps)?;
        let b = u.adjoint().matmul(&eh).matmul(&u);
        let tm = Mp::from_f64(t);
        let ldiag: Vec<Mp> = weights
            .iter()
            .map(|mu| {
                mu.iter().zip(wq).fold(Mp::from_f64(0.0), |acc, (a, w)| acc + Mp::from_rational(&(a * w)))
            })
            .collect();
        let left: Vec<Mp> = ldiag.iter().map(|x| (x.clone() * tm.clone()).exp()).collect();
        let right: Vec<Mp> = ldiag.iter().map(|x| (x.clone() * tm.clone() / Mp::from_f64(2.0)).exp()).collect();
        let z = CMat::from_fn(d, d, |i, j| b[(i, j)].clone().scale(left[i].clone() * right[j].clone()));
        let e = z.matmul(&z.adjoint());
        let qm = matrix_log_pd(&e).map_err(|err| match err {
            Error::NotPositiveDefinite { min_eigenvalue, .. } => Error::NotPositiveDefinite { min_eigenvalue, t: Some(t) },
            other => other,
        })?;
        frame.expand_checked(&qm, 1e-25)?;
        let opts = JacobiOptions { tol: 1e-30, max_sweeps: 100, relative: true };
        let res = jacobi_diagonalize_image(sim.spec, &frame, &qm, opts)?;
        Ok(res.diagonal_f64())
    })?;
    let top = max_weight_eigenvalue(sim.spec, &sim.weight, &q)?;
    Ok(((top.value - 3.0 * omega * t).exp(), bits))
}

/// Runs the schedule until two successive `κ` agree to the tolerance. Returns the
/// last value, the last increment as error estimate, and the trace.
pub fn projector_kappa(
    sim: &Simulator,
    h: &AlgebraElement,
    prep: &GateSequence,
    schedule: &TSchedule,
) -> Result<(f64, f64, KappaTrace)> {
    schedule.check()?;
    let mut trace = KappaTrace::default();
    let mut t = schedule.t0;
    loop {
        let (k, bits) = kappa_at(sim, h, prep, t)?;
        log::debug!("projector t = {t}: kappa = {k:.15e} ({bits} bits)");
        trace.t.push(t);
        trace.kappa.push(k);
        trace.precision_bits.push(bits);
        if let Some(inc) = trace.increments().last().copied() {
            if inc < schedule.tol {
                let err = inc.max(1e-12 * (1.0 + k));
                return Ok((k, err, trace));
            }
        }
        let next = t * schedule.factor;
        if next > schedule.cap * (1.0 + 1e-12) {
            let residual = trace.increments().last().copied().unwrap_or(f64::INFINITY);
            return Err(Error::NoConvergence { residual, sweeps: trace.t.len() });
        }
        t = next;
    }
}

pub(crate) fn expect_exponential_abs2_with(
    sim: &Simulator,
    h: &AlgebraElement,
    rho: &Ensemble,
    schedule: &TSchedule,
) -> Result<Abs2Result> {
    rho.require_normalized()?;
    if h.dim() != sim.spec.dim() {
        return Err(Error::Shape("exponent has the wrong dimension".into()));
    }
    let mut value = 0.0;
    let mut err = 0.0;
    let mut traces = Vec::new();
    for (p, seq) in &rho.terms {
        let (k, e, tr) = projector_kappa(sim, h, seq, schedule)?;
        value += p * p * k;
        err += p * p * e;
        traces.push(tr);
    }
    let mut amplitudes = Vec::new();
    if rho.terms.len() > 1 {
        for (_, seq) in &rho.terms {
            let (hs, _) = sim.conjugate(h, seq, 1e-8)?;
            amplitudes.push(exp_amplitude(sim, &hs)?);
        }
        for (a, (pa, _)) in rho.terms.iter().enumerate() {
            for (b, (pb, _)) in rho.terms.iter().enumerate() {
                if a != b {
                    let c = amplitudes[a] * amplitudes[b].conj();
                    value += pa * pb * c.re;
                    err += pa * pb * 1e-9 * (1.0 + c.norm());
                }
            }
        }
    }
    Ok(Abs2Result { value, error_estimate: err, traces, amplitudes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_so2n, build_su2, rat_frac, Weight};
    use crate::engine::{expect_exponential_abs2, Gate, Measurement};
    use crate::oracle::{build_fermion_oracle, oracle_expect};
    use crate::rep::{build_fermionic_defining, build_su2_defining};

    #[test]
    fn zero_exponent_gives_one() {
        let s = build_su2();
        let rep = build_su2_defining();
        let r = expect_exponential_abs2(
            &AlgebraElement::zeros(&s),
            &Ensemble::pure(GateSequence::empty()),
            &s,
            &Weight::from_ints(&[1]),
            &rep,
            &TSchedule::default(),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spin_half_rotation_by_third_of_pi() {
        // e^H with H = −iθσ_x/2, θ = π/3: |⟨0|e^H|0⟩|² = cos²(π/6) = 3/4.
        let s = build_su2();
        let rep = build_su2_defining();
        let theta = std::f64::consts::PI / 3.0;
        let mut h = AlgebraElement::zeros(&s);
        h.coeffs_mut()[1] = Complex64::new(0.0, -theta / 2.0);
        h.coeffs_mut()[2] = Complex64::new(0.0, -theta / 2.0);
        let r = expect_exponential_abs2(
            &h,
            &Ensemble::pure(GateSequence::empty()),
            &s,
            &Weight::from_ints(&[1]),
            &rep,
            &TSchedule::default(),
        )
        .unwrap();
        assert!((r.value - 0.75).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn so4_matches_oracle() {
        let s = build_so2n(2).unwrap();
        let rep = build_fermionic_defining(2).unwrap();
        let w = Weight::new(vec![rat_frac(1, 2); 2]);
        let o = build_fermion_oracle(2).unwrap();
        let x = AlgebraElement::from_fn(&s, |u| Complex64::new((u as f64 * 1.3).sin(), (u as f64 * 0.4).cos()));
        let k = &x - &x.dagger();
        let seq = GateSequence::new(vec![Gate::new(k.clone(), 0.6).unwrap()]);
        let hgen = AlgebraElement::from_fn(&s, |u| Complex64::new(0.2 * u as f64 - 0.4, 0.3));
        for h in [k.scale_real(0.9), hgen] {
            let rho = Ensemble::pure(seq.clone());
            let r = expect_exponential_abs2(&h, &rho, &s, &w, &rep, &TSchedule::default()).unwrap();
            let oracle = oracle_expect(&o, &rho, &Measurement::ExponentialAbs2(h.clone())).unwrap().re;
            assert!((r.value - oracle).abs() < 1e-8, "{} vs {}", r.value, oracle);
            assert!(r.error_estimate >= (r.value - oracle).abs());
            let mixed = Ensemble::new(vec![(0.4, GateSequence::empty()), (0.6, seq.clone())]).unwrap();
            let r = expect_exponential_abs2(&h, &mixed, &s, &w, &rep, &TSchedule::default()).unwrap();
            let oracle = oracle_expect(&o, &mixed, &Measurement::ExponentialAbs2(h.clone())).unwrap().re;
            assert!((r.value - oracle).abs() < 1e-8, "{} vs {}", r.value, oracle);
        }
    }
}
