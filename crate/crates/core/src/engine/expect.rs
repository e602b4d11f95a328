use num_complex::Complex64;
use serde::Serialize;

use super::projector::{expect_exponential_abs2_with, Abs2Result, TSchedule};
use super::{Ensemble, GateSequence, Measurement};
use crate::algebra::{AlgebraElement, AlgebraSpec, Weight};
use crate::error::Result;
use crate::numerics::{matrix_exp, CMat64};
use crate::rep::{Frame, MatrixRep};

/// Spec, rep and weight with the double-precision frame built once.
#[derive(Clone, Debug)]
pub struct Simulator<'a> {
    pub spec: &'a AlgebraSpec,
    pub rep: &'a MatrixRep,
    pub weight: Weight,
    frame: Frame<f64>,
    w64: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationResult {
    pub value: Complex64,
    /// `(p_s, U_s^{-1} W U_s)` per ensemble term.
    #[serde(skip)]
    pub cw_expansions: Vec<(f64, AlgebraElement)>,
    pub accuracy_estimate: f64,
}

impl ExpectationResult {
    /// `Σ_s p_s Σ_k u^s_k w(h_k)` from the stored expansions.
    pub fn recompute(&self, w: &Weight) -> Complex64 {
        let wv = w.values_f64();
        self.cw_expansions.iter().map(|(p, x)| x.contract_cartan(&wv) * p).sum()
    }
}

/// Outcome of an LQC run.
#[derive(Clone, Debug, Serialize)]
pub struct LqcResult {
    pub value: Complex64,
    pub error_estimate: f64,
}

impl<'a> Simulator<'a> {
    pub fn new(spec: &'a AlgebraSpec, rep: &'a MatrixRep, weight: &Weight) -> Result<Self> {
        weight.check(spec)?;
        let frame = Frame::<f64>::new(spec, rep)?;
        Ok(Simulator { spec, rep, w64: weight.values_f64(), weight: weight.clone(), frame })
    }

    pub fn frame(&self) -> &Frame<f64> {
        &self.frame
    }

    /// Frame image of `U = e^{t_n X_n} ⋯ e^{t_1 X_1}`.
    pub fn unitary(&self, prep: &GateSequence) -> Result<CMat64> {
        prep.check(self.spec)?;
        let d = self.frame.dim();
        let mut u = CMat64::identity(d);
        for g in &prep.gates {
            let e = matrix_exp(&self.frame.element(g.exponent().coeffs()), f64::EPSILON)?;
            u = e.matmul(&u);
        }
        Ok(u)
    }

    /// CW coefficients of `U^{-1} W U`, with the expansion residual.
    pub fn conjugate(&self, w: &AlgebraElement, prep: &GateSequence, tol: f64) -> Result<(AlgebraElement, f64)> {
        let wbar = self.frame.element(w.coeffs());
        if prep.is_empty() {
            return Ok((w.clone(), 0.0));
        }
        let u = self.unitary(prep)?;
        let conj = u.adjoint().matmul(&wbar).matmul(&u);
        let coeffs = self.frame.expand_checked(&conj, tol)?;
        let (_, residual) = self.frame.expand(&conj);
        Ok((AlgebraElement::from_coeffs(self.spec, coeffs)?, residual))
    }

    pub fn expect_element(&self, w: &AlgebraElement, rho: &Ensemble, tol: f64) -> Result<ExpectationResult> {
        rho.require_normalized()?;
        let mut value = Complex64::new(0.0, 0.0);
        let mut expansions = Vec::with_capacity(rho.terms.len());
        let mut accuracy = 0.0;
        let wnorm = w.norm();
        for (p, seq) in &rho.terms {
            let (x, residual) = self.conjugate(w, seq, tol)?;
            value += x.contract_cartan(&self.w64) * p;
            let wmax = self.w64.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            accuracy += p * (residual + 8.0 * f64::EPSILON * (seq.len() as f64 + 1.0) * wnorm) * wmax.max(1.0);
            expansions.push((*p, x));
        }
        Ok(ExpectationResult { value, cw_expansions: expansions, accuracy_estimate: accuracy })
    }

    pub fn weight_f64(&self) -> &[f64] {
        &self.w64
    }

    pub fn run_lqc(&self, prep: &GateSequence, measure: &Measurement, tol: f64, schedule: &TSchedule) -> Result<LqcResult> {
        let rho = Ensemble::pure(prep.clone());
        match measure {
            Measurement::Element(w) => {
                let r = self.expect_element(w, &rho, tol)?;
                Ok(LqcResult { value: r.value, error_estimate: r.accuracy_estimate })
            }
            Measurement::ExponentialAbs2(h) => {
                let r = expect_exponential_abs2_with(self, h, &rho, schedule)?;
                Ok(LqcResult { value: Complex64::new(r.value, 0.0), error_estimate: r.error_estimate })
            }
        }
    }
}

/// `U^{-1} W U` expanded in the CW basis.
pub fn conjugate_into_cw(
    w: &AlgebraElement,
    prep: &GateSequence,
    spec: &AlgebraSpec,
    rep: &MatrixRep,
    tol: f64,
) -> Result<AlgebraElement> {
    prep.check(spec)?;
    let frame = Frame::<f64>::new(spec, rep)?;
    let wbar = frame.element(w.coeffs());
    let mut u = CMat64::identity(frame.dim());
    for g in &prep.gates {
        u = matrix_exp(&frame.element(g.exponent().coeffs()), f64::EPSILON)?.matmul(&u);
    }
    let conj = u.adjoint().matmul(&wbar).matmul(&u);
    AlgebraElement::from_coeffs(spec, frame.expand_checked(&conj, tol)?)
}

/// `Σ_s p_s ⟨hw| U_s^{-1} W U_s |hw⟩`.
pub fn expect_element(
    w: &AlgebraElement,
    rho: &Ensemble,
    spec: &AlgebraSpec,
    weight: &Weight,
    rep: &MatrixRep,
    tol: f64,
) -> Result<ExpectationResult> {
    Simulator::new(spec, rep, weight)?.expect_element(w, rho, tol)
}

/// `|Σ_s p_s ⟨hw| U_s^{-1} e^H U_s |hw⟩|²`.
pub fn expect_exponential_abs2(
    h: &AlgebraElement,
    rho: &Ensemble,
    spec: &AlgebraSpec,
    weight: &Weight,
    rep: &MatrixRep,
    schedule: &TSchedule,
) -> Result<Abs2Result> {
    let sim = Simulator::new(spec, rep, weight)?;
    expect_exponential_abs2_with(&sim, h, rho, schedule)
}

/// Single pure preparation followed by a measurement.
pub fn run_lqc(
    prep: &GateSequence,
    measure: &Measurement,
    spec: &AlgebraSpec,
    weight: &Weight,
    rep: &MatrixRep,
    tol: f64,
    schedule: &TSchedule,
) -> Result<LqcResult> {
    Simulator::new(spec, rep, weight)?.run_lqc(prep, measure, tol, schedule)
}
