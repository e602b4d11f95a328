use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};

const COMPACT_TOL: f64 = 1e-10;

/// Gate `e^{tX}` with `X` in the compact real form.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Gate {
    #[serde(rename = "coeffs")]
    pub generator: AlgebraElement,
    pub t: f64,
}

impl Gate {
    pub fn new(generator: AlgebraElement, t: f64) -> Result<Self> {
        if !t.is_finite() {
            return Err(Error::InvalidInput(format!("gate duration {t} is not finite")));
        }
        if !generator.is_compact(COMPACT_TOL * (1.0 + generator.norm())) {
            return Err(Error::InvalidInput("gate generator is not in the compact real form".into()));
        }
        Ok(Gate { generator, t })
    }

    /// `tX`
    pub fn exponent(&self) -> AlgebraElement {
        self.generator.scale_real(self.t)
    }

    pub fn inverse(&self) -> Gate {
        Gate { generator: self.generator.clone(), t: -self.t }
    }
}

/// Gates `[g_1, …, g_n]` prepare `U|hw⟩` with `U = e^{t_n X_n} ⋯ e^{t_1 X_1}`:
/// the first gate acts first.
#[derive(Clone, Debug, Default, PartialEq, serde::Serialize)]
#[serde(transparent)]
pub struct GateSequence {
    pub gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new(gates: Vec<Gate>) -> Self {
        GateSequence { gates }
    }

    pub fn empty() -> Self {
        GateSequence { gates: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    /// Sequence acting as `U^{-1}`.
    pub fn inverse(&self) -> GateSequence {
        GateSequence { gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GateSequence) -> GateSequence {
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        GateSequence { gates }
    }

    pub fn check(&self, spec: &AlgebraSpec) -> Result<()> {
        for g in &self.gates {
            if g.generator.dim() != spec.dim() {
                return Err(Error::Shape(format!(
                    "gate generator has {} coefficients, algebra has dimension {}",
                    g.generator.dim(),
                    spec.dim()
                )));
            }
        }
        Ok(())
    }
}

/// Mixture `ρ = Σ_s p_s U_s|hw⟩⟨hw|U_s†`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    pub terms: Vec<(f64, GateSequence)>,
    pub normalized: bool,
}

pub const NORMALIZATION_TOL: f64 = 1e-12;

impl Ensemble {
    pub fn new(terms: Vec<(f64, GateSequence)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("ensemble has no terms".into()));
        }
        if let Some((p, _)) = terms.iter().find(|(p, _)| !(*p > 0.0 && *p <= 1.0)) {
            return Err(Error::InvalidInput(format!("probability {p} is outside (0, 1]")));
        }
        let total: f64 = terms.iter().map(|(p, _)| p).sum();
        Ok(Ensemble { normalized: (total - 1.0).abs() <= NORMALIZATION_TOL, terms })
    }

    pub fn pure(seq: GateSequence) -> Self {
        Ensemble { terms: vec![(1.0, seq)], normalized: true }
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.normalized {
            Ok(())
        } else {
            let total: f64 = self.terms.iter().map(|(p, _)| p).sum();
            Err(Error::InvalidInput(format!("ensemble probabilities sum to {total}, not 1")))
        }
    }
}

/// What an LQC run measures.
#[derive(Clone, Debug, PartialEq)]
pub enum Measurement {
    /// `⟨W⟩`
    Element(AlgebraElement),
    /// `|⟨e^H⟩|²`
    ExponentialAbs2(AlgebraElement),
}
