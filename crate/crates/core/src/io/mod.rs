//! File formats shared by the command line and the C interface.
//!
//! Complex numbers are written as `[re, im]`; a bare number is read as real.

use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::algebra::json::{AlgebraRef, RationalRepr};
use crate::algebra::{AlgebraElement, AlgebraSpec, Rational, Weight};
use crate::engine::{Ensemble, Gate, GateSequence};
use crate::error::{Error, Result};
use crate::gmfh::{FermionicQuadratic, GMFHSpectrum, GroundStatePrep};
use crate::rep::{default_rep, MatrixRep, MatrixRepJson};

pub fn serialize_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(RationalRepr::from_rational))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRepr {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexRepr {
    pub fn value(&self) -> Complex64 {
        match *self {
            ComplexRepr::Real(x) => Complex64::new(x, 0.0),
            ComplexRepr::Pair([re, im]) => Complex64::new(re, im),
        }
    }

    pub fn from_value(z: Complex64) -> Self {
        ComplexRepr::Pair([z.re, z.im])
    }
}

pub fn element_from_json(spec: &AlgebraSpec, coeffs: &[ComplexRepr]) -> Result<AlgebraElement> {
    if coeffs.len() != spec.dim() {
        return Err(Error::Shape(format!("expected {} coefficients, got {}", spec.dim(), coeffs.len())));
    }
    let c: Vec<Complex64> = coeffs.iter().map(ComplexRepr::value).collect();
    if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidInput("non-finite coefficient".into()));
    }
    AlgebraElement::from_coeffs(spec, c)
}

pub fn element_to_json(x: &AlgebraElement) -> Vec<ComplexRepr> {
    x.coeffs().iter().map(|z| ComplexRepr::from_value(*z)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateJson {
    pub coeffs: Vec<ComplexRepr>,
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub p: f64,
    #[serde(default)]
    pub gates: Vec<GateJson>,
}

pub fn gates_from_json(spec: &AlgebraSpec, gates: &[GateJson]) -> Result<GateSequence> {
    gates
        .iter()
        .map(|g| Gate::new(element_from_json(spec, &g.coeffs)?, g.t))
        .collect::<Result<Vec<_>>>()
        .map(GateSequence::new)
}

pub fn gates_to_json(seq: &GateSequence) -> Vec<GateJson> {
    seq.gates.iter().map(|g| GateJson { coeffs: element_to_json(&g.generator), t: g.t }).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureJson {
    Element { coeffs: Vec<ComplexRepr> },
    ExpAbs2 { coeffs: Vec<ComplexRepr> },
    Correlator { factors: Vec<Vec<ComplexRepr>> },
}

/// Circuit or ensemble file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitFile {
    pub algebra: AlgebraRef,
    pub weight: Weight,
    /// Defaults to the smallest built-in faithful rep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<MatrixRepJson>,
    pub ensemble: Vec<TermJson>,
    pub measure: MeasureJson,
}

#[derive(Clone, Debug)]
pub enum CircuitMeasure {
    Element(AlgebraElement),
    ExpAbs2(AlgebraElement),
    Correlator(Vec<AlgebraElement>),
}

/// A circuit file with everything resolved against its algebra.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub spec: AlgebraSpec,
    pub rep: MatrixRep,
    pub weight: Weight,
    pub ensemble: Ensemble,
    pub measure: CircuitMeasure,
}

fn resolve_rep(spec: &AlgebraSpec, rep: &Option<MatrixRepJson>) -> Result<MatrixRep> {
    match rep {
        Some(r) => r.to_rep(spec),
        None => default_rep(spec),
    }
}

impl CircuitFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn resolve(&self) -> Result<Circuit> {
        let spec = self.algebra.resolve()?;
        self.weight.check(&spec)?;
        let rep = resolve_rep(&spec, &self.rep)?;
        let terms = self
            .ensemble
            .iter()
            .map(|t| Ok((t.p, gates_from_json(&spec, &t.gates)?)))
            .collect::<Result<Vec<_>>>()?;
        let ensemble = Ensemble::new(terms)?;
        let measure = match &self.measure {
            MeasureJson::Element { coeffs } => CircuitMeasure::Element(element_from_json(&spec, coeffs)?),
            MeasureJson::ExpAbs2 { coeffs } => CircuitMeasure::ExpAbs2(element_from_json(&spec, coeffs)?),
            MeasureJson::Correlator { factors } => CircuitMeasure::Correlator(
                factors.iter().map(|f| element_from_json(&spec, f)).collect::<Result<_>>()?,
            ),
        };
        Ok(Circuit { spec, rep, weight: self.weight.clone(), ensemble, measure })
    }
}

/// Model file for the spectrum and ground-state commands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelFile {
    FermionicQuadratic {
        t: Vec<Vec<ComplexRepr>>,
        #[serde(default)]
        u: Option<Vec<Vec<ComplexRepr>>>,
    },
    Ising {
        n_sites: usize,
        g: f64,
        #[serde(default)]
        periodic: bool,
    },
    RawElement {
        algebra: AlgebraRef,
        weight: Weight,
        coeffs: Vec<ComplexRepr>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rep: Option<MatrixRepJson>,
    },
}

#[derive(Clone, Debug)]
pub enum Model {
    Fermionic(FermionicQuadratic),
    Raw { spec: AlgebraSpec, rep: MatrixRep, weight: Weight, h: AlgebraElement },
}

fn matrix(rows: &[Vec<ComplexRepr>]) -> Vec<Vec<Complex64>> {
    rows.iter().map(|r| r.iter().map(ComplexRepr::value).collect()).collect()
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn resolve(&self) -> Result<Model> {
        match self {
            ModelFile::FermionicQuadratic { t, u } => {
                let t = matrix(t);
                let n = t.len();
                let u = match u {
                    Some(u) => matrix(u),
                    None => vec![vec![Complex64::new(0.0, 0.0); n]; n],
                };
                Ok(Model::Fermionic(FermionicQuadratic::new(t, u)?))
            }
            ModelFile::Ising { n_sites, g, periodic } => {
                Ok(Model::Fermionic(crate::gmfh::map_ising(*n_sites, *g, *periodic)?))
            }
            ModelFile::RawElement { algebra, weight, coeffs, rep } => {
                let spec = algebra.resolve()?;
                weight.check(&spec)?;
                let rep = resolve_rep(&spec, rep)?;
                let h = element_from_json(&spec, coeffs)?;
                Ok(Model::Raw { spec, rep, weight: weight.clone(), h })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectOutput {
    /// `[re, im]`.
    pub value: [f64; 2],
    pub error_estimate: f64,
    pub diagnostics: serde_json::Value,
    /// Wall time; excluded from reproducibility comparisons.
    pub timing_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumOutput {
    /// Distinct energies over all sectors, ascending.
    pub eigenvalues: Vec<f64>,
    pub sectors: Vec<GMFHSpectrum>,
    pub truncated: bool,
    pub multiplicity_known: bool,
}

impl SpectrumOutput {
    pub fn new(sectors: Vec<GMFHSpectrum>) -> Self {
        let mut eigenvalues: Vec<f64> = sectors.iter().flat_map(|s| s.eigenvalues()).collect();
        eigenvalues.sort_by(f64::total_cmp);
        eigenvalues.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        let truncated = sectors.iter().any(|s| s.truncated);
        SpectrumOutput { eigenvalues, sectors, truncated, multiplicity_known: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrepareOutput {
    /// Highest weight of the sector holding the ground state.
    pub weight: Weight,
    #[serde(flatten)]
    pub prep: GroundStatePrep,
    pub gate_count: usize,
    pub warnings: Vec<String>,
}

impl PrepareOutput {
    pub fn new(prep: GroundStatePrep, weight: Weight) -> Self {
        let mut warnings = Vec::new();
        if prep.degenerate {
            warnings.push("degenerate ground space: one representative state returned".to_string());
        }
        if prep.perturbed {
            warnings.push("diagonal element not regular: it lies on a Weyl chamber wall".to_string());
        }
        PrepareOutput { weight, gate_count: prep.gates.len(), prep, warnings }
    }
}
