//! Text-in, struct-out entry points shared by the command line and the C interface.

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::algebra::json::spec_from_json;
use crate::algebra::{validate_spec, Violation};
use crate::config::RunConfig;
use crate::engine::{expect_exponential_abs2, CorrelateOptions, Simulator};
use crate::error::Result;
use crate::gmfh::{prepare_fermionic_ground_state, prepare_ground_state, solve_fermionic, solve_gmfh};
use crate::io::{CircuitFile, CircuitMeasure, ExpectOutput, Model, ModelFile, PrepareOutput, SpectrumOutput};

#[derive(Clone, Debug, Serialize)]
pub struct ValidateOutput {
    pub algebra: String,
    pub clean: bool,
    pub violations: Vec<Violation>,
}

pub fn validate(spec_text: &str) -> Result<ValidateOutput> {
    let spec = spec_from_json(spec_text)?;
    let report = validate_spec(&spec)?;
    Ok(ValidateOutput { algebra: spec.name().to_string(), clean: report.is_clean(), violations: report.violations })
}

pub fn expect(circuit_text: &str, cfg: &RunConfig) -> Result<ExpectOutput> {
    let start = Instant::now();
    let c = CircuitFile::parse(circuit_text)?.resolve()?;
    let (value, error_estimate, diagnostics) = match &c.measure {
        CircuitMeasure::Element(w) => {
            let sim = Simulator::new(&c.spec, &c.rep, &c.weight)?;
            let r = sim.expect_element(w, &c.ensemble, cfg.tolerance)?;
            let per_term: Vec<_> = r
                .cw_expansions
                .iter()
                .map(|(p, x)| json!({"p": p, "cartan": x.cartan().iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()}))
                .collect();
            (r.value, r.accuracy_estimate, json!({"kind": "element", "terms": per_term}))
        }
        CircuitMeasure::ExpAbs2(h) => {
            let r = expect_exponential_abs2(h, &c.ensemble, &c.spec, &c.weight, &c.rep, &cfg.t_schedule)?;
            let diag = json!({"kind": "exp_abs2", "traces": r.traces, "amplitudes": r.amplitudes});
            (Complex64::new(r.value, 0.0), r.error_estimate, diag)
        }
        CircuitMeasure::Correlator(ws) => {
            let sim = Simulator::new(&c.spec, &c.rep, &c.weight)?;
            let opts = CorrelateOptions { tol: cfg.tolerance, ..CorrelateOptions::default() };
            let r = sim.correlate(ws, &c.ensemble, &opts)?;
            // Rounding in the conjugated factors dominates.
            let est = 1e-12 * (1.0 + r.value.norm()) * ws.len() as f64;
            (r.value, est, json!({"kind": "correlator", "order": ws.len(), "term_count": r.term_count}))
        }
    };
    Ok(ExpectOutput {
        value: [value.re, value.im],
        error_estimate,
        diagnostics,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

pub fn solve(model_text: &str, cfg: &RunConfig) -> Result<SpectrumOutput> {
    let opts = cfg.gmfh_options();
    let out = match ModelFile::parse(model_text)?.resolve()? {
        Model::Fermionic(fq) => SpectrumOutput::new(solve_fermionic(&fq, &opts)?.sectors),
        Model::Raw { spec, rep, weight, h } => SpectrumOutput::new(vec![solve_gmfh(&h, &spec, &weight, &rep, &opts)?]),
    };
    if out.truncated {
        log::warn!("level listing truncated at {} weights per sector", opts.max_levels);
    }
    Ok(out)
}

pub fn prepare(model_text: &str, cfg: &RunConfig) -> Result<PrepareOutput> {
    let opts = cfg.gmfh_options();
    let (prep, weight) = match ModelFile::parse(model_text)?.resolve()? {
        Model::Fermionic(fq) => prepare_fermionic_ground_state(&fq, &opts)?,
        Model::Raw { spec, rep, weight, h } => (prepare_ground_state(&h, &spec, &weight, &rep, &opts)?, weight),
    };
    let out = PrepareOutput::new(prep, weight);
    for w in &out.warnings {
        log::warn!("{w}");
    }
    Ok(out)
}
