//! Exact spectra and ground-state preparation for Hamiltonians in the algebra.
//!
//! A Hermitian `H` is rotated into the Cartan subalgebra, `U^{-1} H U = Σ ε_k h_k`,
//! after which every eigenvalue in the irrep of highest weight `w` is `μ(ε)` for a
//! weight `μ` of that irrep.

mod fermion;

use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraSpec, RootSystem, Weight, REGULARITY_TOL};
use crate::engine::{Gate, GateSequence};
use crate::error::{Error, Result};
use crate::numerics::jacobi::{jacobi_diagonalize_image, JacobiOptions, JacobiResult, Rotation, DEFAULT_MAX_SWEEPS};
use crate::rep::{enumerate_weights, Frame, MatrixRep, WeightState};

pub use fermion::{
    fock_sector_weights, map_fermionic, map_ising, prepare_fermionic_ground_state, solve_fermionic,
    FermionicQuadratic, FockSpectrum,
};

pub const DEFAULT_MAX_LEVELS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
#[serde(default)]
pub struct GmfhOptions {
    /// Jacobi stopping threshold relative to `max(1, ‖H‖)`.
    pub tol: f64,
    pub max_sweeps: usize,
    pub max_levels: usize,
}

impl Default for GmfhOptions {
    fn default() -> Self {
        GmfhOptions { tol: 1e-13, max_sweeps: DEFAULT_MAX_SWEEPS, max_levels: DEFAULT_MAX_LEVELS }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Level {
    pub state: WeightState,
    pub eigenvalue: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GMFHSpectrum {
    pub weight: Weight,
    /// Cartan coordinates of `U^{-1} H U`.
    pub epsilons: Vec<f64>,
    /// `U` as gates, so that conjugating `H` by it gives `Σ ε_k h_k`.
    pub diagonalizer: GateSequence,
    /// Distinct weights of the irrep with their energies, ascending.
    pub levels: Vec<Level>,
    pub truncated: bool,
    /// Always false: weight multiplicities are not computed.
    pub multiplicity_known: bool,
    pub jacobi_residual: f64,
    pub sweeps: usize,
}

impl GMFHSpectrum {
    pub fn min_eigenvalue(&self) -> Option<f64> {
        self.levels.first().map(|l| l.eigenvalue)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.eigenvalue).collect()
    }
}

/// Outcome of ground-state synthesis.
#[derive(Clone, Debug, Serialize)]
pub struct GroundStatePrep {
    /// `U` with `U|hw⟩` a ground state.
    pub gates: GateSequence,
    /// `−w(dom(−ε))`, the smallest eigenvalue.
    pub energy: f64,
    /// Cartan element `U^{-1} H U`.
    pub diagonal: Vec<f64>,
    /// The ground space is larger than the orbit of `|hw⟩`; one representative is returned.
    pub degenerate: bool,
    /// `−ε` lies on a wall; the chamber image is still well defined.
    pub perturbed: bool,
    pub jacobi_sweeps: usize,
}

impl GroundStatePrep {
    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }
}

/// Jacobi-diagonalizes a Hermitian element.
pub fn diagonalize(h: &AlgebraElement, spec: &AlgebraSpec, rep: &MatrixRep, opts: &GmfhOptions) -> Result<JacobiResult<f64>> {
    if h.dim() != spec.dim() {
        return Err(Error::Shape("Hamiltonian has the wrong dimension".into()));
    }
    if !h.is_hermitian(1e-10 * (1.0 + h.norm())) {
        return Err(Error::InvalidInput("Hamiltonian is not Hermitian".into()));
    }
    let frame = Frame::<f64>::new(spec, rep)?;
    let img = frame.element(h.coeffs());
    let jopts = JacobiOptions { tol: opts.tol, max_sweeps: opts.max_sweeps, relative: true };
    jacobi_diagonalize_image(spec, &frame, &img, jopts)
}

/// Gates realizing `U = e^{K_1} ⋯ e^{K_m}`: the last rotation acts first.
pub fn rotations_to_gates(spec: &AlgebraSpec, rotations: &[Rotation]) -> Result<GateSequence> {
    rotations.iter().rev().map(|r| Gate::new(r.generator(spec), 1.0)).collect::<Result<Vec<_>>>().map(GateSequence::new)
}

/// Energies `μ(ε)` over the weights of the irrep, ascending.
pub fn levels_for(spec: &AlgebraSpec, w: &Weight, eps: &[f64], max_levels: usize) -> Result<(Vec<Level>, bool)> {
    let en = enumerate_weights(spec, w, max_levels)?;
    let mut levels: Vec<Level> =
        en.states.into_iter().map(|s| Level { eigenvalue: s.eval(eps), state: s }).collect();
    levels.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue));
    if en.truncated {
        log::warn!("weight enumeration truncated at {max_levels} levels");
    }
    Ok((levels, en.truncated))
}

pub fn solve_gmfh(
    h: &AlgebraElement,
    spec: &AlgebraSpec,
    w: &Weight,
    rep: &MatrixRep,
    opts: &GmfhOptions,
) -> Result<GMFHSpectrum> {
    w.check(spec)?;
    let jr = diagonalize(h, spec, rep, opts)?;
    spectrum_from(spec, w, &jr, opts)
}

fn spectrum_from(spec: &AlgebraSpec, w: &Weight, jr: &JacobiResult<f64>, opts: &GmfhOptions) -> Result<GMFHSpectrum> {
    let (levels, truncated) = levels_for(spec, w, &jr.diagonal, opts.max_levels)?;
    Ok(GMFHSpectrum {
        weight: w.clone(),
        epsilons: jr.diagonal.clone(),
        diagonalizer: rotations_to_gates(spec, &jr.rotations)?,
        levels,
        truncated,
        multiplicity_known: false,
        jacobi_residual: jr.residual,
        sweeps: jr.sweeps,
    })
}

/// Weyl reflection `exp(π/2 (E_i − F_i))` for simple root `i` as a gate.
fn reflection_gate(spec: &AlgebraSpec, rs: &RootSystem, i: usize) -> Result<Gate> {
    let root = rs.simple(i).index;
    let rot = Rotation { root, theta: std::f64::consts::FRAC_PI_2, phi: 0.0 };
    Gate::new(rot.generator(spec), 1.0)
}

/// Ground-state synthesis from a finished diagonalization.
///
/// Sign bookkeeping: `|hw⟩` maximizes `w(q)` over the Weyl orbit of a dominant
/// `q`, so the minimum of `H_D` is reached by moving `−H_D` into the fundamental
/// chamber. With `dom(−ε) = s_{i_m} ⋯ s_{i_1}(−ε)` and `R = R_{i_1} ⋯ R_{i_m}`,
/// `(U R)^{-1} H (U R) = −dom(−ε)` and `⟨hw|…|hw⟩ = −w(dom(−ε))`.
fn ground_state_from(spec: &AlgebraSpec, w: &Weight, jr: &JacobiResult<f64>) -> Result<GroundStatePrep> {
    let rs = RootSystem::standard(spec)?;
    let neg: Vec<f64> = jr.diagonal.iter().map(|x| -x).collect();
    let perturbed = matches!(
        crate::algebra::simple_roots_for_order(spec, &neg),
        Err(Error::DegenerateOrder { .. })
    );
    let (dom, word) = rs.to_dominant_cartan(&neg);
    let scale = dom.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let wv = w.values();
    let degenerate = (0..rs.num_simple()).any(|i| {
        rs.eval_simple(i, &dom).abs() < REGULARITY_TOL * scale
            && rs.pairing(wv, i) > crate::algebra::rat(0)
    });
    if degenerate {
        log::warn!("ground space is degenerate; returning one representative");
    }
    let mut gates: Vec<Gate> = word.iter().rev().map(|&i| reflection_gate(spec, &rs, i)).collect::<Result<_>>()?;
    gates.extend(rotations_to_gates(spec, &jr.rotations)?.gates);
    Ok(GroundStatePrep {
        gates: GateSequence::new(gates),
        energy: -w.eval(&dom),
        diagonal: dom.iter().map(|x| -x).collect(),
        degenerate,
        perturbed,
        jacobi_sweeps: jr.sweeps,
    })
}

pub fn prepare_ground_state(
    h: &AlgebraElement,
    spec: &AlgebraSpec,
    w: &Weight,
    rep: &MatrixRep,
    opts: &GmfhOptions,
) -> Result<GroundStatePrep> {
    w.check(spec)?;
    let jr = diagonalize(h, spec, rep, opts)?;
    ground_state_from(spec, w, &jr)
}
