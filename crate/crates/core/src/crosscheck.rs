//! Randomized engine-versus-oracle comparison behind the `oracle-check` command.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{build_so2n, build_su2, AlgebraSpec};
use crate::config::RunConfig;
use crate::engine::{expect_exponential_abs2, CorrelateOptions, Ensemble, Measurement, Simulator};
use crate::error::{Error, Result};
use crate::oracle::{build_fermion_oracle, build_spin_oracle, oracle_correlate, oracle_expect, DenseOperatorSet};
use crate::random;
use crate::rep::{build_fermionic_defining, build_su2_defining, MatrixRep};

#[derive(Clone, Debug, Serialize)]
pub struct CheckStat {
    pub cases: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub failures: usize,
}

impl CheckStat {
    fn new(tolerance: f64) -> Self {
        CheckStat { cases: 0, max_error: 0.0, tolerance, failures: 0 }
    }

    fn record(&mut self, err: f64, bound: f64) {
        self.cases += 1;
        self.max_error = self.max_error.max(err);
        if !(err <= bound) {
            self.failures += 1;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub algebra: String,
    pub oracle_dim: usize,
    pub element: CheckStat,
    pub correlator: CheckStat,
    pub exp_abs2: CheckStat,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.element.failures + self.correlator.failures + self.exp_abs2.failures == 0
    }
}

/// `su(2)` uses the spin `two_j / 2` irrep; `so(2N)` the Fock space of `N` modes.
pub fn oracle_setup(algebra: &str, two_j: usize) -> Result<(AlgebraSpec, MatrixRep, DenseOperatorSet)> {
    if algebra == "su(2)" {
        return Ok((build_su2(), build_su2_defining(), build_spin_oracle(two_j)?));
    }
    let n = algebra
        .strip_prefix("so(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.parse::<usize>().ok())
        .filter(|m| m % 2 == 0 && *m >= 4)
        .map(|m| m / 2)
        .ok_or_else(|| Error::InvalidInput(format!("oracle available for su(2) and so(2N), not {algebra}")))?;
    Ok((build_so2n(n)?, build_fermionic_defining(n)?, build_fermion_oracle(n)?))
}

pub fn oracle_check(algebra: &str, two_j: usize, cases: usize, config: &RunConfig) -> Result<CrossCheckReport> {
    let (spec, rep, oracle) = oracle_setup(algebra, two_j)?;
    let sim = Simulator::new(&spec, &rep, oracle.weight())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut element = CheckStat::new(1e-10);
    let mut correlator = CheckStat::new(1e-8);
    let mut exp_abs2 = CheckStat::new(1e-6);
    let copts = CorrelateOptions { tol: config.tolerance.max(1e-9), ..CorrelateOptions::default() };
    for case in 0..cases {
        let rho = random::ensemble(&spec, &mut rng, 3, 3);
        let w = random::element(&spec, &mut rng);
        let e = sim.expect_element(&w, &rho, config.tolerance)?.value;
        let o = oracle_expect(&oracle, &rho, &Measurement::Element(w.clone()))?;
        element.record((e - o).norm(), 1e-10 * (1.0 + o.norm()));

        let ws = [w.clone(), random::element(&spec, &mut rng)];
        let e = sim.correlate(&ws, &rho, &copts)?.value;
        let o = oracle_correlate(&oracle, &ws, &rho)?;
        correlator.record((e - o).norm(), 1e-8);

        // The projector limit is the expensive check; run it on a quarter of the cases.
        if case % 4 == 0 {
            let h = if case % 8 == 0 { random::compact(&spec, &mut rng) } else { random::element(&spec, &mut rng).scale_real(0.5) };
            let pure = Ensemble::pure(rho.terms[0].1.clone());
            let e = expect_exponential_abs2(&h, &pure, &spec, oracle.weight(), &rep, &config.t_schedule)?.value;
            let o = oracle_expect(&oracle, &pure, &Measurement::ExponentialAbs2(h))?.re;
            exp_abs2.record((e - o).abs(), 1e-6);
        }
    }
    Ok(CrossCheckReport { algebra: spec.name().to_string(), oracle_dim: oracle.dim(), element, correlator, exp_abs2 })
}
