//! Runtime scaling of the engine against the dense oracle on so(2n) circuits.
//!
//! Both sides get the same random circuit and measurement per `n`. The engine time
//! covers building the frame of the 2n-dimensional defining rep, conjugating and
//! contracting. The oracle time covers the dense exponentials and the expectation
//! in the 2^n-dimensional Fock space; building the operator images is excluded.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_so2n, rat_frac, Weight};
use crate::engine::{Ensemble, Measurement, Simulator};
use crate::error::{Error, Result};
use crate::oracle::{build_fermion_oracle, oracle_expect};
use crate::random;
use crate::rep::build_fermionic_defining;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BenchOptions {
    pub ns: Vec<usize>,
    pub depth: usize,
    pub seed: u64,
    /// Repeat each timing until this many seconds have accumulated.
    pub min_seconds: f64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { ns: (4..=10).collect(), depth: 2, seed: 0, min_seconds: 0.2 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    /// Algebra dimension `2n² − n`.
    pub m: usize,
    /// Fock dimension `2^n`.
    pub d: usize,
    pub engine_seconds: f64,
    pub oracle_seconds: f64,
    pub engine_repeats: usize,
    pub oracle_repeats: usize,
    pub abs_diff: f64,
}

/// Least-squares line `y = slope·x + intercept`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in `y`.
    pub rms_residual: f64,
}

pub fn fit_line(xs: &[f64], ys: &[f64]) -> Fit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    // A single size has no slope; NaN serializes as null.
    let slope = if sxx > 0.0 { sxy / sxx } else { f64::NAN };
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(ys).map(|(x, y)| (y - slope * x - intercept).powi(2)).sum();
    Fit { slope, intercept, rms_residual: (rss / n).sqrt() }
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub options: BenchOptions,
    pub rows: Vec<BenchRow>,
    /// `ln t` against `n`.
    pub engine_fit_n: Fit,
    pub oracle_fit_n: Fit,
    /// Oracle slope over engine slope.
    pub slope_ratio: f64,
    /// `ln t_engine` against `ln M`; the slope is the polynomial exponent in `M`.
    pub engine_fit_m: Fit,
    pub fit_note: String,
}

fn time<T>(min_seconds: f64, mut f: impl FnMut() -> Result<T>) -> Result<(f64, usize, T)> {
    let start = Instant::now();
    let mut reps = 0;
    loop {
        let out = f()?;
        reps += 1;
        let el = start.elapsed().as_secs_f64();
        if el >= min_seconds {
            return Ok((el / reps as f64, reps, out));
        }
    }
}

pub fn run_bench(opts: &BenchOptions) -> Result<BenchReport> {
    if opts.ns.is_empty() || opts.ns.iter().any(|&n| n < 2) {
        return Err(Error::InvalidInput("bench needs at least one size, each n >= 2".into()));
    }
    let mut rows = Vec::new();
    for &n in &opts.ns {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (n as u64).wrapping_mul(0x9E37_79B9));
        let spec = build_so2n(n)?;
        let rep = build_fermionic_defining(n)?;
        let w = Weight::new(vec![rat_frac(1, 2); n]);
        let rho = Ensemble::pure(random::prep(&spec, &mut rng, opts.depth));
        let obs = random::element(&spec, &mut rng);
        let (te, re, ve) = time(opts.min_seconds, || {
            let sim = Simulator::new(&spec, &rep, &w)?;
            Ok(sim.expect_element(&obs, &rho, 1e-9)?.value)
        })?;
        let oracle = build_fermion_oracle(n)?;
        let measure = Measurement::Element(obs.clone());
        let (to, ro, vo) = time(opts.min_seconds, || oracle_expect(&oracle, &rho, &measure))?;
        log::info!("bench n = {n}: engine {te:.3e} s, oracle {to:.3e} s");
        rows.push(BenchRow {
            n,
            m: spec.dim(),
            d: 1 << n,
            engine_seconds: te,
            oracle_seconds: to,
            engine_repeats: re,
            oracle_repeats: ro,
            abs_diff: (ve - vo).norm(),
        });
    }
    let ns: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let lm: Vec<f64> = rows.iter().map(|r| (r.m as f64).ln()).collect();
    let le: Vec<f64> = rows.iter().map(|r| r.engine_seconds.ln()).collect();
    let lo: Vec<f64> = rows.iter().map(|r| r.oracle_seconds.ln()).collect();
    let engine_fit_n = fit_line(&ns, &le);
    let oracle_fit_n = fit_line(&ns, &lo);
    let engine_fit_m = fit_line(&lm, &le);
    Ok(BenchReport {
        options: opts.clone(),
        slope_ratio: oracle_fit_n.slope / engine_fit_n.slope,
        rows,
        engine_fit_n,
        oracle_fit_n,
        engine_fit_m,
        fit_note: "least squares on natural-log wall times; the engine exponent in M is the slope of \
                   ln t against ln M and is trusted when its rms residual is below 0.5"
            .to_string(),
    })
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,m,d,engine_seconds,oracle_seconds,abs_diff\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{:.6e},{:.6e},{:.3e}\n",
                r.n, r.m, r.d, r.engine_seconds, r.oracle_seconds, r.abs_diff
            ));
        }
        s
    }
}
