//! Fixed-order correlators `⟨W¹ ⋯ W^q⟩` by normal ordering against `|hw⟩`.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{Ensemble, Simulator};
use crate::algebra::{AlgebraElement, AlgebraSpec, Basis, Sign, Weight};
use crate::error::{Error, Result};
use crate::rep::MatrixRep;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CorrelateOptions {
    pub max_order: usize,
    /// Abort once this many monomials have been generated.
    pub term_limit: u64,
    /// Expansion residual tolerance for the conjugated factors.
    pub tol: f64,
}

impl Default for CorrelateOptions {
    fn default() -> Self {
        CorrelateOptions { max_order: 6, term_limit: 10_000_000, tol: 1e-8 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrelateResult {
    pub value: Complex64,
    /// Monomials generated by the product expansion plus distinct words reduced.
    pub term_count: u64,
}

/// `⟨hw| b_{u1} ⋯ b_{um} |hw⟩` for basis words, memoized across calls.
struct WordEvaluator<'a> {
    spec: &'a AlgebraSpec,
    w: &'a [f64],
    roots: Vec<Vec<f64>>,
    memo: HashMap<Vec<u16>, f64>,
}

impl<'a> WordEvaluator<'a> {
    fn new(spec: &'a AlgebraSpec, w: &'a [f64]) -> Self {
        let roots = (0..spec.dim())
            .map(|u| match spec.basis(u) {
                Basis::Cartan(_) => vec![0.0; spec.rank()],
                Basis::Root(j, s) => spec
                    .root_vector(j)
                    .iter()
                    .map(|x| x.to_f64().unwrap_or(f64::NAN) * s.factor() as f64)
                    .collect(),
            })
            .collect();
        WordEvaluator { spec, w, roots, memo: HashMap::new() }
    }

    fn zero_weight(&self, word: &[u16]) -> bool {
        (0..self.spec.rank()).all(|k| word.iter().map(|&u| self.roots[u as usize][k]).sum::<f64>().abs() < 1e-9)
    }

    fn value(&mut self, word: &[u16]) -> f64 {
        if word.is_empty() {
            return 1.0;
        }
        if let Some(v) = self.memo.get(word) {
            return *v;
        }
        let v = self.reduce(word);
        self.memo.insert(word.to_vec(), v);
        v
    }

    fn reduce(&mut self, word: &[u16]) -> f64 {
        if !self.zero_weight(word) {
            return 0.0;
        }
        let n = word.len();
        match self.spec.basis(word[n - 1] as usize) {
            Basis::Root(_, Sign::Plus) => return 0.0,
            Basis::Cartan(k) => return self.w[k] * self.value(&word[..n - 1]),
            Basis::Root(_, Sign::Minus) => {}
        }
        match self.spec.basis(word[0] as usize) {
            Basis::Root(_, Sign::Minus) => return 0.0,
            Basis::Cartan(k) => return self.w[k] * self.value(&word[1..]),
            Basis::Root(_, Sign::Plus) => {}
        }
        // First letter raises, last lowers: push the rightmost raising letter
        // one step right, e+ Y = Y e+ + [e+, Y].
        let p = (0..n)
            .rev()
            .find(|&i| matches!(self.spec.basis(word[i] as usize), Basis::Root(_, Sign::Plus)))
            .expect("first letter raises");
        let mut swapped = word.to_vec();
        swapped.swap(p, p + 1);
        let mut total = self.value(&swapped);
        let bracket = self.spec.basis_bracket_f64(word[p] as usize, word[p + 1] as usize).clone();
        for (v, c) in bracket {
            let mut shorter = Vec::with_capacity(n - 1);
            shorter.extend_from_slice(&word[..p]);
            shorter.push(v as u16);
            shorter.extend_from_slice(&word[p + 2..]);
            total += c * self.value(&shorter);
        }
        total
    }
}

impl<'a> Simulator<'a> {
    pub fn correlate(&self, ws: &[AlgebraElement], rho: &Ensemble, opts: &CorrelateOptions) -> Result<CorrelateResult> {
        rho.require_normalized()?;
        let q = ws.len();
        if q == 0 {
            return Err(Error::InvalidInput("correlator needs at least one factor".into()));
        }
        if q > opts.max_order {
            return Err(Error::OrderCapExceeded { q, cap: opts.max_order });
        }
        if self.spec.dim() > u16::MAX as usize {
            return Err(Error::InvalidInput("algebra too large for word encoding".into()));
        }
        let mut eval = WordEvaluator::new(self.spec, self.weight_f64());
        let mut value = Complex64::new(0.0, 0.0);
        let mut monomials: u64 = 0;
        for (p, seq) in &rho.terms {
            let factors: Vec<Vec<(u16, Complex64)>> = ws
                .iter()
                .map(|w| {
                    let (x, _) = self.conjugate(w, seq, opts.tol)?;
                    let cut = 1e-15 * (1.0 + x.norm());
                    Ok(x.coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| c.norm() > cut)
                        .map(|(u, c)| (u as u16, *c))
                        .collect())
                })
                .collect::<Result<_>>()?;
            let count: u64 = factors.iter().map(|f| f.len() as u64).product();
            if monomials + count > opts.term_limit {
                return Err(Error::TermLimit { terms: monomials + count, limit: opts.term_limit });
            }
            monomials += count;
            if count == 0 {
                continue;
            }
            // Odometer over the factor expansions, first factor slowest.
            let mut idx = vec![0usize; q];
            let mut word = vec![0u16; q];
            let mut term = Complex64::new(0.0, 0.0);
            loop {
                let mut c = Complex64::new(1.0, 0.0);
                for (i, f) in factors.iter().enumerate() {
                    word[i] = f[idx[i]].0;
                    c *= f[idx[i]].1;
                }
                let v = eval.value(&word);
                if v != 0.0 {
                    term += c * v;
                }
                let mut k = q;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < factors[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
            value += term * p;
            if monomials + eval.memo.len() as u64 > opts.term_limit {
                return Err(Error::TermLimit { terms: monomials + eval.memo.len() as u64, limit: opts.term_limit });
            }
        }
        Ok(CorrelateResult { value, term_count: monomials + eval.memo.len() as u64 })
    }
}

/// `Σ_s p_s ⟨hw| U_s^{-1} W¹ ⋯ W^q U_s |hw⟩`.
pub fn correlate(
    ws: &[AlgebraElement],
    rho: &Ensemble,
    spec: &AlgebraSpec,
    weight: &Weight,
    rep: &MatrixRep,
    tol: f64,
) -> Result<CorrelateResult> {
    let opts = CorrelateOptions { tol, ..CorrelateOptions::default() };
    Simulator::new(spec, rep, weight)?.correlate(ws, rho, &opts)
}
