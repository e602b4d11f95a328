use std::collections::HashMap;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::algebra::{simple_roots_for_order, AlgebraSpec, Rational, RootSystem, Weight};
use crate::error::{Error, Result};

/// A weight `λ = w − Σ_l n_l α_l` of the irrep with highest weight `w`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightState {
    /// `n_l` for every positive root of the algebra; only simple roots are used.
    pub lowering_multiset: Vec<u64>,
    #[serde(serialize_with = "crate::io::serialize_rationals")]
    pub weight_values: Vec<Rational>,
}

impl WeightState {
    pub fn values_f64(&self) -> Vec<f64> {
        self.weight_values.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `Σ_k ε_k λ(h_k)`.
    pub fn eval(&self, eps: &[f64]) -> f64 {
        self.values_f64().iter().zip(eps).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Debug)]
pub struct WeightEnumeration {
    pub states: Vec<WeightState>,
    pub truncated: bool,
}

/// Distinct weights of the irrep with highest weight `w`, by root strings down
/// from `w` along the simple roots.
pub fn enumerate_weights(spec: &AlgebraSpec, w: &Weight, max_states: usize) -> Result<WeightEnumeration> {
    w.check(spec)?;
    let rs = RootSystem::standard(spec)?;
    let l = spec.num_pos_roots();
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut states = vec![WeightState { lowering_multiset: vec![0; l], weight_values: w.values().to_vec() }];
    index.insert(w.values().to_vec(), 0);
    let mut layer = vec![0usize];
    let mut truncated = false;
    'outer: while !layer.is_empty() {
        let mut next = Vec::new();
        for &s in &layer {
            for i in 0..rs.num_simple() {
                let beta = rs.simple_vector(i);
                let mu = states[s].weight_values.clone();
                // p = how far the i-string extends above μ
                let mut p = 0i64;
                let mut up: Vec<Rational> = mu.clone();
                loop {
                    up = up.iter().zip(beta).map(|(a, b)| a + b).collect();
                    if index.contains_key(&up) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing = rs.pairing(&mu, i);
                if (Rational::from_integer(p.into()) + pairing).is_positive() {
                    let down: Vec<Rational> = mu.iter().zip(beta).map(|(a, b)| a - b).collect();
                    if index.contains_key(&down) {
                        continue;
                    }
                    if states.len() >= max_states {
                        truncated = true;
                        break 'outer;
                    }
                    let mut n = states[s].lowering_multiset.clone();
                    n[rs.positive_roots()[rs.simple_roots()[i]].index] += 1;
                    index.insert(down.clone(), states.len());
                    next.push(states.len());
                    states.push(WeightState { lowering_multiset: n, weight_values: down });
                }
            }
        }
        layer = next;
    }
    Ok(WeightEnumeration { states, truncated })
}

#[derive(Clone, Debug)]
pub struct MaxWeight {
    pub value: f64,
    /// Image of `q` in the fundamental chamber.
    pub dominant: Vec<f64>,
    /// Simple reflections taking `q` to `dominant`, in order of application.
    pub word: Vec<usize>,
    /// Set when `q` is not regular; the value is unaffected.
    pub perturbed: bool,
}

/// Largest eigenvalue of `q` in the irrep with highest weight `w`.
///
/// `q` is reflected into the fundamental chamber of the standard order; the value
/// is then `w(y q)`. The chamber map is continuous, so a non-regular `q` only
/// sets the flag, it does not shift the value.
pub fn max_weight_eigenvalue(spec: &AlgebraSpec, w: &Weight, q: &[f64]) -> Result<MaxWeight> {
    if q.len() != spec.rank() || w.rank() != spec.rank() {
        return Err(Error::Shape("ordering element or weight has the wrong rank".into()));
    }
    let perturbed = matches!(simple_roots_for_order(spec, q), Err(Error::DegenerateOrder { .. }));
    let rs = RootSystem::standard(spec)?;
    let (dominant, word) = rs.to_dominant_cartan(q);
    Ok(MaxWeight { value: w.eval(&dominant), dominant, word, perturbed })
}

impl WeightEnumeration {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn contains(&self, values: &[Rational]) -> bool {
        self.states.iter().any(|s| s.weight_values.as_slice() == values)
    }
}
