use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::json::RationalRepr;
use super::{rat, AlgebraSpec, Rational, RootSystem};
use crate::error::{Error, Result};

/// Highest weight of an irrep, given by its values `w(h_k)`.
///
/// Values are rational so that spinor weights of so(2N), which are half-integers
/// in the number-operator Cartan basis, are represented exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    values: Vec<Rational>,
}

impl Weight {
    pub fn new(values: Vec<Rational>) -> Self {
        Weight { values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Weight { values: values.iter().map(|v| rat(*v)).collect() }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// `ω = Σ_k w(h_k)²`.
    pub fn omega(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, v| acc + v * v)
    }

    pub fn omega_f64(&self) -> f64 {
        self.omega().to_f64().unwrap_or(f64::NAN)
    }

    /// `Σ_k w(h_k) q_k`.
    pub fn eval(&self, q: &[f64]) -> f64 {
        self.values_f64().iter().zip(q).map(|(w, x)| w * x).sum()
    }

    /// Checks the rank and that the weight is dominant integral for the algebra's own
    /// positive roots.
    pub fn check(&self, spec: &AlgebraSpec) -> Result<()> {
        if self.values.len() != spec.rank() {
            return Err(Error::Shape(format!("weight has {} values, rank is {}", self.values.len(), spec.rank())));
        }
        RootSystem::standard(spec)?.check_dominant_integral(&self.values)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<RationalRepr> = self.values.iter().map(RationalRepr::from_rational).collect();
        reprs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let reprs = Vec::<RationalRepr>::deserialize(d)?;
        let values = reprs
            .iter()
            .map(|r| r.to_rational().map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Weight { values })
    }
}
