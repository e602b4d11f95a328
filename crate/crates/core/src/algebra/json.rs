//! JSON form of algebra specs.
//!
//! Rationals are `"p/q"` strings (plain integers are also accepted). Root indices
//! are 0-based. `result_sign` is optional and, when absent, is derived by looking up
//! `α_j ± α_k` among the roots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{build_so2n, build_su2, AlgebraSpec, Rational, Sign, StructureEntry};
use crate::error::{Error, Result};

/// A rational as it may appear in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Float(f64),
    Str(String),
}

impl RationalRepr {
    pub fn from_rational(q: &Rational) -> Self {
        if q.is_integer() {
            if let Ok(v) = i64::try_from(q.to_integer()) {
                return RationalRepr::Int(v);
            }
        }
        RationalRepr::Str(q.to_string())
    }

    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalRepr::Int(v) => Ok(Rational::from_integer((*v).into())),
            RationalRepr::Float(f) => {
                let q = Rational::from_float(*f).ok_or_else(|| Error::Parse(format!("non-finite number {f}")))?;
                if q.denom() > &BigInt::from(1 << 20) {
                    return Err(Error::Parse(format!("{f} is not a short binary fraction; write it as a \"p/q\" string")));
                }
                Ok(q)
            }
            RationalRepr::Str(s) => parse_rational(s),
        }
    }
}

/// Parses `"p"` or `"p/q"`. Non-normalized input is normalized with a warning.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    if den.is_negative() || !num.gcd(&den).is_one() {
        log::warn!("rational {s:?} is not in lowest terms with positive denominator; normalizing");
    }
    Ok(Rational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureEntryJson {
    pub j: usize,
    pub k: usize,
    pub sign: Sign,
    pub coeff: RationalRepr,
    pub result_root: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result_sign: Option<Sign>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecJson {
    pub name: String,
    pub rank: usize,
    pub num_pos_roots: usize,
    pub a: Vec<Vec<RationalRepr>>,
    pub b: Vec<Vec<RationalRepr>>,
    #[serde(default)]
    pub c: Vec<StructureEntryJson>,
}

fn matrix(m: &[Vec<RationalRepr>]) -> Result<Vec<Vec<Rational>>> {
    m.iter().map(|row| row.iter().map(RationalRepr::to_rational).collect()).collect()
}

impl AlgebraSpecJson {
    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        let conv = |m: &[Vec<Rational>]| -> Vec<Vec<RationalRepr>> {
            m.iter().map(|row| row.iter().map(RationalRepr::from_rational).collect()).collect()
        };
        AlgebraSpecJson {
            name: spec.name().to_string(),
            rank: spec.rank(),
            num_pos_roots: spec.num_pos_roots(),
            a: conv(spec.a()),
            b: conv(spec.b()),
            c: spec
                .c()
                .iter()
                .map(|(&(j, k, sign), e)| StructureEntryJson {
                    j,
                    k,
                    sign,
                    coeff: RationalRepr::from_rational(&e.coeff),
                    result_root: e.target,
                    result_sign: Some(e.target_sign),
                })
                .collect(),
        }
    }

    pub fn to_spec(&self) -> Result<AlgebraSpec> {
        let a = matrix(&self.a)?;
        let b = matrix(&self.b)?;
        if a.len() != self.num_pos_roots {
            return Err(Error::Shape(format!("a has {} rows, num_pos_roots is {}", a.len(), self.num_pos_roots)));
        }
        if let Some(row) = a.iter().find(|r| r.len() != self.rank) {
            return Err(Error::Shape(format!("a row has {} entries, rank is {}", row.len(), self.rank)));
        }
        let mut c = BTreeMap::new();
        for e in &self.c {
            if e.j >= self.num_pos_roots || e.k >= self.num_pos_roots || e.result_root >= self.num_pos_roots {
                return Err(Error::Shape(format!("c entry ({}, {}) references a root out of range", e.j, e.k)));
            }
            let target_sign = match e.result_sign {
                Some(s) => s,
                None => {
                    let sum: Vec<Rational> = a[e.j]
                        .iter()
                        .zip(&a[e.k])
                        .map(|(x, y)| x + Rational::from_integer(e.sign.factor().into()) * y)
                        .collect();
                    if sum == a[e.result_root] {
                        Sign::Plus
                    } else if sum.iter().zip(&a[e.result_root]).all(|(x, y)| *x == -y.clone()) {
                        Sign::Minus
                    } else {
                        return Err(Error::InvalidSpec(format!(
                            "c entry ({}, {}, {:?}): α_j ± α_k is not ±α_{}",
                            e.j, e.k, e.sign, e.result_root
                        )));
                    }
                }
            };
            let key = (e.j, e.k, e.sign);
            let entry = StructureEntry { coeff: e.coeff.to_rational()?, target: e.result_root, target_sign };
            if c.insert(key, entry).is_some() {
                return Err(Error::InvalidSpec(format!("duplicate c entry ({}, {}, {:?})", e.j, e.k, e.sign)));
            }
        }
        AlgebraSpec::new(self.name.clone(), self.rank, a, b, c)
    }
}

pub fn spec_from_json(text: &str) -> Result<AlgebraSpec> {
    let parsed: AlgebraSpecJson = serde_json::from_str(text)?;
    parsed.to_spec()
}

pub fn spec_to_json(spec: &AlgebraSpec) -> String {
    serde_json::to_string_pretty(&AlgebraSpecJson::from_spec(spec)).expect("spec serializes")
}

/// Resolves built-in names `su(2)` and `so(2N)`.
pub fn builtin_by_name(name: &str) -> Result<AlgebraSpec> {
    let n = name.trim().to_ascii_lowercase().replace(' ', "");
    if n == "su(2)" || n == "su2" {
        return Ok(build_su2());
    }
    let inner = n
        .strip_prefix("so(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| n.strip_prefix("so"))
        .ok_or_else(|| Error::Parse(format!("unknown algebra {name:?}; expected su(2), so(2N) or an inline spec")))?;
    let two_n: usize = inner.parse().map_err(|_| Error::Parse(format!("bad so(2N) dimension in {name:?}")))?;
    if two_n % 2 != 0 {
        return Err(Error::Parse(format!("{name:?}: only even orthogonal algebras so(2N) are built in")));
    }
    build_so2n(two_n / 2)
}

/// Algebra given by built-in name or inline spec.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Name(String),
    Inline(AlgebraSpecJson),
}

impl AlgebraRef {
    pub fn resolve(&self) -> Result<AlgebraSpec> {
        match self {
            AlgebraRef::Name(n) => builtin_by_name(n),
            AlgebraRef::Inline(s) => s.to_spec(),
        }
    }
}
