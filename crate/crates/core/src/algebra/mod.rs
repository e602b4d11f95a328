//! Abstract Cartan–Weyl Lie algebras with exact rational structure constants.
//!
//! Basis order everywhere in the crate is `h_1..h_r, e+_1..e+_l, e-_1..e-_l`.
//! Only brackets with a raising (or Cartan) element on the left are stored;
//! brackets with a lowering element on the left follow from the Hermitian
//! transpose `h† = h`, `(e+_j)† = e-_j`, via `[e-_j, Y] = -([e+_j, Y†])†`.

pub(crate) mod builtin;
mod element;
pub mod json;
mod roots;
pub(crate) mod validate;
mod weight;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use builtin::{build_so2n, build_su2};
pub use element::AlgebraElement;
pub use roots::{simple_roots_for_order, RootSystem, SignedRoot, REGULARITY_TOL};
pub use validate::{validate_spec, ValidationReport, Violation, ViolationKind};
pub use weight::Weight;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A named CW basis element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Cartan(usize),
    Root(usize, Sign),
}

impl Basis {
    pub fn dagger(self) -> Basis {
        match self {
            Basis::Cartan(k) => Basis::Cartan(k),
            Basis::Root(j, s) => Basis::Root(j, s.flip()),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Cartan(k) => write!(f, "h{}", k + 1),
            Basis::Root(j, Sign::Plus) => write!(f, "e+{}", j + 1),
            Basis::Root(j, Sign::Minus) => write!(f, "e-{}", j + 1),
        }
    }
}

/// Stored value of `[e+_j, e^sign_k]` for `j != k`: `coeff · e^{target_sign}_{target}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureEntry {
    pub coeff: Rational,
    pub target: usize,
    pub target_sign: Sign,
}

/// Sparse linear combination of basis indices.
pub type Sparse<S> = Vec<(usize, S)>;

#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    name: String,
    rank: usize,
    /// `a[j][k] = α_j(h_k)`
    a: Vec<Vec<Rational>>,
    /// `[e+_j, e-_j] = Σ_k b[k][j] h_k`
    b: Vec<Vec<Rational>>,
    c: BTreeMap<(usize, usize, Sign), StructureEntry>,
    /// Exact brackets of all basis pairs, `table[u][v] = [b_u, b_v]`.
    table: Vec<Vec<Sparse<Rational>>>,
    table_f64: Vec<Vec<Sparse<f64>>>,
}

impl AlgebraSpec {
    /// Checks shapes only; use [`validate_spec`] for the algebraic identities.
    pub fn new(
        name: impl Into<String>,
        rank: usize,
        a: Vec<Vec<Rational>>,
        b: Vec<Vec<Rational>>,
        c: BTreeMap<(usize, usize, Sign), StructureEntry>,
    ) -> Result<Self> {
        let l = a.len();
        if rank == 0 || l == 0 {
            return Err(Error::Shape(format!("rank {rank} and {l} positive roots: both must be positive")));
        }
        if let Some((j, row)) = a.iter().enumerate().find(|(_, row)| row.len() != rank) {
            return Err(Error::Shape(format!("a row {j} has {} entries, expected rank {rank}", row.len())));
        }
        if b.len() != rank {
            return Err(Error::Shape(format!("b has {} rows, expected rank {rank}", b.len())));
        }
        if let Some((k, row)) = b.iter().enumerate().find(|(_, row)| row.len() != l) {
            return Err(Error::Shape(format!("b row {k} has {} entries, expected {l}", row.len())));
        }
        for &(j, k, _) in c.keys() {
            if j >= l || k >= l || j == k {
                return Err(Error::Shape(format!("c entry ({j}, {k}) out of range for {l} roots")));
            }
        }
        for e in c.values() {
            if e.target >= l {
                return Err(Error::Shape(format!("c target root {} out of range", e.target)));
            }
        }
        let mut spec = AlgebraSpec { name: name.into(), rank, a, b, c, table: Vec::new(), table_f64: Vec::new() };
        spec.build_tables();
        Ok(spec)
    }

    fn build_tables(&mut self) {
        let m = self.dim();
        let mut table = Vec::with_capacity(m);
        for u in 0..m {
            let mut row = Vec::with_capacity(m);
            for v in 0..m {
                row.push(self.compute_bracket(self.basis(u), self.basis(v)));
            }
            table.push(row);
        }
        self.table_f64 = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.iter().map(|(i, q)| (*i, q.to_f64().unwrap_or(f64::NAN))).collect())
                    .collect()
            })
            .collect();
        self.table = table;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_pos_roots(&self) -> usize {
        self.a.len()
    }

    /// Total dimension `M = r + 2l`.
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.num_pos_roots()
    }

    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<Rational>] {
        &self.b
    }

    pub fn c(&self) -> &BTreeMap<(usize, usize, Sign), StructureEntry> {
        &self.c
    }

    pub fn root_vector(&self, j: usize) -> &[Rational] {
        &self.a[j]
    }

    pub fn index(&self, b: Basis) -> usize {
        let (r, l) = (self.rank, self.num_pos_roots());
        match b {
            Basis::Cartan(k) => k,
            Basis::Root(j, Sign::Plus) => r + j,
            Basis::Root(j, Sign::Minus) => r + l + j,
        }
    }

    pub fn basis(&self, u: usize) -> Basis {
        let (r, l) = (self.rank, self.num_pos_roots());
        if u < r {
            Basis::Cartan(u)
        } else if u < r + l {
            Basis::Root(u - r, Sign::Plus)
        } else {
            Basis::Root(u - r - l, Sign::Minus)
        }
    }

    /// `[b_u, b_v]` exactly.
    pub fn basis_bracket(&self, u: usize, v: usize) -> &Sparse<Rational> {
        &self.table[u][v]
    }

    pub fn basis_bracket_f64(&self, u: usize, v: usize) -> &Sparse<f64> {
        &self.table_f64[u][v]
    }

    /// `[e+_j, e-_j]` as Cartan coordinates.
    pub fn root_commutator(&self, j: usize) -> Vec<Rational> {
        (0..self.rank).map(|k| self.b[k][j].clone()).collect()
    }

    /// `α_j([e+_j, e-_j])`, positive for a compact real form.
    pub fn root_norm(&self, j: usize) -> Rational {
        (0..self.rank).fold(Rational::zero(), |acc, k| acc + &self.a[j][k] * &self.b[k][j])
    }

    /// Coroot `H'_j = 2 [e+_j, e-_j] / α_j([e+_j, e-_j])` in Cartan coordinates.
    pub fn coroot(&self, j: usize) -> Vec<Rational> {
        let kappa = self.root_norm(j);
        let two = rat(2);
        (0..self.rank).map(|k| &two * &self.b[k][j] / &kappa).collect()
    }

    fn compute_bracket(&self, x: Basis, y: Basis) -> Sparse<Rational> {
        let mut out: Sparse<Rational> = match (x, y) {
            (Basis::Cartan(_), Basis::Cartan(_)) => vec![],
            (Basis::Cartan(k), Basis::Root(j, s)) => {
                vec![(self.index(y), rat(s.factor()) * &self.a[j][k])]
            }
            (Basis::Root(j, Sign::Plus), Basis::Cartan(k)) => {
                vec![(self.index(Basis::Root(j, Sign::Plus)), -self.a[j][k].clone())]
            }
            (Basis::Root(j, Sign::Plus), Basis::Root(k, s)) => {
                if j == k {
                    match s {
                        Sign::Plus => vec![],
                        Sign::Minus => (0..self.rank).map(|m| (m, self.b[m][j].clone())).collect(),
                    }
                } else {
                    match self.c.get(&(j, k, s)) {
                        Some(e) => vec![(self.index(Basis::Root(e.target, e.target_sign)), e.coeff.clone())],
                        None => vec![],
                    }
                }
            }
            (Basis::Root(j, Sign::Minus), _) => {
                // [e-_j, Y] = -([e+_j, Y†])†; structure constants are real.
                let inner = self.compute_bracket(Basis::Root(j, Sign::Plus), y.dagger());
                inner.into_iter().map(|(u, q)| (self.index(self.basis(u).dagger()), -q)).collect()
            }
        };
        out.retain(|(_, q)| !q.is_zero());
        out.sort_by_key(|(u, _)| *u);
        out
    }

    /// Exact bracket of sparse rational combinations.
    pub fn bracket_exact(&self, x: &Sparse<Rational>, y: &Sparse<Rational>) -> Sparse<Rational> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (u, p) in x {
            for (v, q) in y {
                for (w, s) in &self.table[*u][*v] {
                    let e = acc.entry(*w).or_insert_with(Rational::zero);
                    *e += p * q * s;
                }
            }
        }
        acc.into_iter().filter(|(_, q)| !q.is_zero()).collect()
    }

    /// Find `m` and sign with `±α_m` equal to the given functional.
    pub fn find_root(&self, v: &[Rational]) -> Option<(usize, Sign)> {
        for (j, row) in self.a.iter().enumerate() {
            if row.as_slice() == v {
                return Some((j, Sign::Plus));
            }
            if row.iter().zip(v).all(|(x, y)| *x == -y.clone()) {
                return Some((j, Sign::Minus));
            }
        }
        None
    }

    /// The Cartan element `Σ_k w(h_k) h_k`.
    pub fn cartan_element(&self, coords: &[f64]) -> AlgebraElement {
        let mut x = AlgebraElement::zeros(self);
        for (k, v) in coords.iter().enumerate() {
            x.coeffs_mut()[k] = (*v).into();
        }
        x
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.rank == other.rank && self.a == other.a && self.b == other.b && self.c == other.c
    }
}
