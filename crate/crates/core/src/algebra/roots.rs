use std::collections::HashSet;

use num_traits::{One, ToPrimitive, Zero};

use super::{rat, AlgebraSpec, Basis, Rational, Sign};
use crate::error::{Error, Result};

/// `|α(q)|` below this makes `q` non-regular.
pub const REGULARITY_TOL: f64 = 1e-9;

/// `±α_index` as a root of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: usize,
    pub sign: Sign,
}

impl SignedRoot {
    pub fn vector(&self, spec: &AlgebraSpec) -> Vec<Rational> {
        let f = rat(self.sign.factor());
        spec.root_vector(self.index).iter().map(|x| x * &f).collect()
    }

    pub fn eval(&self, spec: &AlgebraSpec, q: &[f64]) -> f64 {
        let s = self.sign.factor() as f64;
        spec.root_vector(self.index).iter().zip(q).map(|(a, x)| s * a.to_f64().unwrap_or(f64::NAN) * x).sum()
    }

    pub fn coroot(&self, spec: &AlgebraSpec) -> Vec<Rational> {
        let f = rat(self.sign.factor());
        spec.coroot(self.index).into_iter().map(|x| x * &f).collect()
    }

    /// Basis element raising by this root.
    pub fn raising(&self) -> Basis {
        Basis::Root(self.index, self.sign)
    }

    pub fn lowering(&self) -> Basis {
        Basis::Root(self.index, self.sign.flip())
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    positive_roots: Vec<SignedRoot>,
    simple_roots: Vec<usize>,
    cartan_matrix: Vec<Vec<i64>>,
    simple_vectors: Vec<Vec<Rational>>,
    simple_coroots: Vec<Vec<Rational>>,
    simple_vectors_f64: Vec<Vec<f64>>,
    simple_coroots_f64: Vec<Vec<f64>>,
}

fn to_f64_vec(v: &[Rational]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

fn pair(lambda: &[Rational], coroot: &[Rational]) -> Rational {
    lambda.iter().zip(coroot).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

impl RootSystem {
    /// Root system with the positive roots as listed in the `AlgebraSpec`.
    pub fn standard(spec: &AlgebraSpec) -> Result<Self> {
        let pos = (0..spec.num_pos_roots()).map(|index| SignedRoot { index, sign: Sign::Plus }).collect();
        Self::from_positive(spec, pos)
    }

    fn from_positive(spec: &AlgebraSpec, positive_roots: Vec<SignedRoot>) -> Result<Self> {
        let vectors: Vec<Vec<Rational>> = positive_roots.iter().map(|r| r.vector(spec)).collect();
        let set: HashSet<&Vec<Rational>> = vectors.iter().collect();
        let simple_roots: Vec<usize> = (0..vectors.len())
            .filter(|&g| {
                !vectors.iter().any(|alpha| {
                    let rest: Vec<Rational> = vectors[g].iter().zip(alpha).map(|(x, y)| x - y).collect();
                    set.contains(&rest)
                })
            })
            .collect();
        let simple_vectors: Vec<Vec<Rational>> = simple_roots.iter().map(|&i| vectors[i].clone()).collect();
        let simple_coroots: Vec<Vec<Rational>> =
            simple_roots.iter().map(|&i| positive_roots[i].coroot(spec)).collect();
        let mut cartan_matrix = Vec::with_capacity(simple_roots.len());
        for v in &simple_vectors {
            let mut row = Vec::with_capacity(simple_roots.len());
            for c in &simple_coroots {
                let p = pair(v, c);
                if !p.denom().is_one() {
                    return Err(Error::InvalidSpec(format!("non-integral Cartan matrix entry {p}")));
                }
                row.push(p.to_integer().to_i64().unwrap_or(i64::MAX));
            }
            cartan_matrix.push(row);
        }
        Ok(RootSystem {
            simple_vectors_f64: simple_vectors.iter().map(|v| to_f64_vec(v)).collect(),
            simple_coroots_f64: simple_coroots.iter().map(|v| to_f64_vec(v)).collect(),
            positive_roots,
            simple_roots,
            cartan_matrix,
            simple_vectors,
            simple_coroots,
        })
    }

    pub fn positive_roots(&self) -> &[SignedRoot] {
        &self.positive_roots
    }

    /// Indices into [`Self::positive_roots`].
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple_roots
    }

    pub fn simple(&self, i: usize) -> SignedRoot {
        self.positive_roots[self.simple_roots[i]]
    }

    pub fn num_simple(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan_matrix
    }

    pub fn simple_vector(&self, i: usize) -> &[Rational] {
        &self.simple_vectors[i]
    }

    /// Coroot `H'_i` of the i-th simple root in Cartan coordinates.
    pub fn simple_coroot(&self, i: usize) -> &[Rational] {
        &self.simple_coroots[i]
    }

    /// `⟨λ, β_i^∨⟩ = λ(H'_i)`.
    pub fn pairing(&self, lambda: &[Rational], i: usize) -> Rational {
        pair(lambda, &self.simple_coroots[i])
    }

    pub fn eval_simple(&self, i: usize, q: &[f64]) -> f64 {
        self.simple_vectors_f64[i].iter().zip(q).map(|(a, x)| a * x).sum()
    }

    /// `s_i(q) = q − β_i(q) H'_i` on a Cartan element.
    pub fn reflect_cartan(&self, i: usize, q: &mut [f64]) {
        let v = self.eval_simple(i, q);
        for (x, c) in q.iter_mut().zip(&self.simple_coroots_f64[i]) {
            *x -= v * c;
        }
    }

    /// `s_i(λ) = λ − λ(H'_i) β_i` on a weight.
    pub fn reflect_weight(&self, i: usize, lambda: &[Rational]) -> Vec<Rational> {
        let p = self.pairing(lambda, i);
        lambda.iter().zip(&self.simple_vectors[i]).map(|(x, b)| x - &p * b).collect()
    }

    /// Reflects `q` into the closed fundamental chamber. Returns the image and the
    /// reflections applied in order.
    pub fn to_dominant_cartan(&self, q: &[f64]) -> (Vec<f64>, Vec<usize>) {
        let mut q = q.to_vec();
        let scale = q.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1.0);
        let mut word = Vec::new();
        let cap = 4 * (self.positive_roots.len() + 1) * (self.num_simple() + 1);
        while word.len() < cap {
            let worst = (0..self.num_simple())
                .map(|i| (i, self.eval_simple(i, &q)))
                .filter(|(_, v)| *v < -1e-13 * scale)
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match worst {
                Some((i, _)) => {
                    self.reflect_cartan(i, &mut q);
                    word.push(i);
                }
                None => break,
            }
        }
        (q, word)
    }

    /// Checks that `λ` pairs to a non-negative integer with every simple coroot.
    pub fn check_dominant_integral(&self, lambda: &[Rational]) -> Result<()> {
        for i in 0..self.num_simple() {
            let p = self.pairing(lambda, i);
            if !p.is_integer() || p < Rational::zero() {
                return Err(Error::NotDominant(format!(
                    "pairing with simple root {} is {p}",
                    self.positive_roots[self.simple_roots[i]].index
                )));
            }
        }
        Ok(())
    }
}

/// Root order induced by a regular real Cartan element: `α` is positive iff `α(q) > 0`.
pub fn simple_roots_for_order(spec: &AlgebraSpec, q: &[f64]) -> Result<RootSystem> {
    if q.len() != spec.rank() {
        return Err(Error::Shape(format!("ordering element has {} Cartan entries, rank is {}", q.len(), spec.rank())));
    }
    let mut pos = Vec::with_capacity(spec.num_pos_roots());
    for index in 0..spec.num_pos_roots() {
        let v = SignedRoot { index, sign: Sign::Plus }.eval(spec, q);
        if v.abs() < REGULARITY_TOL {
            return Err(Error::DegenerateOrder { root: index, value: v });
        }
        pos.push(SignedRoot { index, sign: if v > 0.0 { Sign::Plus } else { Sign::Minus } });
    }
    RootSystem::from_positive(spec, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_so2n, build_su2};

    #[test]
    fn su2_orders() {
        let s = build_su2();
        let rs = simple_roots_for_order(&s, &[1.0]).unwrap();
        assert_eq!(rs.simple(0), SignedRoot { index: 0, sign: Sign::Plus });
        let rs = simple_roots_for_order(&s, &[-1.0]).unwrap();
        assert_eq!(rs.simple(0), SignedRoot { index: 0, sign: Sign::Minus });
        assert!(matches!(simple_roots_for_order(&s, &[0.0]), Err(Error::DegenerateOrder { .. })));
    }

    #[test]
    fn so4_reordered_simple_roots_decompose_positives() {
        let s = build_so2n(2).unwrap();
        let rs = simple_roots_for_order(&s, &[1.0, 2.0]).unwrap();
        assert_eq!(rs.num_simple(), 2);
        // α_1 = ε_1 − ε_2 evaluates to −1, so −α_1 becomes positive.
        assert_eq!(rs.positive_roots()[0].sign, Sign::Minus);
        assert_eq!(rs.cartan_matrix(), &[vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn simple_count_equals_rank_for_regular_orders() {
        for n in 2..=5 {
            let s = build_so2n(n).unwrap();
            let q: Vec<f64> = (0..n).map(|k| ((k * 7 + 3) % 11) as f64 - 4.3 + 0.01 * k as f64).collect();
            let rs = simple_roots_for_order(&s, &q).unwrap();
            assert_eq!(rs.num_simple(), n);
            let std = RootSystem::standard(&s).unwrap();
            assert_eq!(std.num_simple(), n);
            for (i, row) in std.cartan_matrix().iter().enumerate() {
                assert_eq!(row[i], 2);
            }
        }
    }

    #[test]
    fn dominant_chamber_reflection_preserves_weight_pairing() {
        let s = build_so2n(3).unwrap();
        let rs = RootSystem::standard(&s).unwrap();
        let q = [0.3, -1.1, 0.7];
        let (qd, word) = rs.to_dominant_cartan(&q);
        for i in 0..rs.num_simple() {
            assert!(rs.eval_simple(i, &qd) >= -1e-12);
        }
        // The Weyl group of so(6) permutes coordinates and flips pairs of signs.
        let mut a: Vec<f64> = q.iter().map(|x| x.abs()).collect();
        let mut b: Vec<f64> = qd.iter().map(|x| x.abs()).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-14));
        assert!(!word.is_empty());
    }
}
