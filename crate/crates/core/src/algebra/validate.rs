use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{AlgebraSpec, Basis, Rational, Sign, Sparse};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    DuplicateRoot,
    RootSum,
    Antisymmetry,
    Jacobi,
    Hermiticity,
    NonCompactForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub elements: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} on ({}): {}", self.kind, self.elements.join(", "), self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, elements: &[Basis], detail: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            elements: elements.iter().map(|b| b.to_string()).collect(),
            detail: detail.into(),
        });
    }
}

fn add_into(acc: &mut BTreeMap<usize, Rational>, terms: &Sparse<Rational>, scale: &Rational) {
    for (u, q) in terms {
        *acc.entry(*u).or_insert_with(Rational::zero) += q * scale;
    }
}

fn nonzero(acc: BTreeMap<usize, Rational>) -> Sparse<Rational> {
    acc.into_iter().filter(|(_, q)| !q.is_zero()).collect()
}

fn show(spec: &AlgebraSpec, s: &Sparse<Rational>) -> String {
    if s.is_empty() {
        return "0".into();
    }
    s.iter().map(|(u, q)| format!("{q}·{}", spec.basis(*u))).collect::<Vec<_>>().join(" + ")
}

/// Leading principal minors of a rational symmetric matrix, by fraction-free
/// elimination on exact rationals.
fn is_positive_definite(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    true
}

/// Exhaustive check of the bracket identities in exact arithmetic.
///
/// Beyond antisymmetry, Jacobi and Hermiticity consistency, the Killing form must
/// be positive on the compact real form that the Hermitian transpose defines.
pub fn validate_spec(spec: &AlgebraSpec) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let l = spec.num_pos_roots();
    let m = spec.dim();

    for j in 0..l {
        if spec.root_vector(j).iter().all(|x| x.is_zero()) {
            report.push(ViolationKind::DuplicateRoot, &[Basis::Root(j, Sign::Plus)], "root vanishes identically");
        }
        for k in j + 1..l {
            if let Some((found, _)) = spec.find_root(spec.root_vector(k)) {
                if found == j {
                    report.push(
                        ViolationKind::DuplicateRoot,
                        &[Basis::Root(j, Sign::Plus), Basis::Root(k, Sign::Plus)],
                        "roots coincide up to sign",
                    );
                }
            }
        }
    }

    for (&(j, k, s), e) in spec.c() {
        let sum: Vec<Rational> = spec
            .root_vector(j)
            .iter()
            .zip(spec.root_vector(k))
            .map(|(x, y)| x + Rational::from_integer(s.factor().into()) * y)
            .collect();
        let target: Vec<Rational> = spec
            .root_vector(e.target)
            .iter()
            .map(|x| x * Rational::from_integer(e.target_sign.factor().into()))
            .collect();
        if sum != target {
            report.push(
                ViolationKind::RootSum,
                &[Basis::Root(j, Sign::Plus), Basis::Root(k, s), Basis::Root(e.target, e.target_sign)],
                "result root is not the sum of the bracketed roots",
            );
        }
    }

    for u in 0..m {
        for v in u..m {
            let xy = spec.basis_bracket(u, v);
            let yx = spec.basis_bracket(v, u);
            let mut acc = BTreeMap::new();
            add_into(&mut acc, xy, &Rational::from_integer(1.into()));
            add_into(&mut acc, yx, &Rational::from_integer(1.into()));
            let sum = nonzero(acc);
            if !sum.is_empty() {
                report.push(
                    ViolationKind::Antisymmetry,
                    &[spec.basis(u), spec.basis(v)],
                    format!("[x,y] + [y,x] = {}", show(spec, &sum)),
                );
            }
        }
    }

    for u in 0..m {
        for v in 0..m {
            // [b_u, b_v]† = [b_v†, b_u†]; structure constants are real.
            let lhs: Sparse<Rational> = {
                let mut t: Vec<(usize, Rational)> = spec
                    .basis_bracket(u, v)
                    .iter()
                    .map(|(w, q)| (spec.index(spec.basis(*w).dagger()), q.clone()))
                    .collect();
                t.sort_by_key(|(w, _)| *w);
                t
            };
            let ud = spec.index(spec.basis(u).dagger());
            let vd = spec.index(spec.basis(v).dagger());
            let rhs = spec.basis_bracket(vd, ud);
            if &lhs != rhs {
                report.push(
                    ViolationKind::Hermiticity,
                    &[spec.basis(u), spec.basis(v)],
                    format!("[x,y]† = {} but [y†,x†] = {}", show(spec, &lhs), show(spec, rhs)),
                );
            }
        }
    }

    let one = Rational::from_integer(1.into());
    for u in 0..m {
        for v in u + 1..m {
            for w in v + 1..m {
                let mut acc = BTreeMap::new();
                for (a, b, c) in [(u, v, w), (v, w, u), (w, u, v)] {
                    let inner = spec.basis_bracket(b, c);
                    let outer = spec.bracket_exact(&vec![(a, one.clone())], inner);
                    add_into(&mut acc, &outer, &one);
                }
                let sum = nonzero(acc);
                if !sum.is_empty() {
                    report.push(
                        ViolationKind::Jacobi,
                        &[spec.basis(u), spec.basis(v), spec.basis(w)],
                        format!("cyclic sum = {}", show(spec, &sum)),
                    );
                }
            }
        }
    }

    if report.is_clean() {
        let killing = killing_form(spec);
        let r = spec.rank();
        let cartan: Vec<Vec<Rational>> = (0..r).map(|i| (0..r).map(|k| killing[i][k].clone()).collect()).collect();
        if !is_positive_definite(&cartan) {
            let els: Vec<Basis> = (0..r).map(Basis::Cartan).collect();
            report.push(ViolationKind::NonCompactForm, &els, "Killing form is not positive definite on the Cartan subalgebra");
        }
        for j in 0..l {
            let p = spec.index(Basis::Root(j, Sign::Plus));
            let q = spec.index(Basis::Root(j, Sign::Minus));
            if !killing[q][p].is_positive() {
                let mut els: Vec<Basis> = (0..r).map(Basis::Cartan).collect();
                els.extend([Basis::Root(j, Sign::Plus), Basis::Root(j, Sign::Minus)]);
                report.push(
                    ViolationKind::NonCompactForm,
                    &els,
                    format!("K(e-, e+) = {} is not positive; the transpose does not define a compact form", killing[q][p]),
                );
            }
        }
    }
    Ok(report)
}

/// `K(b_u, b_v) = tr(ad_u ad_v)` exactly.
pub(crate) fn killing_form(spec: &AlgebraSpec) -> Vec<Vec<Rational>> {
    let m = spec.dim();
    // ad[u][w][v] = coefficient of b_w in [b_u, b_v]
    let ad: Vec<Vec<Vec<Rational>>> = (0..m)
        .map(|u| {
            let mut mat = vec![vec![Rational::zero(); m]; m];
            for v in 0..m {
                for (w, q) in spec.basis_bracket(u, v) {
                    mat[*w][v] = q.clone();
                }
            }
            mat
        })
        .collect();
    let mut k = vec![vec![Rational::zero(); m]; m];
    for u in 0..m {
        for v in u..m {
            let mut tr = Rational::zero();
            for i in 0..m {
                for j in 0..m {
                    if !ad[u][i][j].is_zero() && !ad[v][j][i].is_zero() {
                        tr += &ad[u][i][j] * &ad[v][j][i];
                    }
                }
            }
            k[v][u] = tr.clone();
            k[u][v] = tr;
        }
    }
    k
}
