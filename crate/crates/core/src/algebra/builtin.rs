use std::collections::BTreeMap;

use super::{rat, AlgebraSpec, Basis, Sign, StructureEntry};
use crate::error::{Error, Result};

/// su(2) with `[h, e±] = ±2 e±` and `[e+, e-] = h`.
pub fn build_su2() -> AlgebraSpec {
    AlgebraSpec::new("su(2)", 1, vec![vec![rat(2)]], vec![vec![rat(1)]], BTreeMap::new())
        .expect("su(2) shapes are consistent")
}

/// Positive roots of so(2N) as `(i, j, is_pair)` with `i < j`: all `ε_i − ε_j`
/// first, then all `ε_i + ε_j`.
pub(crate) fn so2n_roots(n: usize) -> Vec<(usize, usize, bool)> {
    let mut roots = Vec::new();
    for pair in [false, true] {
        for i in 0..n {
            for j in i + 1..n {
                roots.push((i, j, pair));
            }
        }
    }
    roots
}

/// Integer `2N × 2N` images of the so(2N) CW basis in the defining representation,
/// row-major.
///
/// `h_k = c†_k c_k − 1/2 ↦ T_kk − T_{N+k,N+k}`; for `i < j` the hopping root has
/// `e+ = c†_i c_j ↦ T_ij − T_{N+j,N+i}`, `e- = c†_j c_i`; the pairing root has
/// `e+ = c†_i c†_j ↦ T_{i,N+j} − T_{j,N+i}`, `e- = c_j c_i ↦ T_{N+j,i} − T_{N+i,j}`.
pub(crate) fn so2n_defining_images(n: usize) -> Vec<Vec<i64>> {
    let d = 2 * n;
    let t = |m: &mut Vec<i64>, r: usize, c: usize, v: i64| m[r * d + c] += v;
    let mut images = Vec::new();
    for k in 0..n {
        let mut m = vec![0; d * d];
        t(&mut m, k, k, 1);
        t(&mut m, n + k, n + k, -1);
        images.push(m);
    }
    let roots = so2n_roots(n);
    let mut raise = Vec::new();
    let mut lower = Vec::new();
    for &(i, j, pair) in &roots {
        let mut p = vec![0; d * d];
        let mut q = vec![0; d * d];
        if pair {
            t(&mut p, i, n + j, 1);
            t(&mut p, j, n + i, -1);
            t(&mut q, n + j, i, 1);
            t(&mut q, n + i, j, -1);
        } else {
            t(&mut p, i, j, 1);
            t(&mut p, n + j, n + i, -1);
            t(&mut q, j, i, 1);
            t(&mut q, n + i, n + j, -1);
        }
        raise.push(p);
        lower.push(q);
    }
    images.extend(raise);
    images.extend(lower);
    images
}

/// Entry of the defining image that identifies each basis element uniquely.
fn signature(n: usize, roots: &[(usize, usize, bool)], b: Basis) -> (usize, usize) {
    match b {
        Basis::Cartan(k) => (k, k),
        Basis::Root(r, s) => {
            let (i, j, pair) = roots[r];
            match (pair, s) {
                (false, Sign::Plus) => (i, j),
                (false, Sign::Minus) => (j, i),
                (true, Sign::Plus) => (i, n + j),
                (true, Sign::Minus) => (n + j, i),
            }
        }
    }
}

fn int_commutator(x: &[i64], y: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0; d * d];
    for i in 0..d {
        for k in 0..d {
            let (xik, yik) = (x[i * d + k], y[i * d + k]);
            for j in 0..d {
                out[i * d + j] += xik * y[k * d + j] - yik * x[k * d + j];
            }
        }
    }
    out
}

/// so(2N) in CW form, `M = 2N² − N`. Structure constants are read off exact integer
/// commutators of the defining images.
pub fn build_so2n(n: usize) -> Result<AlgebraSpec> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("so(2N) requires N >= 2, got N = {n}")));
    }
    let d = 2 * n;
    let roots = so2n_roots(n);
    let l = roots.len();
    let mut a = vec![vec![rat(0); n]; l];
    let mut b = vec![vec![rat(0); l]; n];
    for (r, &(i, j, pair)) in roots.iter().enumerate() {
        a[r][i] = rat(1);
        a[r][j] = rat(if pair { 1 } else { -1 });
        b[i][r] = rat(1);
        b[j][r] = rat(if pair { 1 } else { -1 });
    }
    let images = so2n_defining_images(n);
    let sig: Vec<(usize, usize)> = (0..images.len())
        .map(|u| {
            let basis = if u < n {
                Basis::Cartan(u)
            } else if u < n + l {
                Basis::Root(u - n, Sign::Plus)
            } else {
                Basis::Root(u - n - l, Sign::Minus)
            };
            signature(n, &roots, basis)
        })
        .collect();
    let mut c = BTreeMap::new();
    for j in 0..l {
        for k in 0..l {
            if j == k {
                continue;
            }
            for s in [Sign::Plus, Sign::Minus] {
                let kk = match s {
                    Sign::Plus => n + k,
                    Sign::Minus => n + l + k,
                };
                let comm = int_commutator(&images[n + j], &images[kk], d);
                if comm.iter().all(|v| *v == 0) {
                    continue;
                }
                let mut residual = comm.clone();
                let mut hits = Vec::new();
                for (u, &(row, col)) in sig.iter().enumerate() {
                    let coeff = comm[row * d + col] * images[u][row * d + col];
                    if coeff != 0 {
                        for (r, v) in residual.iter_mut().zip(&images[u]) {
                            *r -= coeff * v;
                        }
                        hits.push((u, coeff));
                    }
                }
                assert!(
                    hits.len() == 1 && hits[0].0 >= n && residual.iter().all(|v| *v == 0),
                    "so(2N) commutator is a single root vector"
                );
                let (u, coeff) = hits[0];
                let (target, target_sign) = if u < n + l { (u - n, Sign::Plus) } else { (u - n - l, Sign::Minus) };
                c.insert((j, k, s), StructureEntry { coeff: rat(coeff), target, target_sign });
            }
        }
    }
    AlgebraSpec::new(format!("so({})", 2 * n), n, a, b, c)
}
