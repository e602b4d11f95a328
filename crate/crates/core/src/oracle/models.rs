use num_complex::Complex64;

use super::ColumnOp;
use crate::numerics::CMat64;

/// `c_j|n⟩ = (−1)^{Σ_{k<j} n_k} |n − e_j⟩` on `n` modes.
pub fn annihilation(n: usize, j: usize) -> ColumnOp {
    let d = 1usize << n;
    let mut op = ColumnOp::zero(d);
    for s in 0..d {
        if (s >> j) & 1 == 1 {
            let parity = (s & ((1 << j) - 1)).count_ones();
            op.rows[s] = s ^ (1 << j);
            op.vals[s] = if parity % 2 == 0 { 1.0 } else { -1.0 };
        }
    }
    op
}

/// `Σ_j g σx^j σx^{j+1} + Σ_j σz^j` with spin up on set bits; `periodic` adds the
/// bond between the last and first site.
pub fn ising_spin_hamiltonian(n: usize, g: f64, periodic: bool) -> CMat64 {
    let d = 1usize << n;
    let mut h = CMat64::zeros(d, d);
    for s in 0..d {
        let z: f64 = (0..n).map(|j| if (s >> j) & 1 == 1 { 1.0 } else { -1.0 }).sum();
        h[(s, s)] += Complex64::new(z, 0.0);
        let bonds = if periodic && n > 2 { n } else { n - 1 };
        for j in 0..bonds {
            let k = (j + 1) % n;
            let t = s ^ (1 << j) ^ (1 << k);
            h[(t, s)] += Complex64::new(g, 0.0);
        }
    }
    h
}

/// `Σ t_ij (c†_i c_j − δ_ij/2) + Σ_ij (u_ij c†_i c†_j + h.c.)` built from
/// Jordan–Wigner operators.
pub fn fermionic_quadratic_matrix(t: &[Vec<Complex64>], u: &[Vec<Complex64>]) -> CMat64 {
    let n = t.len();
    let d = 1usize << n;
    let c: Vec<CMat64> = (0..n).map(|j| annihilation(n, j).to_dense()).collect();
    let cd: Vec<CMat64> = c.iter().map(CMat64::adjoint).collect();
    let id = CMat64::identity(d);
    let mut h = CMat64::zeros(d, d);
    for i in 0..n {
        for j in 0..n {
            if t[i][j].norm() != 0.0 {
                let mut term = cd[i].matmul(&c[j]);
                if i == j {
                    term = term.sub(&id.scale_real(&0.5));
                }
                h.axpy(&t[i][j], &term);
            }
            if u[i][j].norm() != 0.0 {
                let pair = cd[i].matmul(&cd[j]);
                h.axpy(&u[i][j], &pair);
                h.axpy(&u[i][j].conj(), &pair.adjoint());
            }
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::eigh;

    #[test]
    fn two_site_ising_closed_form() {
        for g in [0.3, 0.7, 1.0, 1.3] {
            let e = eigh(&ising_spin_hamiltonian(2, g, false)).unwrap().values;
            let r = (4.0f64 + g * g).sqrt();
            let mut expect = vec![-r, -g, g, r];
            expect.sort_by(f64::total_cmp);
            for (a, b) in e.iter().zip(&expect) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_field_coupling_is_sum_of_sigma_z() {
        let e = eigh(&ising_spin_hamiltonian(3, 0.0, true)).unwrap().values;
        assert_eq!(e.iter().map(|x| x.round() as i64).collect::<Vec<_>>(), vec![-3, -1, -1, -1, 1, 1, 1, 3]);
    }
}
