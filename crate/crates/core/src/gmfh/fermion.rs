//! Quadratic fermion Hamiltonians on so(2N) and the transverse-field Ising chain.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{diagonalize, ground_state_from, spectrum_from, GMFHSpectrum, GmfhOptions, GroundStatePrep};
use crate::algebra::{build_so2n, rat_frac, AlgebraElement, AlgebraSpec, Basis, Sign, Weight};
use crate::error::{Error, Result};
use crate::rep::build_fermionic_defining;

const SYMMETRY_TOL: f64 = 1e-12;

/// `H = Σ t_ij (c†_i c_j − δ_ij/2) + Σ_ij (u_ij c†_i c†_j + h.c.)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FermionicQuadratic {
    pub t_matrix: Vec<Vec<Complex64>>,
    pub u_matrix: Vec<Vec<Complex64>>,
}

impl FermionicQuadratic {
    pub fn new(t_matrix: Vec<Vec<Complex64>>, u_matrix: Vec<Vec<Complex64>>) -> Result<Self> {
        let fq = FermionicQuadratic { t_matrix, u_matrix };
        fq.check()?;
        Ok(fq)
    }

    pub fn n_modes(&self) -> usize {
        self.t_matrix.len()
    }

    /// `t` Hermitian and `u` antisymmetric, both `N × N`.
    pub fn check(&self) -> Result<()> {
        let n = self.n_modes();
        if n == 0 {
            return Err(Error::InvalidInput("no fermion modes".into()));
        }
        let square = |m: &[Vec<Complex64>]| m.len() == n && m.iter().all(|r| r.len() == n);
        if !square(&self.t_matrix) || !square(&self.u_matrix) {
            return Err(Error::Shape(format!("hopping and pairing matrices must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let (t, u) = (&self.t_matrix, &self.u_matrix);
                if (t[i][j] - t[j][i].conj()).norm() > SYMMETRY_TOL {
                    return Err(Error::InvalidInput(format!("hopping matrix is not Hermitian at ({i}, {j})")));
                }
                if (u[i][j] + u[j][i]).norm() > SYMMETRY_TOL {
                    return Err(Error::InvalidInput(format!("pairing matrix is not antisymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(())
    }
}

/// Highest weights of the two parity sectors of Fock space: the filled state
/// `(1/2, …, 1/2)` and the state with the last mode empty `(1/2, …, 1/2, −1/2)`.
pub fn fock_sector_weights(n: usize) -> [Weight; 2] {
    let even = vec![rat_frac(1, 2); n];
    let mut odd = even.clone();
    odd[n - 1] = rat_frac(-1, 2);
    [Weight::new(even), Weight::new(odd)]
}

/// The Hamiltonian as an so(2N) element and the filled-state weight.
///
/// `c†_i c_i − 1/2 = h_i`, `c†_i c_j = e+` and `c†_j c_i = e−` for the hopping
/// root `(i, j)`, `c†_i c†_j = e+` and `c_j c_i = e−` for the pairing root.
pub fn map_fermionic(fq: &FermionicQuadratic) -> Result<(AlgebraSpec, AlgebraElement, Weight)> {
    fq.check()?;
    let n = fq.n_modes();
    let spec = build_so2n(n)?;
    let (t, u) = (&fq.t_matrix, &fq.u_matrix);
    let mut x = AlgebraElement::zeros(&spec);
    let roots = crate::algebra::builtin::so2n_roots(n);
    {
        let c = x.coeffs_mut();
        for i in 0..n {
            c[i] = Complex64::new(t[i][i].re, 0.0);
        }
        for (j, &(a, b, pair)) in roots.iter().enumerate() {
            let (up, down) = if pair { (u[a][b] * 2.0, (u[a][b] * 2.0).conj()) } else { (t[a][b], t[b][a]) };
            c[spec.index(Basis::Root(j, Sign::Plus))] = up;
            c[spec.index(Basis::Root(j, Sign::Minus))] = down;
        }
    }
    let [even, _] = fock_sector_weights(n);
    Ok((spec, x, even))
}

/// Jordan–Wigner image of `Σ_j g σx^j σx^{j+1} + Σ_j σz^j`, spin up on occupied modes.
///
/// The open chain is exact. With `periodic` the closing bond is added with the sign
/// of the even-parity sector, so the result matches the spin chain only on that
/// sector; it is ignored for `n_sites = 2`, where the closing bond coincides with
/// the open one.
pub fn map_ising(n_sites: usize, g: f64, periodic: bool) -> Result<FermionicQuadratic> {
    if n_sites < 2 {
        return Err(Error::InvalidInput("Ising chain needs at least 2 sites".into()));
    }
    let n = n_sites;
    let z = Complex64::new(0.0, 0.0);
    let mut t = vec![vec![z; n]; n];
    let mut u = vec![vec![z; n]; n];
    for j in 0..n {
        t[j][j] = Complex64::new(2.0, 0.0);
    }
    let mut bond = |i: usize, k: usize, s: f64| {
        t[i][k] += Complex64::new(s * g, 0.0);
        t[k][i] += Complex64::new(s * g, 0.0);
        u[i][k] += Complex64::new(s * g / 2.0, 0.0);
        u[k][i] -= Complex64::new(s * g / 2.0, 0.0);
    };
    for j in 0..n - 1 {
        bond(j, j + 1, 1.0);
    }
    if periodic && n > 2 {
        bond(n - 1, 0, -1.0);
    }
    FermionicQuadratic::new(t, u)
}

/// Spectra of both parity sectors from one diagonalization.
#[derive(Clone, Debug, Serialize)]
pub struct FockSpectrum {
    pub sectors: Vec<GMFHSpectrum>,
}

impl FockSpectrum {
    /// Distinct energies of the whole Fock space, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.sectors.iter().flat_map(|s| s.eigenvalues()).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn truncated(&self) -> bool {
        self.sectors.iter().any(|s| s.truncated)
    }
}

pub fn solve_fermionic(fq: &FermionicQuadratic, opts: &GmfhOptions) -> Result<FockSpectrum> {
    let (spec, h, _) = map_fermionic(fq)?;
    let rep = build_fermionic_defining(fq.n_modes())?;
    let jr = diagonalize(&h, &spec, &rep, opts)?;
    let sectors =
        fock_sector_weights(fq.n_modes()).iter().map(|w| spectrum_from(&spec, w, &jr, opts)).collect::<Result<_>>()?;
    Ok(FockSpectrum { sectors })
}

/// Ground state over both parity sectors; returns the sector weight with the gates.
pub fn prepare_fermionic_ground_state(fq: &FermionicQuadratic, opts: &GmfhOptions) -> Result<(GroundStatePrep, Weight)> {
    let (spec, h, _) = map_fermionic(fq)?;
    let rep = build_fermionic_defining(fq.n_modes())?;
    let jr = diagonalize(&h, &spec, &rep, opts)?;
    let [even, odd] = fock_sector_weights(fq.n_modes());
    let ge = ground_state_from(&spec, &even, &jr)?;
    let go = ground_state_from(&spec, &odd, &jr)?;
    Ok(if go.energy < ge.energy { (go, odd) } else { (ge, even) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::eigh;
    use crate::oracle::{build_fermion_oracle, build_fermion_oracle_odd, fermionic_quadratic_matrix, ising_spin_hamiltonian};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_fq(n: usize, rng: &mut ChaCha8Rng) -> FermionicQuadratic {
        let z = Complex64::new(0.0, 0.0);
        let mut t = vec![vec![z; n]; n];
        let mut u = vec![vec![z; n]; n];
        for i in 0..n {
            t[i][i] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                let b = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                t[i][j] = a;
                t[j][i] = a.conj();
                u[i][j] = b;
                u[j][i] = -b;
            }
        }
        FermionicQuadratic::new(t, u).unwrap()
    }

    fn covers(solver: &[f64], oracle: &[f64], tol: f64) {
        for e in solver {
            assert!(oracle.iter().any(|o| (o - e).abs() < tol), "solver level {e} not in oracle spectrum");
        }
        for o in oracle {
            assert!(solver.iter().any(|e| (o - e).abs() < tol), "oracle level {o} missed");
        }
    }

    #[test]
    fn mapping_matches_jordan_wigner() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=4 {
            let fq = random_fq(n, &mut rng);
            let (_, x, _) = map_fermionic(&fq).unwrap();
            let o = build_fermion_oracle(n).unwrap();
            let direct = fermionic_quadratic_matrix(&fq.t_matrix, &fq.u_matrix);
            assert!(o.element_image(&x).sub(&direct).frob_norm() < 1e-12);
        }
    }

    #[test]
    fn ising_mapping_matches_spin_chain() {
        for n in 2..=5 {
            for g in [0.3, 1.3] {
                let fq = map_ising(n, g, false).unwrap();
                let direct = fermionic_quadratic_matrix(&fq.t_matrix, &fq.u_matrix);
                assert!(direct.sub(&ising_spin_hamiltonian(n, g, false)).frob_norm() < 1e-12, "n={n}");
            }
        }
    }

    #[test]
    fn periodic_ising_on_even_sector() {
        let n = 4;
        let fq = map_ising(n, 0.7, true).unwrap();
        let direct = fermionic_quadratic_matrix(&fq.t_matrix, &fq.u_matrix);
        let spin = ising_spin_hamiltonian(n, 0.7, true);
        for a in 0..16usize {
            for b in 0..16usize {
                if a.count_ones() % 2 == 0 && b.count_ones() % 2 == 0 {
                    assert!((direct[(a, b)] - spin[(a, b)]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn two_site_ising_closed_form() {
        let g: f64 = 1.3;
        let sp = solve_fermionic(&map_ising(2, g, false).unwrap(), &GmfhOptions::default()).unwrap();
        let r = (4.0 + g * g).sqrt();
        covers(&sp.eigenvalues(), &[-r, -g, g, r], 1e-10);
    }

    #[test]
    fn random_spectra_match_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 2..=4 {
            let fq = random_fq(n, &mut rng);
            let sp = solve_fermionic(&fq, &GmfhOptions::default()).unwrap();
            assert!(!sp.truncated());
            assert_eq!(sp.eigenvalues().len(), 1 << n);
            let oracle = eigh(&fermionic_quadratic_matrix(&fq.t_matrix, &fq.u_matrix)).unwrap().values;
            covers(&sp.eigenvalues(), &oracle, 1e-8);
            // Bogoliubov quasi-particle energies come in ± pairs.
            let (_, h, _) = map_fermionic(&fq).unwrap();
            let bdg = eigh(&build_fermionic_defining(n).unwrap().element_image(&h)).unwrap().values;
            let mut pm: Vec<f64> = sp.sectors[0].epsilons.iter().flat_map(|e| [*e, -e]).collect();
            pm.sort_by(f64::total_cmp);
            for (a, b) in pm.iter().zip(&bdg) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ground_state_energy_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 2..=4 {
            let fq = random_fq(n, &mut rng);
            let (g, w) = prepare_fermionic_ground_state(&fq, &GmfhOptions::default()).unwrap();
            let (_, h, even) = map_fermionic(&fq).unwrap();
            let o = if w == even { build_fermion_oracle(n).unwrap() } else { build_fermion_oracle_odd(n).unwrap() };
            let e = o.energy(&g.gates, &h).unwrap().re;
            let min = eigh(&fermionic_quadratic_matrix(&fq.t_matrix, &fq.u_matrix)).unwrap().values[0];
            assert!((e - min).abs() < 1e-8, "n={n}: {e} vs {min}");
            assert!((g.energy - min).abs() < 1e-8);
        }
    }
}
