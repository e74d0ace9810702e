// Copyright 2026 gybe contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Entangled states from Gaussian operators: the image of the measurement
//! basis under `S`, the analytic amplitude formula with its integer phase
//! exponents `c_j(k, m, N)`, reduced-density-matrix checks, and parameter
//! sweeps `a ↦ R̃(a)·φ`.
//!
//! The analytic formula `S|k⟩^{⊗N} = (1/√m) Σ_j q^{c_j}|j⟩^{⊗N}` with
//! `c_j = (k−j)² + (m−1+(j−k)(j+k+1))(N−2)/2` holds for odd m and the
//! Gaussian built on the *bare* site operator `σ_x ⊗ σ_y^{⊗N−1}` (which has
//! order m precisely when m is odd). For even m only diagonal support, equal
//! moduli, and unitarity are asserted, with the phased site operator.

use crate::coeffs::{ModulusConfig, SpectralParam};
use crate::error::{Error, Result};
use crate::gybe::ParamOperatorFamily;
use crate::matrix::{checked_pow, embedded_matvec, ComplexMatrix, StateVector, C64};
use crate::torus::{
    build_site_operator, build_site_operator_bare, build_site_system_from_operator, SiteSystem,
};

/// A state supported on the diagonal basis vectors `|j⟩^{⊗N}` with
/// equal-modulus amplitudes `1/√m`.
#[derive(Clone, Debug)]
pub struct GhzLikeState {
    pub m: usize,
    pub n_parts: usize,
    /// Amplitude of `|j⟩^{⊗N}` for each `j`.
    pub amplitudes: Vec<C64>,
    pub full_vector: StateVector,
}

/// Index of `|j⟩^{⊗arity}` in the big-endian basis order.
fn diagonal_index(m: usize, arity: usize, j: usize) -> usize {
    let mut idx = 0usize;
    for _ in 0..arity {
        idx = idx * m + j;
    }
    idx
}

/// Apply an operator of dimension `m^N` to `|k⟩^{⊗N}` and decompose the
/// image onto the diagonal basis states. Errors when the off-diagonal weight
/// exceeds `1e−8` (the operator is then not a single-site Gaussian).
pub fn apply_to_product_state(
    s: &ComplexMatrix,
    m: usize,
    n_parts: usize,
    k: usize,
) -> Result<GhzLikeState> {
    let dim = checked_pow(m, n_parts)?;
    if s.dim() != dim {
        return Err(Error::DimensionMismatch(dim, s.dim()));
    }
    if k >= m {
        return Err(Error::InvalidArgument(format!("level k = {k} out of range [0, {m})")));
    }
    let input = StateVector::diagonal_product(m, n_parts, k)?;
    let image = input.apply(s)?;

    let diag: Vec<usize> = (0..m).map(|j| diagonal_index(m, n_parts, j)).collect();
    let mut amplitudes = vec![C64::new(0.0, 0.0); m];
    let mut off_weight = 0.0;
    for (idx, amp) in image.amps().iter().enumerate() {
        if let Some(j) = diag.iter().position(|&d| d == idx) {
            amplitudes[j] = *amp;
        } else {
            off_weight += amp.norm_sqr();
        }
    }
    if off_weight > 1e-8 {
        return Err(Error::NotDiagonalSupport { weight: off_weight });
    }
    Ok(GhzLikeState { m, n_parts, amplitudes, full_vector: image })
}

/// The integer phase exponents `c_j(k, m, N)` for odd m, evaluated in exact
/// integer arithmetic: `c_j = (k−j)² + (m−1+(j−k)(j+k+1))(N−2)/2`.
pub fn analytic_exponents(k: usize, m: usize, n_parts: usize) -> Result<Vec<i64>> {
    if m % 2 == 0 {
        return Err(Error::UnsupportedParity(m));
    }
    if k >= m {
        return Err(Error::InvalidArgument(format!("level k = {k} out of range [0, {m})")));
    }
    let (ki, mi, ni) = (k as i64, m as i64, n_parts as i64);
    let mut out = Vec::with_capacity(m);
    for j in 0..mi {
        let quad = (ki - j) * (ki - j);
        let num = (mi - 1 + (j - ki) * (j + ki + 1)) * (ni - 2);
        debug_assert!(num % 2 == 0, "c_j must be an integer");
        out.push(quad + num / 2);
    }
    Ok(out)
}

/// The analytic amplitudes `(1/√m)·q^{c_j(k,m,N)}` for odd m.
pub fn analytic_amplitudes(cfg: &ModulusConfig, k: usize, n_parts: usize) -> Result<Vec<C64>> {
    let exps = analytic_exponents(k, cfg.m(), n_parts)?;
    let s = 1.0 / (cfg.m() as f64).sqrt();
    Ok(exps.iter().map(|&c| s * cfg.q_pow(c)).collect())
}

/// The single-site Gaussian operator used for state generation: built on the
/// bare site operator for odd m (where the analytic amplitude formula is
/// asserted) and on the phased one for even m.
pub fn state_gaussian(cfg: &ModulusConfig, n_parts: usize) -> Result<ComplexMatrix> {
    let site = if cfg.m() % 2 == 1 {
        build_site_operator_bare(cfg, n_parts)?
    } else {
        build_site_operator(cfg, n_parts)?
    };
    let m = cfg.m();
    let s = 1.0 / (m as f64).sqrt();
    let mut out = ComplexMatrix::zeros(site.dim());
    let mut power = ComplexMatrix::identity(site.dim());
    for j in 0..m as i64 {
        if j > 0 {
            power = power.matmul(&site)?;
        }
        out = out.add(&power.scale(s * cfg.q_pow(j * j)))?;
    }
    Ok(out)
}

/// A site system whose site operator matches [`state_gaussian`]'s parity
/// convention, for parameter sweeps consistent with state generation.
pub fn state_site_system(
    cfg: &ModulusConfig,
    n_parts: usize,
    z: usize,
    n: usize,
) -> Result<SiteSystem> {
    crate::torus::check_window(n_parts, z)?;
    let site = if cfg.m() % 2 == 1 {
        build_site_operator_bare(cfg, n_parts)?
    } else {
        build_site_operator(cfg, n_parts)?
    };
    build_site_system_from_operator(cfg, n_parts, z, n, site)
}

/// Max componentwise distance between the Gaussian image of `|k⟩^{⊗N}` and
/// the analytic amplitudes, after quotienting out one global phase (the
/// first nonzero amplitude of each vector is rotated to be real-positive).
pub fn verify_state_formula(fam: &ParamOperatorFamily, k: usize) -> Result<f64> {
    let cfg = fam.cfg();
    if cfg.m() % 2 == 0 {
        return Err(Error::UnsupportedParity(cfg.m()));
    }
    let n_parts = fam.sys().n_parts();
    let s = state_gaussian(cfg, n_parts)?;
    let state = apply_to_product_state(&s, cfg.m(), n_parts, k)?;
    let analytic = analytic_amplitudes(cfg, k, n_parts)?;
    let got = phase_fixed(&state.amplitudes);
    let want = phase_fixed(&analytic);
    Ok(got
        .iter()
        .zip(want.iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

fn phase_fixed(v: &[C64]) -> Vec<C64> {
    let lead = v.iter().find(|a| a.norm() > 1e-12);
    match lead {
        Some(a) => {
            let rot = a.conj() / a.norm();
            v.iter().map(|x| x * rot).collect()
        }
        None => v.to_vec(),
    }
}

/// `‖ρ_site − Id/m‖_F` for the single-site reduced density matrix of the
/// state; 0 for a maximally entangled diagonal state.
pub fn reduced_density_check(state: &GhzLikeState, site: usize) -> Result<f64> {
    reduced_density_residual(&state.full_vector, site)
}

/// Same check for an arbitrary state vector.
pub fn reduced_density_residual(v: &StateVector, site: usize) -> Result<f64> {
    let m = v.m();
    let arity = v.arity();
    if site >= arity {
        return Err(Error::InvalidArgument(format!("site {site} out of range [0, {arity})")));
    }
    // Big-endian digits: site 0 is the most significant.
    let right = checked_pow(m, arity - site - 1)?;
    let left = v.dim() / (m * right);
    let mut rho = ComplexMatrix::zeros(m);
    for x in 0..m {
        for y in 0..m {
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..left {
                for r in 0..right {
                    let ix = (p * m + x) * right + r;
                    let iy = (p * m + y) * right + r;
                    acc += v.amps()[ix] * v.amps()[iy].conj();
                }
            }
            rho.set(x, y, acc);
        }
    }
    let target = ComplexMatrix::identity(m).scale(C64::new(1.0 / m as f64, 0.0));
    crate::matrix::frobenius_distance(&rho, &target)
}

/// A parameter sweep `a ↦ R̃_i(a)·φ(0)` stored densely at each grid point.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub a_grid: Vec<SpectralParam>,
    pub states: Vec<StateVector>,
}

impl Trajectory {
    /// CSV rows `a,basis_index,re,im`, one per nonzero amplitude (above
    /// 1e−12) per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a,basis_index,re,im\n");
        for (a, state) in self.a_grid.iter().zip(self.states.iter()) {
            for (idx, amp) in state.amps().iter().enumerate() {
                if amp.norm() > 1e-12 {
                    out.push_str(&format!("{a},{idx},{},{}\n", amp.re, amp.im));
                }
            }
        }
        out
    }
}

/// Evolve `phi0` through `φ(a) = R̃_i(a)·φ(0)` over the grid.
pub fn evolve(
    fam: &ParamOperatorFamily,
    i: usize,
    phi0: &StateVector,
    a_grid: &[SpectralParam],
) -> Result<Trajectory> {
    let sys = fam.sys();
    if phi0.dim() != sys.dim() {
        return Err(Error::DimensionMismatch(sys.dim(), phi0.dim()));
    }
    let (l, r) = sys.pads(i)?;
    let mut states = Vec::with_capacity(a_grid.len());
    for &a in a_grid {
        let core = fam.r_core(a)?;
        let amps = embedded_matvec(&core, l, r, phi0.amps())?;
        states.push(StateVector::new(phi0.m(), phi0.arity(), amps)?);
    }
    Ok(Trajectory { a_grid: a_grid.to_vec(), states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gybe::ParamOperatorFamily;

    fn cfg(m: usize) -> ModulusConfig {
        ModulusConfig::new(m).unwrap()
    }

    fn state_family(m: usize, n_parts: usize, z: usize, n: usize) -> ParamOperatorFamily {
        let c = cfg(m);
        ParamOperatorFamily::new(state_site_system(&c, n_parts, z, n).unwrap()).unwrap()
    }

    #[test]
    fn bell_pair_from_gaussian() {
        let c = cfg(2);
        let s = state_gaussian(&c, 2).unwrap();
        let st = apply_to_product_state(&s, 2, 2, 0).unwrap();
        for amp in &st.amplitudes {
            assert!((amp.norm() - 1.0 / 2f64.sqrt()).abs() < 1e-10);
        }
        assert!((st.full_vector.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn exponent_oracle() {
        // m=3, N=3, k=0: c_j = j² + 1 + j(j+1)/2 → (1, 3, 8).
        assert_eq!(analytic_exponents(0, 3, 3).unwrap(), vec![1, 3, 8]);
        // N=2 reduces to the Gaussian coefficients (k−j)².
        assert_eq!(analytic_exponents(1, 5, 2).unwrap(), vec![1, 0, 1, 4, 9]);
        // k = j term is k-independent: (m−1)(N−2)/2.
        for k in 0..5 {
            assert_eq!(analytic_exponents(k, 5, 4).unwrap()[k], 4);
        }
        assert!(matches!(analytic_exponents(0, 4, 3), Err(Error::UnsupportedParity(4))));
    }

    #[test]
    fn state_formula_matches_gaussian_image() {
        for (m, n_parts, z) in [(3, 2, 1), (3, 3, 2), (5, 2, 1), (5, 3, 2)] {
            let fam = state_family(m, n_parts, z, 2);
            for k in 0..m {
                let r = verify_state_formula(&fam, k).unwrap();
                assert!(r <= 1e-10, "(m={m}, N={n_parts}, k={k}): {r}");
            }
        }
    }

    #[test]
    fn even_m_diagonal_support_only() {
        let c = cfg(2);
        let s = state_gaussian(&c, 3).unwrap();
        let st = apply_to_product_state(&s, 2, 3, 1).unwrap();
        for amp in &st.amplitudes {
            assert!((amp.norm() - 1.0 / 2f64.sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn non_gaussian_operator_rejected() {
        // A permutation that moves |kk⟩ off the diagonal set.
        let mut p = ComplexMatrix::zeros(4);
        p.set(1, 0, C64::new(1.0, 0.0));
        p.set(0, 1, C64::new(1.0, 0.0));
        p.set(2, 2, C64::new(1.0, 0.0));
        p.set(3, 3, C64::new(1.0, 0.0));
        assert!(matches!(
            apply_to_product_state(&p, 2, 2, 0),
            Err(Error::NotDiagonalSupport { .. })
        ));
    }

    #[test]
    fn reduced_density_checks() {
        let c = cfg(3);
        let s = state_gaussian(&c, 3).unwrap();
        let st = apply_to_product_state(&s, 3, 3, 0).unwrap();
        for site in 0..3 {
            assert!(reduced_density_check(&st, site).unwrap() <= 1e-10);
        }
        // A product state reduces to a pure projector, distance ‖diag(1,0)−Id/2‖.
        let prod = StateVector::diagonal_product(2, 2, 0).unwrap();
        let d = reduced_density_residual(&prod, 0).unwrap();
        assert!((d - 0.5f64.sqrt()).abs() < 1e-12);
        // Bell state site 0 → exactly maximally mixed.
        let bell = StateVector::new(
            2,
            2,
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
        )
        .unwrap();
        assert!(reduced_density_residual(&bell, 0).unwrap() < 1e-12);
    }

    #[test]
    fn trajectory_endpoints_and_norms() {
        let fam = state_family(2, 2, 1, 2);
        let phi0 = StateVector::diagonal_product(2, 2, 0).unwrap();
        let grid: Vec<SpectralParam> = (0..=10)
            .map(|k| SpectralParam::Real(k as f64 / 10.0))
            .collect();
        let traj = evolve(&fam, 1, &phi0, &grid).unwrap();
        assert_eq!(traj.states.len(), 11);
        for s in &traj.states {
            assert!((s.norm() - 1.0).abs() < 1e-10);
        }
        // a = 1 endpoint is the initial state.
        let last = traj.states.last().unwrap();
        assert!((last.inner(&phi0).unwrap().norm() - 1.0).abs() < 1e-10);
        // a = 0 endpoint is the Gaussian image.
        let s = state_gaussian(fam.cfg(), 2).unwrap();
        let image = phi0.apply(&s).unwrap();
        assert!((traj.states[0].inner(&image).unwrap().norm() - 1.0).abs() < 1e-10);
    }
}
