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

//! Parameter-dependent Yang-Baxter operators `R̃_i(a) = Σ_j X̃_j(a) T_i^j`
//! built on a quantum-torus site system, the parameter-free Gaussian braid
//! operators `S_i = (1/√m) Σ_j q^{j²} T_i^j`, and residual checks for the
//! multiplicative/additive Yang-Baxter equations, far-commutativity, the
//! (z,N)-generalized YBE, braid relations, and unitarity.

use crate::coeffs::{x_additive, x_tilde, ModulusConfig, SpectralParam};
use crate::error::{Error, Result};
use crate::matrix::{
    check_cap, checked_pow, embed, embedded_mul_into, relative_residual, ComplexMatrix, C64,
};
use crate::torus::SiteSystem;

/// A site system together with the cached powers `M^0 … M^{m−1}` of its site
/// operator. Every `R̃_i(a)` is `Σ_j X̃_j(a) M^j` embedded at position `i`,
/// so assembly is an m-term linear combination at the site dimension.
#[derive(Clone, Debug)]
pub struct ParamOperatorFamily {
    sys: SiteSystem,
    site_powers: Vec<ComplexMatrix>,
}

impl ParamOperatorFamily {
    pub fn new(sys: SiteSystem) -> Result<Self> {
        let m = sys.cfg().m();
        let mut site_powers = Vec::with_capacity(m);
        site_powers.push(ComplexMatrix::identity(sys.site().dim()));
        for j in 1..m {
            site_powers.push(site_powers[j - 1].matmul(sys.site())?);
        }
        Ok(ParamOperatorFamily { sys, site_powers })
    }

    pub fn sys(&self) -> &SiteSystem {
        &self.sys
    }

    pub fn cfg(&self) -> &ModulusConfig {
        self.sys.cfg()
    }

    fn core_from_coeffs(&self, coeffs: &[C64]) -> ComplexMatrix {
        let dim = self.sys.site().dim();
        let mut out = ComplexMatrix::zeros(dim);
        for (j, c) in coeffs.iter().enumerate() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            out = out.add(&self.site_powers[j].scale(*c)).expect("same dim");
        }
        out
    }

    /// `Σ_j X̃_j(a) M^j` at the site dimension `m^N`.
    pub fn r_core(&self, a: SpectralParam) -> Result<ComplexMatrix> {
        let coeffs = x_tilde(self.cfg(), a)?;
        Ok(self.core_from_coeffs(&coeffs.values))
    }

    /// `Σ_j x_j(α) M^j` with the un-normalized additive coefficients.
    pub fn r_additive_core(&self, alpha: C64) -> Result<ComplexMatrix> {
        let m = self.cfg().m() as i64;
        let coeffs = (0..m)
            .map(|j| x_additive(self.cfg(), j, alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.core_from_coeffs(&coeffs))
    }

    /// `(1/√m) Σ_j q^{j²} M^j`. Coincides entrywise with `r_core(0)` since
    /// `q^{j²} = Q^{mj−j²}` exactly (`mj(1−j) ≡ 0 mod 2m`).
    pub fn gaussian_core(&self) -> ComplexMatrix {
        let cfg = self.cfg();
        let m = cfg.m() as i64;
        let s = 1.0 / (cfg.m() as f64).sqrt();
        let coeffs: Vec<C64> = (0..m).map(|j| s * cfg.q_pow(j * j)).collect();
        self.core_from_coeffs(&coeffs)
    }

    /// `R̃_i(a) = Σ_j X̃_j(a) T_i^j`, materialized at the full system
    /// dimension.
    pub fn r_tilde(&self, i: usize, a: SpectralParam) -> Result<ComplexMatrix> {
        self.sys.embed_core(&self.r_core(a)?, i)
    }

    /// The Gaussian braid operator `S_i`, materialized at the full system
    /// dimension.
    pub fn gaussian_s(&self, i: usize) -> Result<ComplexMatrix> {
        self.sys.embed_core(&self.gaussian_core(), i)
    }

    /// `A_{i1} · B_{i2} · C_{i3}` where each factor is a core embedded at the
    /// given generator position; evaluated right-to-left with structured
    /// products, `O(dim²·m^N)` per factor.
    fn embedded_product(&self, factors: &[(&ComplexMatrix, usize)]) -> Result<ComplexMatrix> {
        let (last, last_pos) = factors[factors.len() - 1];
        let mut acc = self.sys.embed_core(last, last_pos)?;
        for &(core, pos) in factors[..factors.len() - 1].iter().rev() {
            let (l, r) = self.sys.pads(pos)?;
            embedded_mul_into(core, l, r, &mut acc)?;
        }
        Ok(acc)
    }

    /// Relative residual of
    /// `R_i(a) R_{i+1}(ab) R_i(b) − R_{i+1}(b) R_i(ab) R_{i+1}(a)`
    /// with the normalized coefficients.
    pub fn check_mult_ybe(&self, i: usize, a: f64, b: f64) -> Result<f64> {
        let ra = self.r_core(SpectralParam::Real(a))?;
        let rb = self.r_core(SpectralParam::Real(b))?;
        let rab = self.r_core(SpectralParam::Real(a * b))?;
        let lhs = self.embedded_product(&[(&ra, i), (&rab, i + 1), (&rb, i)])?;
        let rhs = self.embedded_product(&[(&rb, i + 1), (&rab, i), (&ra, i + 1)])?;
        relative_residual(&lhs, &rhs)
    }

    /// Relative residual of the additive (star-triangle) form
    /// `R_i(α) R_{i+1}(α+α′) R_i(α′) − R_{i+1}(α′) R_i(α+α′) R_{i+1}(α)`
    /// with the un-normalized coefficients.
    pub fn check_additive_ybe(&self, i: usize, alpha: C64, alpha_prime: C64) -> Result<f64> {
        let ra = self.r_additive_core(alpha)?;
        let rp = self.r_additive_core(alpha_prime)?;
        let rs = self.r_additive_core(alpha + alpha_prime)?;
        let lhs = self.embedded_product(&[(&ra, i), (&rs, i + 1), (&rp, i)])?;
        let rhs = self.embedded_product(&[(&rp, i + 1), (&rs, i), (&ra, i + 1)])?;
        relative_residual(&lhs, &rhs)
    }

    /// Relative residual of `R_i(a) R_j(b) − R_j(b) R_i(a)` for `|i−j| ≥ 2`.
    pub fn check_far_commutativity(&self, i: usize, j: usize, a: f64, b: f64) -> Result<f64> {
        if i.abs_diff(j) < 2 {
            return Err(Error::InvalidArgument(format!(
                "far-commutativity needs |i-j| >= 2, got i={i}, j={j}"
            )));
        }
        let ra = self.r_core(SpectralParam::Real(a))?;
        let rb = self.r_core(SpectralParam::Real(b))?;
        let lhs = self.embedded_product(&[(&ra, i), (&rb, j)])?;
        let rhs = self.embedded_product(&[(&rb, j), (&ra, i)])?;
        relative_residual(&lhs, &rhs)
    }

    /// Max braid-relation residual of the operators `core` embedded at each
    /// position: `B_i B_{i+1} B_i` vs `B_{i+1} B_i B_{i+1}` over all adjacent
    /// `i`, plus `B_i B_j` vs `B_j B_i` over all `|i−j| ≥ 2`.
    pub fn braid_residual_of_core(&self, core: &ComplexMatrix) -> Result<f64> {
        let gens = self.sys.generator_count();
        let mut worst = 0.0f64;
        for i in 1..gens {
            let lhs = self.embedded_product(&[(core, i), (core, i + 1), (core, i)])?;
            let rhs = self.embedded_product(&[(core, i + 1), (core, i), (core, i + 1)])?;
            worst = worst.max(relative_residual(&lhs, &rhs)?);
        }
        for i in 1..=gens {
            for j in (i + 2)..=gens {
                let lhs = self.embedded_product(&[(core, i), (core, j)])?;
                let rhs = self.embedded_product(&[(core, j), (core, i)])?;
                worst = worst.max(relative_residual(&lhs, &rhs)?);
            }
        }
        Ok(worst)
    }

    /// Braid residual of `R̃(a)` at a given parameter; small exactly at the
    /// braid-compatible points `a ∈ {0, 1, ±∞}`.
    pub fn braid_residual_at(&self, a: SpectralParam) -> Result<f64> {
        self.braid_residual_of_core(&self.r_core(a)?)
    }

    /// Braid relations for the Gaussian operators, plus confirmation that
    /// the special parameter points reproduce braid representations.
    pub fn check_braid_relations(&self) -> Result<BraidReport> {
        if self.sys.n() < 3 {
            return Err(Error::InvalidArgument("braid relations need n >= 3".into()));
        }
        let gaussian = self.braid_residual_of_core(&self.gaussian_core())?;
        let mut special_points = Vec::new();
        for a in [SpectralParam::Real(0.0), SpectralParam::Real(1.0)] {
            special_points.push((a, self.braid_residual_at(a)?));
        }
        Ok(BraidReport { gaussian, special_points })
    }

    /// Max unitarity residual of `R̃_i(a)` over all generators and all grid
    /// points.
    ///
    /// The residual is computed on the core: for `T = Id ⊗ A ⊗ Id`,
    /// `T·T† − Id = Id ⊗ (A·A† − Id) ⊗ Id`, and identity padding rescales
    /// `‖T·T†−Id‖_F` and `‖T·T†‖_F ≥ 1` by the same factor, so the relative
    /// residual is exactly that of `A` (cross-checked densely in the tests).
    pub fn check_unitary_family(&self, a_grid: &[SpectralParam]) -> Result<UnitaryFamilyReport> {
        let mut worst = 0.0f64;
        let mut worst_a = a_grid.first().copied().unwrap_or(SpectralParam::Real(1.0));
        for &a in a_grid {
            let core = self.r_core(a)?;
            let (_, residual) = core.is_unitary(0.0);
            if residual > worst {
                worst = residual;
                worst_a = a;
            }
        }
        Ok(UnitaryFamilyReport {
            max_residual: worst,
            worst_a,
            generators: self.sys.generator_count(),
        })
    }
}

/// Result of [`ParamOperatorFamily::check_braid_relations`].
#[derive(Clone, Debug)]
pub struct BraidReport {
    /// Max residual over braid and far-commutation relations of the `S_i`.
    pub gaussian: f64,
    /// Braid residuals of `R̃(a)` at the special points `a ∈ {0, 1}`.
    pub special_points: Vec<(SpectralParam, f64)>,
}

impl BraidReport {
    pub fn max_special(&self) -> f64 {
        self.special_points.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }
}

/// Result of [`ParamOperatorFamily::check_unitary_family`].
#[derive(Clone, Debug)]
pub struct UnitaryFamilyReport {
    pub max_residual: f64,
    pub worst_a: SpectralParam,
    pub generators: usize,
}

/// Residuals of the (z,N)-generalized Yang-Baxter equation for a single
/// operator `R` of dimension `m^N`.
#[derive(Clone, Debug)]
pub struct GybeReport {
    /// `(R⊗Id_{m^z})(Id_{m^z}⊗R)(R⊗Id_{m^z}) − (Id_{m^z}⊗R)(R⊗Id_{m^z})(Id_{m^z}⊗R)`
    /// on `m^{N+z}` dimensions.
    pub ybe_residual: f64,
    /// Far-commutativity of the embeddings offset by `2z` on `m^{N+2z}`
    /// dimensions; holds precisely when `2z ≥ N`. `None` when that space
    /// exceeds the dimension cap.
    pub far_comm_residual: Option<f64>,
}

/// Check the (z,N)-generalized YBE and its far-commutativity companion for
/// an operator `R` of dimension `m^N`.
pub fn check_gybe(
    cfg: &ModulusConfig,
    n_parts: usize,
    z: usize,
    r: &ComplexMatrix,
) -> Result<GybeReport> {
    let expected = checked_pow(cfg.m(), n_parts)?;
    if r.dim() != expected {
        return Err(Error::DimensionMismatch(expected, r.dim()));
    }
    let pad = checked_pow(cfg.m(), z)?;

    // Triple-product relation on m^{N+z}.
    let dim = checked_pow(cfg.m(), n_parts + z)?;
    check_cap(dim)?;
    let mut lhs = embed(r, 0, 1, pad)?;
    embedded_mul_into(r, pad, 1, &mut lhs)?;
    embedded_mul_into(r, 1, pad, &mut lhs)?;
    let mut rhs = embed(r, 1, 0, pad)?;
    embedded_mul_into(r, 1, pad, &mut rhs)?;
    embedded_mul_into(r, pad, 1, &mut rhs)?;
    let ybe_residual = relative_residual(&lhs, &rhs)?;

    // Far-commutativity (separation 2): embeddings at offsets 0 and 2z on
    // m^{N+2z}.
    let far_comm_residual = match checked_pow(cfg.m(), n_parts + 2 * z)
        .and_then(|d| check_cap(d).map(|_| d))
    {
        Ok(_) => {
            let gap = pad * pad;
            let mut lhs = embed(r, 2, 0, pad)?;
            embedded_mul_into(r, 1, gap, &mut lhs)?;
            let mut rhs = embed(r, 0, 2, pad)?;
            embedded_mul_into(r, gap, 1, &mut rhs)?;
            Some(relative_residual(&lhs, &rhs)?)
        }
        Err(Error::DimensionCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };

    Ok(GybeReport { ybe_residual, far_comm_residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::frobenius_distance;
    use crate::torus::build_site_system;

    fn family(m: usize, n_parts: usize, z: usize, n: usize) -> ParamOperatorFamily {
        let cfg = ModulusConfig::new(m).unwrap();
        ParamOperatorFamily::new(build_site_system(&cfg, n_parts, z, n).unwrap()).unwrap()
    }

    /// α = m·i·log(1/a).
    fn alpha_of(m: usize, a: f64) -> C64 {
        C64::new(0.0, m as f64) * (1.0 / a).ln()
    }

    #[test]
    fn r_tilde_trivial_point() {
        let fam = family(3, 2, 1, 3);
        let r = fam.r_tilde(1, SpectralParam::Real(1.0)).unwrap();
        let d = frobenius_distance(&r, &ComplexMatrix::identity(r.dim())).unwrap();
        assert!(d < 1e-10);
    }

    #[test]
    fn r_tilde_minus_one_is_power_of_generator() {
        // m even: R̃_i(−1) = i·(−T_i)^{m/2}.
        for m in [2usize, 4] {
            let fam = family(m, 2, 1, 3);
            let r = fam.r_tilde(1, SpectralParam::Real(-1.0)).unwrap();
            let t = fam.sys().generator(1).unwrap();
            let mut pow = ComplexMatrix::identity(t.dim());
            for _ in 0..m / 2 {
                pow = pow.matmul(&t.scale(C64::new(-1.0, 0.0))).unwrap();
            }
            let expect = pow.scale(C64::new(0.0, 1.0));
            assert!(frobenius_distance(&r, &expect).unwrap() < 1e-8, "m={m}");
        }
    }

    #[test]
    fn gaussian_equals_r_tilde_at_zero() {
        for (m, n_parts, z) in [(2, 2, 1), (3, 2, 1), (3, 3, 2), (5, 2, 1)] {
            let fam = family(m, n_parts, z, 3);
            let g = fam.gaussian_core();
            let r0 = fam.r_core(SpectralParam::Real(0.0)).unwrap();
            assert!(frobenius_distance(&g, &r0).unwrap() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn gaussian_is_unitary_not_involutive() {
        let fam = family(2, 2, 1, 3);
        let s = fam.gaussian_s(1).unwrap();
        let (u, _) = s.is_unitary(1e-10);
        assert!(u);
        let s2 = s.matmul(&s).unwrap();
        let d = frobenius_distance(&s2, &ComplexMatrix::identity(s.dim())).unwrap();
        assert!(d > 0.5, "S² should differ from Id, distance {d}");

        let fam3 = family(3, 2, 1, 3);
        let s3 = fam3.gaussian_s(1).unwrap();
        let (u3, _) = s3.is_unitary(1e-10);
        assert!(u3);
        let mut cube = ComplexMatrix::identity(s3.dim());
        for _ in 0..3 {
            cube = cube.matmul(&s3).unwrap();
        }
        assert!(
            frobenius_distance(&cube, &ComplexMatrix::identity(s3.dim())).unwrap() > 0.5
        );
    }

    #[test]
    fn mult_ybe_examples() {
        let fam = family(2, 2, 1, 3);
        assert!(fam.check_mult_ybe(1, 2.0, 3.0).unwrap() <= 1e-9);
        assert!(fam.check_mult_ybe(1, 1.0, 1.0).unwrap() == 0.0);
        let fam = family(3, 3, 2, 3);
        assert!(fam.check_mult_ybe(1, 0.5, -2.0).unwrap() <= 1e-9);
    }

    #[test]
    fn additive_ybe_examples() {
        let fam = family(2, 2, 1, 3);
        let r = fam
            .check_additive_ybe(1, C64::new(0.8, 0.5), C64::new(-0.3, 0.9))
            .unwrap();
        assert!(r <= 1e-9, "{r}");
        assert!(fam.check_additive_ybe(1, C64::new(0.0, 0.0), C64::new(0.0, 0.0)).unwrap() == 0.0);

        // Cross-parameterization: α = mi·log(1/a) reproduces the
        // multiplicative check.
        let fam = family(5, 2, 1, 3);
        let r = fam
            .check_additive_ybe(1, alpha_of(5, 2.0), alpha_of(5, 3.0))
            .unwrap();
        assert!(r <= 1e-9, "{r}");
        assert!(fam.check_mult_ybe(1, 2.0, 3.0).unwrap() <= 1e-9);
    }

    #[test]
    fn far_commutativity_examples() {
        let fam = family(2, 2, 1, 4);
        assert!(fam.check_far_commutativity(1, 3, 2.0, 5.0).unwrap() <= 1e-10);
        assert!(fam.check_far_commutativity(1, 3, 1.0, 1.0).unwrap() == 0.0);
        let fam = family(3, 2, 1, 4);
        assert!(fam.check_far_commutativity(1, 3, 0.7, -2.3).unwrap() <= 1e-10);
        assert!(fam.check_far_commutativity(1, 2, 1.0, 1.0).is_err());
    }

    #[test]
    fn gybe_examples() {
        let cfg = ModulusConfig::new(2).unwrap();
        let id = ComplexMatrix::identity(4);
        let rep = check_gybe(&cfg, 2, 1, &id).unwrap();
        assert_eq!(rep.ybe_residual, 0.0);

        let fam = family(2, 3, 2, 3);
        let rep = check_gybe(&cfg, 3, 2, &fam.gaussian_core()).unwrap();
        assert!(rep.ybe_residual <= 1e-9);
        assert!(rep.far_comm_residual.unwrap() <= 1e-9);

        let cfg3 = ModulusConfig::new(3).unwrap();
        let fam = family(3, 2, 1, 3);
        let rep = check_gybe(&cfg3, 2, 1, &fam.gaussian_core()).unwrap();
        assert!(rep.ybe_residual <= 1e-9);
    }

    #[test]
    fn braid_relations_hold_at_special_points_only() {
        let fam = family(2, 2, 1, 4);
        let rep = fam.check_braid_relations().unwrap();
        assert!(rep.gaussian <= 1e-9, "{}", rep.gaussian);
        assert!(rep.max_special() <= 1e-9);
        let generic = fam.braid_residual_at(SpectralParam::Real(0.37)).unwrap();
        assert!(generic > 1e-3, "generic parameter should fail: {generic}");
    }

    #[test]
    fn unitary_family_and_inverse_parameter() {
        let fam = family(2, 2, 1, 3);
        let grid: Vec<SpectralParam> = (-10..=10)
            .map(|k| SpectralParam::Real(k as f64 / 2.0))
            .collect();
        let rep = fam.check_unitary_family(&grid).unwrap();
        assert!(rep.max_residual <= 1e-9, "{rep:?}");

        // Core residual equals the dense embedded residual.
        let (_, dense) = fam.r_tilde(1, SpectralParam::Real(2.5)).unwrap().is_unitary(0.0);
        let (_, core) = fam.r_core(SpectralParam::Real(2.5)).unwrap().is_unitary(0.0);
        assert!((dense - core).abs() < 1e-13);

        // R̃(a)·R̃(1/a) = Id.
        for a in [2.0, -3.0, 0.4] {
            let r1 = fam.r_core(SpectralParam::Real(a)).unwrap();
            let r2 = fam.r_core(SpectralParam::Real(1.0 / a)).unwrap();
            let p = r1.matmul(&r2).unwrap();
            let d = frobenius_distance(&p, &ComplexMatrix::identity(p.dim())).unwrap();
            assert!(d < 1e-9, "a={a}: {d}");
        }
    }
}
