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

//! Quantum-torus representations from generalized Pauli operators.
//!
//! The site operator `M = phase · σ_x ⊗ σ_y^{⊗N−1}` (dim `m^N`), embedded
//! with stride `m^z` as `T_i = Id_{m^z}^{⊗i−1} ⊗ M ⊗ Id_{m^z}^{⊗n−i−1}`,
//! realizes generators satisfying
//!
//! - (E1) `T_i^m = Id`
//! - (E2) `T_i T_j = T_j T_i` for `|i−j| ≠ 1`
//! - (E3) `T_i T_{i+1} = q² T_{i+1} T_i`
//!
//! exactly when `N/2 ≤ z ≤ N−1`; adjacent embeddings overlap on `N−z`
//! qudits.

use crate::coeffs::ModulusConfig;
use crate::error::{Error, Result};
use crate::matrix::{
    check_cap, checked_pow, embedded_mul_into, kron, relative_residual, ComplexMatrix, C64,
};

/// The generalized Pauli pair: `σ_x|i⟩ = q^i|i−1 mod m⟩`,
/// `σ_y|i⟩ = q^{−i}|i−1 mod m⟩`.
#[derive(Clone, Debug)]
pub struct PauliPair {
    pub sigma_x: ComplexMatrix,
    pub sigma_y: ComplexMatrix,
}

/// Build the generalized Pauli operators for the configured m.
pub fn build_paulis(cfg: &ModulusConfig) -> PauliPair {
    let m = cfg.m();
    let mut sigma_x = ComplexMatrix::zeros(m);
    let mut sigma_y = ComplexMatrix::zeros(m);
    for j in 0..m {
        let target = (j + m - 1) % m;
        sigma_x.set(target, j, cfg.q_pow(j as i64));
        sigma_y.set(target, j, cfg.q_pow(-(j as i64)));
    }
    PauliPair { sigma_x, sigma_y }
}

/// `σ_x ⊗ σ_y^{⊗N−1}` without the order-fixing phase. Has order m only
/// when m is odd; the analytic entangled-state amplitudes are stated for
/// this bare operator.
pub fn build_site_operator_bare(cfg: &ModulusConfig, n_parts: usize) -> Result<ComplexMatrix> {
    if n_parts < 2 {
        return Err(Error::InvalidArgument(format!("N must be >= 2, got {n_parts}")));
    }
    let paulis = build_paulis(cfg);
    let mut op = paulis.sigma_x;
    for _ in 1..n_parts {
        op = kron(&op, &paulis.sigma_y)?;
    }
    Ok(op)
}

/// The site operator `M = q^{(m−1)(N−2)/2} · σ_x ⊗ σ_y^{⊗N−1}`, with the
/// half-integral power of q evaluated on the branch
/// `exp(iπ(m−1)²(N−2)/(2m))`, which makes `M^m = Id` hold for every m.
pub fn build_site_operator(cfg: &ModulusConfig, n_parts: usize) -> Result<ComplexMatrix> {
    let bare = build_site_operator_bare(cfg, n_parts)?;
    let m = cfg.m() as f64;
    let phase = C64::from_polar(
        1.0,
        std::f64::consts::PI * (m - 1.0) * (m - 1.0) * (n_parts as f64 - 2.0) / (2.0 * m),
    );
    Ok(bare.scale(phase))
}

/// An `(m, N, z, n)` configuration with its site operator. Generators are
/// materialized on demand ([`SiteSystem::generator`]); verification works on
/// translation-invariant cores so the full `m^{N+z(n−2)}`-dimensional
/// matrices are only built when a caller asks for them.
#[derive(Clone, Debug)]
pub struct SiteSystem {
    cfg: ModulusConfig,
    n_parts: usize,
    z: usize,
    n: usize,
    total_arity: usize,
    site: ComplexMatrix,
}

/// Check the window `N/2 ≤ z ≤ N−1`, naming the violated inequality.
pub fn check_window(n_parts: usize, z: usize) -> Result<()> {
    if 2 * z < n_parts {
        return Err(Error::WindowViolation(format!(
            "z = {z} < N/2 = {}/2 violates 2z >= N",
            n_parts
        )));
    }
    if z > n_parts - 1 {
        return Err(Error::WindowViolation(format!(
            "z = {z} > N-1 = {} violates z <= N-1",
            n_parts - 1
        )));
    }
    Ok(())
}

/// Build an in-window site system with the standard (phased) site operator.
pub fn build_site_system(
    cfg: &ModulusConfig,
    n_parts: usize,
    z: usize,
    n: usize,
) -> Result<SiteSystem> {
    check_window(n_parts, z)?;
    build_site_system_unchecked(cfg, n_parts, z, n)
}

/// Build a site system without the window check (for sharpness experiments:
/// out-of-window systems violate (E2) or (E3), measurably).
pub fn build_site_system_unchecked(
    cfg: &ModulusConfig,
    n_parts: usize,
    z: usize,
    n: usize,
) -> Result<SiteSystem> {
    let site = build_site_operator(cfg, n_parts)?;
    build_site_system_from_operator(cfg, n_parts, z, n, site)
}

/// Build a site system around a caller-supplied site operator of dim `m^N`.
pub fn build_site_system_from_operator(
    cfg: &ModulusConfig,
    n_parts: usize,
    z: usize,
    n: usize,
    site: ComplexMatrix,
) -> Result<SiteSystem> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    if z < 1 {
        return Err(Error::InvalidArgument("z must be >= 1".into()));
    }
    let expected = checked_pow(cfg.m(), n_parts)?;
    if site.dim() != expected {
        return Err(Error::DimensionMismatch(expected, site.dim()));
    }
    let total_arity = n_parts + z * (n - 2);
    check_cap(checked_pow(cfg.m(), total_arity)?)?;
    Ok(SiteSystem { cfg: cfg.clone(), n_parts, z, n, total_arity, site })
}

impl SiteSystem {
    pub fn cfg(&self) -> &ModulusConfig {
        &self.cfg
    }

    /// N, the number of tensor parts each site operator acts on.
    pub fn n_parts(&self) -> usize {
        self.n_parts
    }

    /// z, the embedding stride.
    pub fn z(&self) -> usize {
        self.z
    }

    /// n; the system carries generators `T_1 … T_{n−1}`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_arity(&self) -> usize {
        self.total_arity
    }

    /// Total dimension `m^{N+z(n−2)}`.
    pub fn dim(&self) -> usize {
        checked_pow(self.cfg.m(), self.total_arity).expect("checked at construction")
    }

    /// `m^z`, the identity padding dimension per embedding step.
    pub fn pad_dim(&self) -> usize {
        checked_pow(self.cfg.m(), self.z).expect("checked at construction")
    }

    pub fn generator_count(&self) -> usize {
        self.n - 1
    }

    pub fn site(&self) -> &ComplexMatrix {
        &self.site
    }

    /// Materialize `T_i = Id_{m^z}^{⊗i−1} ⊗ M ⊗ Id_{m^z}^{⊗n−i−1}`
    /// (1-based `i`).
    pub fn generator(&self, i: usize) -> Result<ComplexMatrix> {
        self.embed_core(&self.site, i)
    }

    /// Embed any operator of the site dimension at generator position `i`.
    pub fn embed_core(&self, core: &ComplexMatrix, i: usize) -> Result<ComplexMatrix> {
        if i < 1 || i > self.generator_count() {
            return Err(Error::InvalidArgument(format!(
                "generator index {i} out of range [1, {}]",
                self.generator_count()
            )));
        }
        crate::matrix::embed(core, i - 1, self.n - i - 1, self.pad_dim())
    }

    /// Left/right identity pad dimensions for generator position `i`.
    pub fn pads(&self, i: usize) -> Result<(usize, usize)> {
        if i < 1 || i > self.generator_count() {
            return Err(Error::InvalidArgument(format!(
                "generator index {i} out of range [1, {}]",
                self.generator_count()
            )));
        }
        let left = checked_pow(self.pad_dim(), i - 1)?;
        let right = checked_pow(self.pad_dim(), self.n - i - 1)?;
        Ok((left, right))
    }
}

/// Max relative residuals of the three torus relations over all applicable
/// index pairs; 0.0 where a relation family is vacuous (too few generators).
#[derive(Clone, Copy, Debug)]
pub struct TorusReport {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl TorusReport {
    pub fn max(&self) -> f64 {
        self.e1.max(self.e2).max(self.e3)
    }
}

/// Verify (E1)–(E3) for a site system.
///
/// The products are evaluated on translation-invariant cores: for
/// generators `k = |i−j|` apart, `T_i T_j = Id ⊗ C ⊗ Id` exactly, with
/// `C = (M ⊗ Id_{m^{zk}})(Id_{m^{zk}} ⊗ M)` on `m^{N+zk}` dimensions —
/// identity padding rescales `‖L−R‖_F` and `‖L‖_F` by the same factor, so
/// the relative residual of the padded relation equals that of its core
/// (cross-checked against dense products in the tests). This keeps the
/// check `O(dim²·m^N)` instead of `O(dim³)` per pair.
pub fn verify_torus_relations(sys: &SiteSystem) -> Result<TorusReport> {
    let cfg = sys.cfg();
    let m = cfg.m();
    let site = sys.site();

    // (E1): T_i^m = Id, same residual for every i.
    let mut power = ComplexMatrix::identity(site.dim());
    for _ in 0..m {
        power = power.matmul(site)?;
    }
    let e1 = relative_residual(&power, &ComplexMatrix::identity(site.dim()))?;

    // (E3): adjacent pairs, core width N+z qudits.
    let e3 = if sys.generator_count() >= 2 {
        let (lhs, rhs) = offset_pair_products(sys, 1)?;
        relative_residual(&lhs, &rhs.scale(cfg.q2()))?
    } else {
        0.0
    };

    // (E2): distant pairs, one core per separation k.
    let mut e2 = 0.0f64;
    for k in 2..sys.n.saturating_sub(1) {
        let (lhs, rhs) = offset_pair_products(sys, k)?;
        e2 = e2.max(relative_residual(&lhs, &rhs)?);
    }

    Ok(TorusReport { e1, e2, e3 })
}

/// Core products `(M ⊗ Id_{m^{zk}})(Id_{m^{zk}} ⊗ M)` and the reversed
/// order, on `m^{N + zk}` dimensions.
fn offset_pair_products(sys: &SiteSystem, k: usize) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let cfg = sys.cfg();
    let site = sys.site();
    let gap = checked_pow(cfg.m(), sys.z() * k)?;
    let dim = checked_pow(cfg.m(), sys.n_parts() + sys.z() * k)?;
    check_cap(dim)?;

    // lhs = (M ⊗ I_gap) · (I_gap ⊗ M)
    let mut lhs = ComplexMatrix::identity(dim);
    embedded_mul_into(site, gap, 1, &mut lhs)?;
    embedded_mul_into(site, 1, gap, &mut lhs)?;

    // rhs = (I_gap ⊗ M) · (M ⊗ I_gap)
    let mut rhs = ComplexMatrix::identity(dim);
    embedded_mul_into(site, 1, gap, &mut rhs)?;
    embedded_mul_into(site, gap, 1, &mut rhs)?;

    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::frobenius_distance;

    fn cfg(m: usize) -> ModulusConfig {
        ModulusConfig::new(m).unwrap()
    }

    #[test]
    fn pauli_m2_entries() {
        // m=2 has q=i; column j is the image of |j⟩: σ_x = [[0, i], [1, 0]].
        let p = build_paulis(&cfg(2));
        assert!((p.sigma_x.get(0, 1) - C64::new(0.0, 1.0)).norm() < 1e-14);
        assert!((p.sigma_x.get(1, 0) - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(p.sigma_x.get(0, 0).norm() < 1e-14);
        assert!(p.sigma_x.get(1, 1).norm() < 1e-14);
    }

    #[test]
    fn pauli_commutation() {
        for m in 2..=5 {
            let c = cfg(m);
            let p = build_paulis(&c);
            let xy = p.sigma_x.matmul(&p.sigma_y).unwrap();
            let yx = p.sigma_y.matmul(&p.sigma_x).unwrap().scale(cfg(m).q2_pow(-1));
            assert!(frobenius_distance(&xy, &yx).unwrap() < 1e-12, "m={m}");
            let (ux, _) = p.sigma_x.is_unitary(1e-12);
            let (uy, _) = p.sigma_y.is_unitary(1e-12);
            assert!(ux && uy);
        }
    }

    #[test]
    fn pauli_order() {
        // σ_x^m = q^{m(m−1)/2}·Id.
        for m in 2..=6 {
            let c = cfg(m);
            let p = build_paulis(&c);
            let mut pow = ComplexMatrix::identity(m);
            for _ in 0..m {
                pow = pow.matmul(&p.sigma_x).unwrap();
            }
            let expect = ComplexMatrix::identity(m)
                .scale(c.q_pow((m * (m - 1) / 2) as i64));
            assert!(frobenius_distance(&pow, &expect).unwrap() < 1e-11, "m={m}");
        }
    }

    #[test]
    fn site_operator_n2_has_no_phase() {
        let c = cfg(3);
        let bare = build_site_operator_bare(&c, 2).unwrap();
        let phased = build_site_operator(&c, 2).unwrap();
        assert!(frobenius_distance(&bare, &phased).unwrap() < 1e-13);
    }

    #[test]
    fn site_operator_order_m() {
        for (m, n_parts) in [(2, 3), (3, 3), (2, 4), (4, 2), (3, 4)] {
            let c = cfg(m);
            let site = build_site_operator(&c, n_parts).unwrap();
            let mut pow = ComplexMatrix::identity(site.dim());
            for _ in 0..m {
                pow = pow.matmul(&site).unwrap();
            }
            let d = frobenius_distance(&pow, &ComplexMatrix::identity(site.dim())).unwrap();
            assert!(d < 1e-10, "m={m}, N={n_parts}: {d}");
            let (u, _) = site.is_unitary(1e-10);
            assert!(u);
        }
    }

    #[test]
    fn system_dimensions() {
        let s = build_site_system(&cfg(2), 2, 1, 3).unwrap();
        assert_eq!(s.dim(), 8);
        assert_eq!(s.generator_count(), 2);
        assert_eq!(s.generator(1).unwrap().dim(), 8);

        let s = build_site_system(&cfg(2), 3, 2, 3).unwrap();
        assert_eq!(s.dim(), 32);

        // N + z(n−2) = 2 + 2 = 4 tensor factors of C³.
        let s = build_site_system(&cfg(3), 2, 1, 4).unwrap();
        assert_eq!(s.dim(), 81);
        assert_eq!(s.generator_count(), 3);
    }

    #[test]
    fn window_violations() {
        assert!(matches!(
            build_site_system(&cfg(2), 4, 1, 4),
            Err(Error::WindowViolation(_))
        ));
        assert!(matches!(
            build_site_system(&cfg(2), 2, 2, 3),
            Err(Error::WindowViolation(_))
        ));
        assert!(build_site_system_unchecked(&cfg(2), 4, 1, 4).is_ok());
    }

    #[test]
    fn torus_relations_in_window() {
        for (m, n_parts, z, n) in [(2, 2, 1, 3), (2, 3, 2, 4), (3, 3, 2, 4), (3, 2, 1, 4)] {
            let sys = build_site_system(&cfg(m), n_parts, z, n).unwrap();
            let rep = verify_torus_relations(&sys).unwrap();
            assert!(rep.max() < 1e-10, "({m},{n_parts},{z},{n}): {rep:?}");
        }
    }

    #[test]
    fn torus_relations_sharpness() {
        // 2z < N breaks (E2).
        let sys = build_site_system_unchecked(&cfg(2), 4, 1, 4).unwrap();
        let rep = verify_torus_relations(&sys).unwrap();
        assert!(rep.e2 > 0.1, "E2 residual {0}", rep.e2);
        // z > N−1 breaks (E3).
        let sys = build_site_system_unchecked(&cfg(2), 2, 2, 3).unwrap();
        let rep = verify_torus_relations(&sys).unwrap();
        assert!(rep.e3 > 1e-3, "E3 residual {0}", rep.e3);
    }

    #[test]
    fn core_shortcut_matches_dense_products() {
        // The relative residuals computed on cores must equal those computed
        // from fully materialized generators.
        let sys = build_site_system(&cfg(2), 2, 1, 4).unwrap();
        let rep = verify_torus_relations(&sys).unwrap();

        let t: Vec<ComplexMatrix> =
            (1..=3).map(|i| sys.generator(i).unwrap()).collect();
        // E3 dense, worst over adjacent pairs.
        let mut e3 = 0.0f64;
        for i in 0..2 {
            let l = t[i].matmul(&t[i + 1]).unwrap();
            let r = t[i + 1].matmul(&t[i]).unwrap().scale(sys.cfg().q2());
            e3 = e3.max(relative_residual(&l, &r).unwrap());
        }
        // E2 dense for the single |i−j|=2 pair.
        let l = t[0].matmul(&t[2]).unwrap();
        let r = t[2].matmul(&t[0]).unwrap();
        let e2 = relative_residual(&l, &r).unwrap();

        assert!((rep.e3 - e3).abs() < 1e-12, "core {} vs dense {}", rep.e3, e3);
        assert!((rep.e2 - e2).abs() < 1e-12, "core {} vs dense {}", rep.e2, e2);
    }
}
