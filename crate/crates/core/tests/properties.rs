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

//! Property-based invariants across modules: randomized parameters, fixed
//! structural claims.

use gybe_core::coeffs::{
    x_additive, x_multiplicative, x_tilde, ModulusConfig, SpectralParam,
};
use gybe_core::gybe::ParamOperatorFamily;
use gybe_core::matrix::{frobenius_distance, kron, ComplexMatrix, C64};
use gybe_core::states::reduced_density_residual;
use gybe_core::torus::build_site_system;
use proptest::prelude::*;

fn cfg(m: usize) -> ModulusConfig {
    ModulusConfig::new(m).unwrap()
}

/// Real parameters bounded away from the removable singularities at ±1.
fn regular_a() -> impl Strategy<Value = f64> {
    (-4.0f64..4.0).prop_filter("avoid ±1 and 0", |a| {
        (a - 1.0).abs() > 1e-3 && (a + 1.0).abs() > 1e-3 && a.abs() > 1e-3
    })
}

/// A random m-dimensional unitary assembled from phases and a cyclic shift.
fn phase_shift_unitary(m: usize, phases: &[f64], shift: usize) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(m);
    for j in 0..m {
        u.set((j + shift) % m, j, C64::from_polar(1.0, phases[j % phases.len()]));
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_of_unitaries_is_unitary(
        p1 in proptest::collection::vec(0.0f64..std::f64::consts::TAU, 3),
        p2 in proptest::collection::vec(0.0f64..std::f64::consts::TAU, 4),
        s1 in 0usize..3,
        s2 in 0usize..4,
    ) {
        let a = phase_shift_unitary(3, &p1, s1);
        let b = phase_shift_unitary(4, &p2, s2);
        let (ok, r) = kron(&a, &b).unwrap().is_unitary(1e-12);
        prop_assert!(ok, "residual {r}");
    }

    #[test]
    fn unitary_preserves_vector_norms(
        phases in proptest::collection::vec(0.0f64..std::f64::consts::TAU, 4),
        shift in 0usize..4,
        raw in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 4),
    ) {
        let u = phase_shift_unitary(4, &phases, shift);
        let v: Vec<C64> = raw.iter().map(|(re, im)| C64::new(*re, *im)).collect();
        let norm_in: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        prop_assume!(norm_in > 1e-6);
        let w = u.matvec(&v).unwrap();
        let norm_out: f64 = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((norm_in - norm_out).abs() < 1e-12 * norm_in.max(1.0));
    }

    #[test]
    fn conjugation_symmetry_of_coefficients(m in 2usize..7, a in regular_a()) {
        let c = cfg(m);
        for j in 0..m as i64 {
            let x = x_multiplicative(&c, j, a).unwrap();
            let y = x_multiplicative(&c, j, 1.0 / a).unwrap();
            prop_assert!((x.conj() - y).norm() < 1e-10, "m={m}, a={a}, j={j}");
        }
    }

    #[test]
    fn change_of_variables(m in 2usize..7, a in 0.05f64..4.0) {
        prop_assume!((a - 1.0).abs() > 1e-3);
        let c = cfg(m);
        let alpha = C64::new(0.0, m as f64) * (1.0 / a).ln();
        for j in 0..m as i64 {
            let add = x_additive(&c, j, alpha).unwrap();
            let mul = x_multiplicative(&c, j, a).unwrap();
            prop_assert!((add - mul).norm() < 1e-10, "m={m}, a={a}, j={j}");
        }
    }

    #[test]
    fn additive_coefficients_are_m_periodic(
        m in 2usize..7,
        re in -2.0f64..2.0,
        im in 0.2f64..2.0,
    ) {
        let c = cfg(m);
        let alpha = C64::new(re, im);
        for j in 0..m as i64 {
            let a = x_additive(&c, j, alpha).unwrap();
            let b = x_additive(&c, j + m as i64, alpha).unwrap();
            prop_assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn coefficient_vector_stays_unitary(m in 2usize..6, a in regular_a()) {
        // Σ X̃_j(a) u^j is unitary for u = the m=?, N=2, z=1 site operator.
        let c = cfg(m);
        let fam = ParamOperatorFamily::new(
            build_site_system(&c, 2, 1, 3).unwrap(),
        ).unwrap();
        let core = fam.r_core(SpectralParam::Real(a)).unwrap();
        let (ok, r) = core.is_unitary(1e-9);
        prop_assert!(ok, "m={m}, a={a}: residual {r}");
    }

    #[test]
    fn mult_ybe_random_parameters(a in regular_a(), b in regular_a()) {
        let fam = ParamOperatorFamily::new(
            build_site_system(&cfg(2), 2, 1, 3).unwrap(),
        ).unwrap();
        let r = fam.check_mult_ybe(1, a, b).unwrap();
        prop_assert!(r <= 1e-9, "a={a}, b={b}: {r}");
    }

    #[test]
    fn inverse_parameter_gives_inverse_operator(a in regular_a()) {
        let fam = ParamOperatorFamily::new(
            build_site_system(&cfg(3), 2, 1, 3).unwrap(),
        ).unwrap();
        let r1 = fam.r_core(SpectralParam::Real(a)).unwrap();
        let r2 = fam.r_core(SpectralParam::Real(1.0 / a)).unwrap();
        let p = r1.matmul(&r2).unwrap();
        let d = frobenius_distance(&p, &ComplexMatrix::identity(p.dim())).unwrap();
        prop_assert!(d < 1e-9, "a={a}: {d}");
    }

    #[test]
    fn gaussian_images_are_maximally_entangled(m in 2usize..5, k in 0usize..2) {
        prop_assume!(k < m);
        let c = cfg(m);
        let s = gybe_core::states::state_gaussian(&c, 3).unwrap();
        let st = gybe_core::states::apply_to_product_state(&s, m, 3, k).unwrap();
        for site in 0..3 {
            let d = reduced_density_residual(&st.full_vector, site).unwrap();
            prop_assert!(d <= 1e-10, "m={m}, k={k}, site={site}: {d}");
        }
    }
}

#[test]
fn limit_agreement_at_large_parameters() {
    for m in 2..=7 {
        let c = cfg(m);
        let lim = x_tilde(&c, SpectralParam::NegInfinity).unwrap();
        let big = x_tilde(&c, SpectralParam::Real(-1e8)).unwrap();
        for j in 0..m {
            assert!((lim.values[j] - big.values[j]).norm() < 1e-6, "m={m}, j={j}");
        }
    }
}

#[test]
fn star_triangle_full_sweep_small_m() {
    // Every index triple at m = 2 and 3 with a handful of regular parameters.
    for m in [2usize, 3] {
        let c = cfg(m);
        for (al, ap) in [
            (C64::new(0.8, 0.5), C64::new(-0.4, 0.9)),
            (C64::new(-1.2, 0.3), C64::new(0.6, 1.4)),
            (C64::new(0.2, 1.0), C64::new(1.5, 0.7)),
        ] {
            for n1 in 0..m as i64 {
                for n2 in 0..m as i64 {
                    for n3 in 0..m as i64 {
                        let r = gybe_core::coeffs::verify_star_triangle_scalar(
                            &c, n1, n2, n3, al, ap,
                        )
                        .unwrap();
                        assert!(r <= 1e-9, "m={m} ({n1},{n2},{n3}): {r}");
                    }
                }
            }
        }
    }
}
