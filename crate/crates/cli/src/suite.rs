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

//! The `verify` subcommand's residual suite: every relation family the
//! library asserts, evaluated on one (m, N, z, n) system over seeded random
//! parameters.

use gybe_core::coeffs::{
    verify_star_triangle_scalar, verify_unitarity_sum, ModulusConfig, SpectralParam,
};
use gybe_core::gybe::{check_gybe, ParamOperatorFamily};
use gybe_core::matrix::C64;
use gybe_core::report::{RelationReport, VerifyReport};
use gybe_core::states::{
    apply_to_product_state, reduced_density_check, state_gaussian, verify_state_formula,
};
use gybe_core::torus::{build_site_system, verify_torus_relations};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A real parameter in [−4, 4] bounded away from the special points.
fn sample_a(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let a: f64 = rng.gen_range(-4.0..4.0);
        if (a - 1.0).abs() > 1e-6 && (a + 1.0).abs() > 1e-6 && a.abs() > 1e-6 {
            return a;
        }
    }
}

/// A complex additive parameter with a positive imaginary part, which keeps
/// every sine denominator regular.
fn sample_alpha(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..1.5))
}

pub fn build_verify_report(
    m: usize,
    n_parts: usize,
    z: usize,
    n: usize,
    seed: u64,
    tolerance: f64,
) -> gybe_core::Result<VerifyReport> {
    let cfg = ModulusConfig::new(m)?;
    let sys = build_site_system(&cfg, n_parts, z, n)?;
    let fam = ParamOperatorFamily::new(sys)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::new(seed, tolerance);
    let gens = fam.sys().generator_count();
    let sys_params = serde_json::json!({ "m": m, "N": n_parts, "z": z, "n": n });

    // Torus relations (E1)-(E3).
    let torus = verify_torus_relations(fam.sys())?;
    for (name, residual) in
        [("torus_E1", torus.e1), ("torus_E2", torus.e2), ("torus_E3", torus.e3)]
    {
        report.push(RelationReport::new(name, sys_params.clone(), residual, tolerance));
    }

    // Generator unitarity (identity padding preserves the residual).
    let (_, site_res) = fam.sys().site().is_unitary(tolerance);
    report.push(RelationReport::new(
        "generator_unitarity",
        sys_params.clone(),
        site_res,
        tolerance,
    ));

    // Unitarity of R~(a) across a grid including the special points.
    let mut grid: Vec<SpectralParam> = (0..=20)
        .map(|t| SpectralParam::Real(-5.0 + 0.5 * t as f64))
        .collect();
    grid.extend([SpectralParam::PosInfinity, SpectralParam::NegInfinity]);
    let unit = fam.check_unitary_family(&grid)?;
    report.push(RelationReport::new(
        "unitary_family",
        serde_json::json!({ "grid_points": grid.len(), "worst_a": unit.worst_a.to_string() }),
        unit.max_residual,
        tolerance,
    ));

    // Multiplicative Yang-Baxter equation at sampled parameters/positions.
    if gens >= 2 {
        let mut worst = 0.0f64;
        let mut samples = Vec::new();
        for _ in 0..4 {
            let i = rng.gen_range(1..gens);
            let (a, b) = (sample_a(&mut rng), sample_a(&mut rng));
            samples.push(serde_json::json!({ "i": i, "a": a, "b": b }));
            worst = worst.max(fam.check_mult_ybe(i, a, b)?);
        }
        report.push(RelationReport::new(
            "mult_ybe",
            serde_json::json!({ "samples": samples }),
            worst,
            tolerance,
        ));

        // Additive (star-triangle) form with un-normalized coefficients.
        let mut worst = 0.0f64;
        let mut samples = Vec::new();
        for _ in 0..2 {
            let i = rng.gen_range(1..gens);
            let (al, ap) = (sample_alpha(&mut rng), sample_alpha(&mut rng));
            samples.push(serde_json::json!({
                "i": i, "alpha": [al.re, al.im], "alpha_prime": [ap.re, ap.im],
            }));
            worst = worst.max(fam.check_additive_ybe(i, al, ap)?);
        }
        report.push(RelationReport::new(
            "additive_ybe",
            serde_json::json!({ "samples": samples }),
            worst,
            tolerance,
        ));
    }

    // Far-commutativity of distant generators.
    if gens >= 3 {
        let mut worst = 0.0f64;
        let mut pairs = Vec::new();
        for i in 1..=gens {
            for j in (i + 2)..=gens {
                let (a, b) = (sample_a(&mut rng), sample_a(&mut rng));
                pairs.push(serde_json::json!({ "i": i, "j": j, "a": a, "b": b }));
                worst = worst.max(fam.check_far_commutativity(i, j, a, b)?);
            }
        }
        report.push(RelationReport::new(
            "far_commutativity",
            serde_json::json!({ "pairs": pairs }),
            worst,
            tolerance,
        ));
    }

    // The (z, N)-generalized YBE for the Gaussian operator.
    let gybe = check_gybe(&cfg, n_parts, z, &fam.gaussian_core())?;
    report.push(RelationReport::new(
        "gybe_eq1",
        sys_params.clone(),
        gybe.ybe_residual,
        tolerance,
    ));
    if let Some(fc) = gybe.far_comm_residual {
        report.push(RelationReport::new("gybe_far_commutativity", sys_params.clone(), fc, tolerance));
    }

    // Braid relations of the Gaussian operators and at the special points.
    if gens >= 2 {
        let braid = fam.check_braid_relations()?;
        report.push(RelationReport::new(
            "braid_gaussian",
            sys_params.clone(),
            braid.gaussian,
            tolerance,
        ));
        report.push(RelationReport::new(
            "braid_special_points",
            serde_json::json!({ "a": [0.0, 1.0] }),
            braid.max_special(),
            tolerance,
        ));
    }

    // Scalar identities.
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let a = sample_a(&mut rng);
        for j in 0..m {
            worst = worst.max(verify_unitarity_sum(&cfg, a, j)?);
        }
    }
    report.push(RelationReport::new(
        "unitarity_sum",
        serde_json::json!({ "samples": 3, "all_j": true }),
        worst,
        tolerance,
    ));

    let mut worst = 0.0f64;
    for _ in 0..5 {
        let (al, ap) = (sample_alpha(&mut rng), sample_alpha(&mut rng));
        let (n1, n2, n3) = (
            rng.gen_range(0..m as i64),
            rng.gen_range(0..m as i64),
            rng.gen_range(0..m as i64),
        );
        worst = worst.max(verify_star_triangle_scalar(&cfg, n1, n2, n3, al, ap)?);
    }
    report.push(RelationReport::new(
        "star_triangle",
        serde_json::json!({ "samples": 5 }),
        worst,
        tolerance,
    ));

    // Entangled-state checks.
    if m % 2 == 1 {
        let mut worst = 0.0f64;
        for k in 0..m {
            worst = worst.max(verify_state_formula(&fam, k)?);
        }
        report.push(RelationReport::new(
            "state_formula",
            serde_json::json!({ "all_k": true }),
            worst,
            tolerance,
        ));
    }
    let s = state_gaussian(&cfg, n_parts)?;
    let mut worst = 0.0f64;
    for k in 0..m {
        let st = apply_to_product_state(&s, m, n_parts, k)?;
        let inv_sqrt_m = 1.0 / (m as f64).sqrt();
        for amp in &st.amplitudes {
            worst = worst.max((amp.norm() - inv_sqrt_m).abs());
        }
        for site in 0..n_parts {
            worst = worst.max(reduced_density_check(&st, site)?);
        }
    }
    report.push(RelationReport::new(
        "maximal_entanglement",
        serde_json::json!({ "all_k": true, "all_sites": true }),
        worst,
        tolerance,
    ));

    Ok(report)
}
