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

//! `gybe` — build Gaussian generalized Yang-Baxter operators, verify their
//! algebraic identities, and generate the entangled states they produce.
//!
//! Exit codes: 0 = all checks pass, 1 = a residual exceeded the tolerance,
//! 2 = configuration error (bad flags, window violation, dimension cap).

#![forbid(unsafe_code)]

mod suite;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gybe_core::coeffs::{x_tilde, ModulusConfig, SpectralParam};
use gybe_core::gybe::ParamOperatorFamily;
use gybe_core::states::{
    analytic_exponents, apply_to_product_state, evolve, state_gaussian, state_site_system,
};
use gybe_core::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "gybe",
    version,
    about = "Gaussian generalized Yang-Baxter operators: coefficients, verification, states, sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normalized spectral coefficients X̃_j(a).
    Coeffs {
        /// Level count m >= 2.
        #[arg(long)]
        m: usize,
        /// Spectral parameter; repeatable; accepts reals plus "inf"/"-inf".
        #[arg(long = "a", required = true, allow_hyphen_values = true)]
        a: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full residual verification suite for one (m, N, z, n) system.
    Verify {
        #[arg(long)]
        m: usize,
        /// Parts per site operator.
        #[arg(long = "N")]
        n_parts: usize,
        /// Embedding stride; must satisfy N/2 <= z <= N-1.
        #[arg(long)]
        z: usize,
        /// Generator count plus one (generators T_1 ... T_{n-1}).
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Residual tolerance (relative Frobenius).
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the amplitudes of the Gaussian image S|k>^(tensor N).
    States {
        #[arg(long)]
        m: usize,
        #[arg(long = "N")]
        n_parts: usize,
        /// Basis level of the input product state.
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the spectral parameter as an evolution of an initial state.
    Sweep {
        #[arg(long)]
        m: usize,
        #[arg(long = "N")]
        n_parts: usize,
        #[arg(long)]
        z: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Inclusive grid "start:stop:steps".
        #[arg(long = "a-range", default_value = "0:1:11", allow_hyphen_values = true)]
        a_range: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> gybe_core::Result<i32> {
    match cli.command {
        Command::Coeffs { m, a, format, out } => cmd_coeffs(m, &a, format, out.as_deref()),
        Command::Verify { m, n_parts, z, n, seed, tolerance, format, out } => {
            cmd_verify(m, n_parts, z, n, seed, tolerance, format, out.as_deref())
        }
        Command::States { m, n_parts, k, format, out } => {
            cmd_states(m, n_parts, k, format, out.as_deref())
        }
        Command::Sweep { m, n_parts, z, n, a_range, k, out } => {
            cmd_sweep(m, n_parts, z, n, &a_range, k, out.as_deref())
        }
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> gybe_core::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| gybe_core::Error::InvalidArgument(format!("cannot write {path:?}: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_coeffs(
    m: usize,
    a_raw: &[String],
    format: Format,
    out: Option<&std::path::Path>,
) -> gybe_core::Result<i32> {
    let cfg = ModulusConfig::new(m)?;
    let params = a_raw
        .iter()
        .map(|s| s.parse::<SpectralParam>())
        .collect::<gybe_core::Result<Vec<_>>>()?;
    let tables = params
        .iter()
        .map(|&a| x_tilde(&cfg, a))
        .collect::<gybe_core::Result<Vec<_>>>()?;

    let text = match format {
        Format::Csv => {
            let mut s = String::from("a,kind,j,re,im\n");
            for t in &tables {
                for (j, v) in t.values.iter().enumerate() {
                    s.push_str(&format!("{},{},{j},{},{}\n", t.a, t.kind, v.re, v.im));
                }
            }
            s
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = tables
                .iter()
                .map(|t| {
                    serde_json::json!({
                        "a": t.a.to_string(),
                        "kind": t.kind.to_string(),
                        "values": t.values.iter().map(|v| vec![v.re, v.im]).collect::<Vec<_>>(),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&arr).expect("serializable")
        }
    };
    emit(&text, out)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    m: usize,
    n_parts: usize,
    z: usize,
    n: usize,
    seed: u64,
    tolerance: f64,
    format: Format,
    out: Option<&std::path::Path>,
) -> gybe_core::Result<i32> {
    let report = suite::build_verify_report(m, n_parts, z, n, seed, tolerance)?;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable"),
        Format::Csv => report.to_csv(),
    };
    emit(&text, out)?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn cmd_states(
    m: usize,
    n_parts: usize,
    k: usize,
    format: Format,
    out: Option<&std::path::Path>,
) -> gybe_core::Result<i32> {
    let cfg = ModulusConfig::new(m)?;
    let s = state_gaussian(&cfg, n_parts)?;
    let state = apply_to_product_state(&s, m, n_parts, k)?;
    let exponents = if m % 2 == 1 {
        Some(analytic_exponents(k, m, n_parts)?)
    } else {
        None
    };

    let text = match format {
        Format::Csv => {
            let mut out = String::from("j,re,im,abs,exponent\n");
            for (j, amp) in state.amplitudes.iter().enumerate() {
                let e = exponents
                    .as_ref()
                    .map(|v| v[j].to_string())
                    .unwrap_or_default();
                out.push_str(&format!("{j},{},{},{},{e}\n", amp.re, amp.im, amp.norm()));
            }
            out
        }
        Format::Json => serde_json::to_string_pretty(&serde_json::json!({
            "m": m,
            "N": n_parts,
            "k": k,
            "amplitudes": state
                .amplitudes
                .iter()
                .enumerate()
                .map(|(j, amp)| {
                    serde_json::json!({
                        "j": j,
                        "re": amp.re,
                        "im": amp.im,
                        "abs": amp.norm(),
                        "exponent": exponents.as_ref().map(|v| v[j]),
                    })
                })
                .collect::<Vec<_>>(),
        }))
        .expect("serializable"),
    };
    emit(&text, out)?;
    Ok(0)
}

/// Parse an inclusive grid "start:stop:steps".
fn parse_a_range(spec: &str) -> gybe_core::Result<Vec<SpectralParam>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(gybe_core::Error::Parse(format!(
            "a-range must be start:stop:steps, got {spec:?}"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|e| gybe_core::Error::Parse(format!("bad start in {spec:?}: {e}")))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|e| gybe_core::Error::Parse(format!("bad stop in {spec:?}: {e}")))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|e| gybe_core::Error::Parse(format!("bad steps in {spec:?}: {e}")))?;
    if steps == 0 {
        return Err(gybe_core::Error::Parse("steps must be >= 1".into()));
    }
    if steps == 1 {
        return Ok(vec![SpectralParam::Real(start)]);
    }
    Ok((0..steps)
        .map(|t| SpectralParam::Real(start + (stop - start) * t as f64 / (steps - 1) as f64))
        .collect())
}

fn cmd_sweep(
    m: usize,
    n_parts: usize,
    z: usize,
    n: usize,
    a_range: &str,
    k: usize,
    out: Option<&std::path::Path>,
) -> gybe_core::Result<i32> {
    let cfg = ModulusConfig::new(m)?;
    let grid = parse_a_range(a_range)?;
    let sys = state_site_system(&cfg, n_parts, z, n)?;
    let total_arity = sys.total_arity();
    let fam = ParamOperatorFamily::new(sys)?;
    let phi0 = StateVector::diagonal_product(m, total_arity, k)?;
    let traj = evolve(&fam, 1, &phi0, &grid)?;
    emit(&traj.to_csv(), out)?;
    Ok(0)
}
