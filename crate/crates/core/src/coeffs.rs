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

//! Fateev–Zamolodchikov spectral coefficients: the additive family `x_j(α)`,
//! the multiplicative family `X_j(a)`, the unitarity-normalized family
//! `X̃_j(a)` with all limit points handled in closed form, and the scalar
//! identities (star-triangle and unitarity sum) that make the operator-level
//! Yang-Baxter and unitarity statements work.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::C64;

/// Fixes the level count `m` and the root-of-unity conventions:
/// `Q = exp(iπ/m)`, `q = exp(iπ(m−1)/m)` (so `q = −exp(−iπ/m)`), and
/// `q² = exp(−2πi/m)`, a primitive m-th root of unity.
#[derive(Clone, Debug)]
pub struct ModulusConfig {
    m: usize,
    big_q: C64,
    q: C64,
    q2: C64,
}

impl ModulusConfig {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("m must be >= 2, got {m}")));
        }
        let mf = m as f64;
        Ok(ModulusConfig {
            m,
            big_q: Complex64::from_polar(1.0, std::f64::consts::PI / mf),
            q: Complex64::from_polar(1.0, std::f64::consts::PI * (mf - 1.0) / mf),
            q2: Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI / mf),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `Q = exp(iπ/m)`.
    pub fn big_q(&self) -> C64 {
        self.big_q
    }

    /// `q = exp(iπ(m−1)/m)`.
    pub fn q(&self) -> C64 {
        self.q
    }

    /// `q² = exp(−2πi/m)`.
    pub fn q2(&self) -> C64 {
        self.q2
    }

    /// `Q^k` for any integer `k`, evaluated by angle (no power-loop drift).
    pub fn big_q_pow(&self, k: i64) -> C64 {
        Complex64::from_polar(1.0, std::f64::consts::PI * k as f64 / self.m as f64)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> C64 {
        Complex64::from_polar(
            1.0,
            std::f64::consts::PI * (self.m as f64 - 1.0) * k as f64 / self.m as f64,
        )
    }

    /// `(q²)^k` for any integer `k`.
    pub fn q2_pow(&self, k: i64) -> C64 {
        Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / self.m as f64)
    }

    /// Reduce an integer subscript into `[0, m)`.
    pub fn reduce(&self, j: i64) -> usize {
        j.rem_euclid(self.m as i64) as usize
    }
}

/// The spectral parameter: a real number or one of the `±∞` limit tokens.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralParam {
    Real(f64),
    PosInfinity,
    NegInfinity,
}

impl SpectralParam {
    pub fn as_real(&self) -> Option<f64> {
        match self {
            SpectralParam::Real(a) => Some(*a),
            _ => None,
        }
    }
}

impl std::fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpectralParam::Real(a) => write!(f, "{a}"),
            SpectralParam::PosInfinity => write!(f, "inf"),
            SpectralParam::NegInfinity => write!(f, "-inf"),
        }
    }
}

impl std::str::FromStr for SpectralParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" => Ok(SpectralParam::PosInfinity),
            "-inf" | "-infinity" => Ok(SpectralParam::NegInfinity),
            other => other
                .parse::<f64>()
                .map(SpectralParam::Real)
                .map_err(|e| Error::Parse(format!("bad spectral parameter {other:?}: {e}"))),
        }
    }
}

/// Which branch produced a coefficient vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    Regular,
    LimitAEq1,
    LimitAEqMinus1,
    LimitAEq0,
    LimitAToInfinity,
}

impl std::fmt::Display for LimitKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LimitKind::Regular => "regular",
            LimitKind::LimitAEq1 => "limit_a_eq_1",
            LimitKind::LimitAEqMinus1 => "limit_a_eq_minus1",
            LimitKind::LimitAEq0 => "limit_a_eq_0",
            LimitKind::LimitAToInfinity => "limit_a_to_infinity",
        };
        write!(f, "{s}")
    }
}

/// The vector `(X̃_0(a), …, X̃_{m−1}(a))` for one spectral parameter.
#[derive(Clone, Debug)]
pub struct SpectralCoefficients {
    pub m: usize,
    pub a: SpectralParam,
    pub values: Vec<C64>,
    pub kind: LimitKind,
}

/// Parameters closer than this to a special point are routed to the
/// closed-form limit instead of naive evaluation.
pub const LIMIT_GUARD: f64 = 1e-9;

/// Additive-form coefficient
/// `x_j(α) = Π_{k=0}^{j−1} sin((2kπ+α)/(2m)) / sin((2(k+1)π−α)/(2m))`;
/// the subscript is reduced mod m (the coefficients multiply `u^j` with
/// `u^m = 1`, and the product is m-periodic in `j`).
pub fn x_additive(cfg: &ModulusConfig, j: i64, alpha: C64) -> Result<C64> {
    let jr = cfg.reduce(j);
    let two_m = 2.0 * cfg.m() as f64;
    let mut out = C64::new(1.0, 0.0);
    for k in 0..jr {
        let kf = k as f64;
        let num = ((C64::new(2.0 * kf * std::f64::consts::PI, 0.0) + alpha) / two_m).sin();
        let den = ((C64::new(2.0 * (kf + 1.0) * std::f64::consts::PI, 0.0) - alpha) / two_m).sin();
        if den.norm() < 1e-14 {
            return Err(Error::SingularDenominator {
                context: format!("x_additive at j={jr}, k={k}"),
            });
        }
        out *= num / den;
    }
    Ok(out)
}

/// Multiplicative-form coefficient
/// `X_j(a) = Π_{k=0}^{j−1} (aQ^k − Q^{−k}) / (Q^{k+1} − aQ^{−k−1})`.
///
/// The only real singularity is at `a = −1` with `m` even and `j ≥ m/2`.
pub fn x_multiplicative(cfg: &ModulusConfig, j: i64, a: f64) -> Result<C64> {
    let jr = cfg.reduce(j);
    let mut out = C64::new(1.0, 0.0);
    for k in 0..jr as i64 {
        let num = a * cfg.big_q_pow(k) - cfg.big_q_pow(-k);
        let den = cfg.big_q_pow(k + 1) - a * cfg.big_q_pow(-(k + 1));
        if den.norm() < 1e-12 {
            return Err(Error::SingularDenominator {
                context: format!("x_multiplicative at j={jr}, k={k}, a={a}"),
            });
        }
        out *= num / den;
    }
    Ok(out)
}

/// The radicand `(a+1)(a^m−1) / (m(a−1)(a^m+1))` in a cancellation-free
/// polynomial form: for odd m it equals `Σa^k / (m·Σ(−a)^k)`, for even m
/// `(a+1)·Σa^k / (m·(a^m+1))` (sums over `k = 0..m−1`). Positive for every
/// real `a ∉ {±1}`.
fn radicand(cfg: &ModulusConfig, a: f64) -> f64 {
    let m = cfg.m();
    let mut geo = 0.0;
    let mut alt = 0.0;
    let mut p = 1.0;
    for k in 0..m {
        geo += p;
        alt += if k % 2 == 0 { p } else { -p };
        p *= a;
    }
    // After the loop, p = a^m.
    if m % 2 == 1 {
        geo / (m as f64 * alt)
    } else {
        (a + 1.0) * geo / (m as f64 * (p + 1.0))
    }
}

/// The unitarity normalization `((a+1)(a^m−1)/(m(a−1)(a^m+1)))^{1/2}`,
/// taken as the positive real root. Callers must route `a = ±1` to the
/// limit formulas of [`x_tilde`].
pub fn normalization_factor(cfg: &ModulusConfig, a: f64) -> Result<f64> {
    if (a - 1.0).abs() < LIMIT_GUARD || (a + 1.0).abs() < LIMIT_GUARD {
        return Err(Error::InvalidArgument(format!(
            "normalization_factor is undefined at a = ±1 (got a = {a}); use the limit forms"
        )));
    }
    let r = radicand(cfg, a);
    debug_assert!(r > 0.0, "radicand must be positive, got {r} at a={a}");
    Ok(r.max(0.0).sqrt())
}

/// The full normalized coefficient vector `X̃_j(a) = normalization · X_j(a)`
/// with all special points resolved in closed form:
/// `a=1 → δ_{j0}` (trivial solution), `a=−1` with even m →
/// `i·(−1)^{m/2}·δ_{j,m/2}`, `a=0 → (1/√m)·Q^{mj−j²}` (the Gaussian point),
/// `a=±∞ → (1/√m)·(−1)^j·Q^{j²}` (ratio of leading coefficients).
pub fn x_tilde(cfg: &ModulusConfig, a: SpectralParam) -> Result<SpectralCoefficients> {
    let m = cfg.m();
    let sqrt_m_inv = 1.0 / (m as f64).sqrt();
    let (values, kind) = match a {
        SpectralParam::PosInfinity | SpectralParam::NegInfinity => {
            let values = (0..m as i64)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    sqrt_m_inv * sign * cfg.big_q_pow(j * j)
                })
                .collect();
            (values, LimitKind::LimitAToInfinity)
        }
        SpectralParam::Real(a) if (a - 1.0).abs() < LIMIT_GUARD => {
            let mut values = vec![C64::new(0.0, 0.0); m];
            values[0] = C64::new(1.0, 0.0);
            (values, LimitKind::LimitAEq1)
        }
        SpectralParam::Real(a) if m % 2 == 0 && (a + 1.0).abs() < LIMIT_GUARD => {
            let mut values = vec![C64::new(0.0, 0.0); m];
            let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
            values[m / 2] = C64::new(0.0, sign);
            (values, LimitKind::LimitAEqMinus1)
        }
        SpectralParam::Real(a) if a.abs() < LIMIT_GUARD => {
            let values = (0..m as i64)
                .map(|j| sqrt_m_inv * cfg.big_q_pow(m as i64 * j - j * j))
                .collect();
            (values, LimitKind::LimitAEq0)
        }
        SpectralParam::Real(a) => {
            // For odd m, a = −1 is a regular point (the radicand is 1/m²);
            // only the sqrt-of-ratio form is singular there, so evaluate the
            // cancellation-free radicand directly.
            let norm = radicand(cfg, a).max(0.0).sqrt();
            let values = (0..m as i64)
                .map(|j| x_multiplicative(cfg, j, a).map(|x| norm * x))
                .collect::<Result<Vec<_>>>()?;
            (values, LimitKind::Regular)
        }
    };
    Ok(SpectralCoefficients { m, a, values, kind })
}

/// Residual of the unitarity sum: `|Σ_n X_n(a)·X_{n+j mod m}(1/a) − target|`
/// with `target = 0` for `j > 0` and
/// `target = m(a−1)(a^m+1)/((a+1)(a^m−1))` (the inverse squared
/// normalization) for `j = 0`.
pub fn verify_unitarity_sum(cfg: &ModulusConfig, a: f64, j: usize) -> Result<f64> {
    if a == 0.0 {
        return Err(Error::InvalidArgument("unitarity sum needs a != 0 (uses 1/a)".into()));
    }
    if (a - 1.0).abs() < LIMIT_GUARD || (a + 1.0).abs() < LIMIT_GUARD {
        return Err(Error::InvalidArgument(format!(
            "unitarity sum is undefined at a = ±1 (got a = {a})"
        )));
    }
    let m = cfg.m();
    if j >= m {
        return Err(Error::InvalidArgument(format!("j = {j} out of range [0, {m})")));
    }
    let inv = 1.0 / a;
    let mut sum = C64::new(0.0, 0.0);
    for n in 0..m {
        sum += x_multiplicative(cfg, n as i64, a)?
            * x_multiplicative(cfg, (n + j) as i64, inv)?;
    }
    let target = if j == 0 {
        C64::new(1.0 / radicand(cfg, a), 0.0)
    } else {
        C64::new(0.0, 0.0)
    };
    Ok((sum - target).norm())
}

/// One instance of the scalar star-triangle coefficient identity: the
/// residual `|L − R|` of
///
/// ```text
/// L(p, r) = Σ_ℓ x_{p−ℓ}(α) · x_r(α+α′) · x_ℓ(α′) · (q²)^{−r·ℓ}
/// R(p, r) = Σ_ℓ x_ℓ(α′) · x_p(α+α′) · x_{r−ℓ}(α) · (q²)^{−p·ℓ}
/// ```
///
/// obtained by matching the coefficient of `u_i^p u_{i+1}^r` on the two
/// sides of the operator star-triangle relation after normal-ordering with
/// `u_i u_{i+1} = q² u_{i+1} u_i`. All subscripts reduce mod m.
fn star_triangle_instance(
    cfg: &ModulusConfig,
    p: i64,
    r: i64,
    alpha: C64,
    alpha_prime: C64,
) -> Result<f64> {
    let m = cfg.m() as i64;
    let sum = alpha + alpha_prime;
    let mut lhs = C64::new(0.0, 0.0);
    let mut rhs = C64::new(0.0, 0.0);
    for l in 0..m {
        lhs += x_additive(cfg, p - l, alpha)?
            * x_additive(cfg, r, sum)?
            * x_additive(cfg, l, alpha_prime)?
            * cfg.q2_pow(-r * l);
        rhs += x_additive(cfg, l, alpha_prime)?
            * x_additive(cfg, p, sum)?
            * x_additive(cfg, r - l, alpha)?
            * cfg.q2_pow(-p * l);
    }
    Ok((lhs - rhs).norm())
}

/// Scalar star-triangle residual for an index triple: evaluates the
/// two-index identity of [`star_triangle_instance`] at the pairs
/// `(n1, n2)` and `(n1, n3)` and returns the larger residual. Looping over
/// all triples therefore exercises every coefficient of the operator
/// relation.
pub fn verify_star_triangle_scalar(
    cfg: &ModulusConfig,
    n1: i64,
    n2: i64,
    n3: i64,
    alpha: C64,
    alpha_prime: C64,
) -> Result<f64> {
    let r12 = star_triangle_instance(cfg, n1, n2, alpha, alpha_prime)?;
    let r13 = star_triangle_instance(cfg, n1, n3, alpha, alpha_prime)?;
    Ok(r12.max(r13))
}
