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

//! Gaussian generalized Yang-Baxter operators and the entangled states they
//! generate.
//!
//! The crate builds parameter-dependent solutions `R̃(a) = Σ_j X̃_j(a) u^j`
//! of the (z, N)-generalized Yang-Baxter equation from representations of a
//! quantum torus at a root of unity, and provides numerical verifiers for
//! every algebraic identity involved: the multiplicative and additive
//! Yang-Baxter equations, far-commutativity, unitarity, the torus relations,
//! and the scalar coefficient identities underlying them.
//!
//! All verifiers report relative Frobenius residuals; nothing is assumed,
//! everything is measured.

#![forbid(unsafe_code)]

pub mod coeffs;
pub mod error;
pub mod gybe;
pub mod matrix;
pub mod report;
pub mod states;
pub mod torus;

pub use coeffs::{ModulusConfig, SpectralCoefficients, SpectralParam};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, StateVector, C64};
pub use states::{GhzLikeState, Trajectory};
pub use torus::{PauliPair, SiteSystem};
