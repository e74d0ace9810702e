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

use thiserror::Error;

/// Errors produced by construction and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {dim} exceeds the cap {cap} (override with GYBE_DIM_CAP)")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("singular denominator in {context}")]
    SingularDenominator { context: String },

    #[error("window violation: {0}")]
    WindowViolation(String),

    #[error("off-diagonal support of weight {weight:.3e}: operator does not map the product basis state into the diagonal subspace")]
    NotDiagonalSupport { weight: f64 },

    #[error("the analytic amplitude formula requires odd m (got m = {0})")]
    UnsupportedParity(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
