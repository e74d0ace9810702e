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

//! Dense complex linear algebra: matrices, state vectors, Kronecker products,
//! identity-padded embeddings, and the Frobenius residual metric used by all
//! verifiers.
//!
//! Index convention (fixed globally): a product basis vector
//! `|i_1 i_2 … i_d⟩` maps to the integer `Σ_k i_k · m^{d−k}`, i.e. the
//! leftmost tensor factor is the most significant digit. Consequently
//! `kron(A, B)` places `|i⟩⊗|j⟩` at row `i·B.dim + j`.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default cap on matrix dimension; operations that would exceed it fail
/// with a distinct error instead of exhausting memory.
pub const DEFAULT_DIM_CAP: usize = 1 << 14;

/// The active dimension cap: `GYBE_DIM_CAP` if set and parseable,
/// otherwise [`DEFAULT_DIM_CAP`].
pub fn dim_cap() -> usize {
    std::env::var("GYBE_DIM_CAP")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

/// Fail if `dim` exceeds the active cap.
pub fn check_cap(dim: usize) -> Result<()> {
    let cap = dim_cap();
    if dim > cap {
        Err(Error::DimensionCapExceeded { dim, cap })
    } else {
        Ok(())
    }
}

/// `base^exp` with the dimension cap enforced on the result.
pub fn checked_pow(base: usize, exp: usize) -> Result<usize> {
    let mut out: usize = 1;
    for _ in 0..exp {
        out = out
            .checked_mul(base)
            .ok_or(Error::DimensionCapExceeded { dim: usize::MAX, cap: dim_cap() })?;
        check_cap(out)?;
    }
    Ok(out)
}

/// Dense square matrix of complex scalars, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dim must be >= 1");
        ComplexMatrix { dim, entries: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major entry list; the list length must be `dim²`.
    pub fn from_entries(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                entries.len()
            )));
        }
        if entries.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix { dim, entries })
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.entries[i * dim + j] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.entries[i * self.dim + j] = v;
    }

    /// Standard matrix product.
    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let brow = &other.entries[k * n..(k + 1) * n];
                let orow = &mut out.entries[i * n..(i + 1) * n];
                for (o, b) in orow.iter_mut().zip(brow.iter()) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.len()));
        }
        let n = self.dim;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            out[i] = row.iter().zip(v.iter()).map(|(a, x)| a * x).sum();
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ComplexMatrix {
        let n = self.dim;
        ComplexMatrix::from_fn(n, |i, j| self.entries[j * n + i].conj())
    }

    pub fn scale(&self, s: C64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(ComplexMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖A·A† − Id‖_F / max(1, ‖A·A†‖_F)` together with the pass/fail verdict
    /// at tolerance `tol`.
    pub fn is_unitary(&self, tol: f64) -> (bool, f64) {
        let gram = self.matmul(&self.adjoint()).expect("same dim");
        let residual = relative_residual(&gram, &ComplexMatrix::identity(self.dim))
            .expect("same dim");
        (residual <= tol, residual)
    }

    /// Serialize as `{ "dim": n, "entries": [[re, im], ...] }`, row-major.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dim": self.dim,
            "entries": self.entries.iter().map(|e| vec![e.re, e.im]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let dim = v
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::Parse("missing or invalid \"dim\"".into()))?
            as usize;
        let raw = v
            .get("entries")
            .and_then(|e| e.as_array())
            .ok_or_else(|| Error::Parse("missing or invalid \"entries\"".into()))?;
        let mut entries = Vec::with_capacity(raw.len());
        for pair in raw {
            let p = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("entry is not a [re, im] pair".into()))?;
            let re = p[0].as_f64().ok_or_else(|| Error::Parse("non-numeric re".into()))?;
            let im = p[1].as_f64().ok_or_else(|| Error::Parse("non-numeric im".into()))?;
            entries.push(C64::new(re, im));
        }
        Self::from_entries(dim, entries)
    }

    /// CSV rows `i,j,re,im`, row-major, all entries.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,re,im\n");
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.get(i, j);
                out.push_str(&format!("{i},{j},{},{}\n", e.re, e.im));
            }
        }
        out
    }
}

/// Kronecker product; `|i⟩⊗|j⟩ ↦ row i·B.dim + j`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = a
        .dim
        .checked_mul(b.dim)
        .ok_or(Error::DimensionCapExceeded { dim: usize::MAX, cap: dim_cap() })?;
    check_cap(dim)?;
    let mut out = ComplexMatrix::zeros(dim);
    for ia in 0..a.dim {
        for ja in 0..a.dim {
            let av = a.get(ia, ja);
            if av.norm_sqr() == 0.0 {
                continue;
            }
            for ib in 0..b.dim {
                let orow = (ia * b.dim + ib) * dim + ja * b.dim;
                let brow = ib * b.dim;
                for jb in 0..b.dim {
                    out.entries[orow + jb] = av * b.entries[brow + jb];
                }
            }
        }
    }
    Ok(out)
}

/// `Id_{pad_dim}^{⊗left} ⊗ M ⊗ Id_{pad_dim}^{⊗right}`, materialized densely.
pub fn embed(
    m: &ComplexMatrix,
    left_factors: usize,
    right_factors: usize,
    pad_dim: usize,
) -> Result<ComplexMatrix> {
    if pad_dim < 1 {
        return Err(Error::InvalidArgument("pad_dim must be >= 1".into()));
    }
    let l = checked_pow(pad_dim, left_factors)?;
    let r = checked_pow(pad_dim, right_factors)?;
    let dim = l
        .checked_mul(m.dim)
        .and_then(|d| d.checked_mul(r))
        .ok_or(Error::DimensionCapExceeded { dim: usize::MAX, cap: dim_cap() })?;
    check_cap(dim)?;
    let mut x = ComplexMatrix::identity(dim);
    embedded_mul_into(m, l, r, &mut x)?;
    Ok(x)
}

/// Replace `X` by `(Id_l ⊗ A ⊗ Id_r)·X` without materializing the padded
/// operator; costs `O(dim² · A.dim)` instead of `O(dim³)`.
pub fn embedded_mul_into(
    a: &ComplexMatrix,
    left_dim: usize,
    right_dim: usize,
    x: &mut ComplexMatrix,
) -> Result<()> {
    let s = a.dim;
    let dim = left_dim
        .checked_mul(s)
        .and_then(|d| d.checked_mul(right_dim))
        .ok_or(Error::DimensionCapExceeded { dim: usize::MAX, cap: dim_cap() })?;
    if dim != x.dim {
        return Err(Error::DimensionMismatch(dim, x.dim));
    }
    let mut buf = vec![C64::new(0.0, 0.0); s * dim];
    for p in 0..left_dim {
        for r in 0..right_dim {
            // Gather block rows (p, ·, r), mix with A, scatter back.
            for i in 0..s {
                let dst = &mut buf[i * dim..(i + 1) * dim];
                dst.fill(C64::new(0.0, 0.0));
                for j in 0..s {
                    let av = a.entries[i * s + j];
                    if av.norm_sqr() == 0.0 {
                        continue;
                    }
                    let xrow = ((p * s + j) * right_dim + r) * dim;
                    let src = &x.entries[xrow..xrow + dim];
                    for (d, v) in dst.iter_mut().zip(src.iter()) {
                        *d += av * v;
                    }
                }
            }
            for i in 0..s {
                let xrow = ((p * s + i) * right_dim + r) * dim;
                x.entries[xrow..xrow + dim].copy_from_slice(&buf[i * dim..(i + 1) * dim]);
            }
        }
    }
    Ok(())
}

/// `(Id_l ⊗ A ⊗ Id_r)·v` for a state vector.
pub fn embedded_matvec(
    a: &ComplexMatrix,
    left_dim: usize,
    right_dim: usize,
    v: &[C64],
) -> Result<Vec<C64>> {
    let s = a.dim;
    let dim = left_dim * s * right_dim;
    if dim != v.len() {
        return Err(Error::DimensionMismatch(dim, v.len()));
    }
    let mut out = vec![C64::new(0.0, 0.0); dim];
    for p in 0..left_dim {
        for r in 0..right_dim {
            for i in 0..s {
                let mut acc = C64::new(0.0, 0.0);
                for j in 0..s {
                    acc += a.entries[i * s + j] * v[(p * s + j) * right_dim + r];
                }
                out[(p * s + i) * right_dim + r] = acc;
            }
        }
    }
    Ok(out)
}

/// `‖A − B‖_F`.
pub fn frobenius_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    Ok(a.entries
        .iter()
        .zip(b.entries.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// `‖A − B‖_F / max(1, ‖A‖_F)` — the residual metric used by every verifier.
pub fn relative_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(frobenius_distance(a, b)? / a.frobenius_norm().max(1.0))
}

/// Complex vector of unit norm over `(C^m)^{⊗arity}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    m: usize,
    arity: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// A normalized state from raw amplitudes; length must be `m^arity`.
    pub fn new(m: usize, arity: usize, amps: Vec<C64>) -> Result<Self> {
        let dim = checked_pow(m, arity)?;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch(dim, amps.len()));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite amplitude".into()));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-14 {
            return Err(Error::InvalidArgument("cannot normalize the zero vector".into()));
        }
        let amps = amps.iter().map(|a| a / norm).collect();
        Ok(StateVector { m, arity, amps })
    }

    /// The computational basis state with the given integer index.
    pub fn basis(m: usize, arity: usize, index: usize) -> Result<Self> {
        let dim = checked_pow(m, arity)?;
        if index >= dim {
            return Err(Error::InvalidArgument(format!("basis index {index} >= dim {dim}")));
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { m, arity, amps })
    }

    /// The product state `|k⟩^{⊗arity}`.
    pub fn diagonal_product(m: usize, arity: usize, k: usize) -> Result<Self> {
        if k >= m {
            return Err(Error::InvalidArgument(format!("level {k} >= m {m}")));
        }
        let mut index = 0usize;
        for _ in 0..arity {
            index = index * m + k;
        }
        Self::basis(m, arity, index)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Apply a dense operator; dimension must match.
    pub fn apply(&self, op: &ComplexMatrix) -> Result<StateVector> {
        let amps = op.matvec(&self.amps)?;
        Ok(StateVector { m: self.m, arity: self.arity, amps })
    }
}
