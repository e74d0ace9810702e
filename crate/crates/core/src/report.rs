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

//! Machine-readable residual reports.

use serde::Serialize;

/// One verified relation:
/// `{ "relation": …, "params": …, "residual": …, "tolerance": …, "pass": … }`.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub params: serde_json::Value,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl RelationReport {
    pub fn new(
        relation: impl Into<String>,
        params: serde_json::Value,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        RelationReport {
            relation: relation.into(),
            params,
            residual,
            tolerance,
            pass: residual <= tolerance,
        }
    }
}

/// A full verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub tolerance: f64,
    pub relations: Vec<RelationReport>,
}

impl VerifyReport {
    pub fn new(seed: u64, tolerance: f64) -> Self {
        VerifyReport { seed, tolerance, relations: Vec::new() }
    }

    pub fn push(&mut self, r: RelationReport) {
        self.relations.push(r);
    }

    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(|r| r.pass)
    }

    /// CSV rows `relation,residual,tolerance,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("relation,residual,tolerance,pass\n");
        for r in &self.relations {
            out.push_str(&format!("{},{},{},{}\n", r.relation, r.residual, r.tolerance, r.pass));
        }
        out
    }
}
