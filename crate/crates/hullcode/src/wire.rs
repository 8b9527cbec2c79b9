//! JSON-facing forms of fields, codes, construction results and bound
//! reports.
//!
//! Elements travel as their canonical integer encodings and matrices as
//! row-major lists of them. Arbitrary-precision integers are decimal
//! strings; rationals are `num/den` strings (plain decimal when the
//! denominator is 1). Loading a code re-validates everything: the modulus
//! must be monic irreducible, every encoding in range, the generator shape
//! consistent and full rank.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::BoundReport;
use crate::codes::{CodeError, LinearCode, VerificationReport};
use crate::construct::{Case, ConstructionResult};
use crate::gf::Field;
use crate::linalg::FieldMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("invalid field description: {0}")]
    InvalidField(String),
    #[error("invalid code description: {0}")]
    InvalidCode(String),
}

/// `{p, r, modulus}` with the modulus low-degree-first including the leading
/// coefficient, so a degree-r modulus has r+1 entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldWire {
    pub p: u64,
    pub r: u32,
    pub modulus: Vec<u64>,
}

impl FieldWire {
    pub fn from_field(f: &Field) -> Self {
        FieldWire {
            p: f.characteristic(),
            r: f.extension_degree(),
            modulus: f.modulus().to_vec(),
        }
    }

    pub fn to_field(&self) -> Result<Field, WireError> {
        Field::with_modulus(self.p, self.r, self.modulus.clone())
            .map_err(|e| WireError::InvalidField(e.to_string()))
    }
}

/// `{field, n, k, generator}` — the serialized form of a linear code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeWire {
    pub field: FieldWire,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<u64>>,
}

impl CodeWire {
    pub fn from_code(code: &LinearCode) -> Self {
        CodeWire {
            field: FieldWire::from_field(code.field()),
            n: code.length(),
            k: code.dimension(),
            generator: code.generator().to_encodings().0,
        }
    }

    pub fn to_code(&self) -> Result<LinearCode, WireError> {
        let field = self.field.to_field()?;
        if self.generator.len() != self.k {
            return Err(WireError::InvalidCode(format!(
                "generator has {} rows, k = {}",
                self.generator.len(),
                self.k
            )));
        }
        for (i, row) in self.generator.iter().enumerate() {
            if row.len() != self.n {
                return Err(WireError::InvalidCode(format!(
                    "row {i} has {} entries, n = {}",
                    row.len(),
                    self.n
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= field.order()) {
                return Err(WireError::InvalidCode(format!(
                    "encoding {bad} out of range for GF({})",
                    field.order()
                )));
            }
        }
        let m = FieldMatrix::from_encodings(&field, &self.generator);
        LinearCode::new(m).map_err(|e: CodeError| WireError::InvalidCode(e.to_string()))
    }
}

/// The construction output: the code plus provenance and the verifier report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResultWire {
    pub code: CodeWire,
    pub case: Case,
    pub seed: u64,
    pub expected_length: usize,
    pub guaranteed_distance: usize,
    pub attempts: u64,
    pub restarts: u64,
    pub report: VerificationReport,
}

impl ConstructionResultWire {
    pub fn from_result(res: &ConstructionResult) -> Self {
        ConstructionResultWire {
            code: CodeWire::from_code(&res.code),
            case: res.case,
            seed: res.seed,
            expected_length: res.expected_length,
            guaranteed_distance: res.guaranteed_distance,
            attempts: res.attempts,
            restarts: res.restarts,
            report: res.report.clone(),
        }
    }
}

/// Exact bound evaluation with big values as strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReportWire {
    pub q: u64,
    pub m: u64,
    pub k: u64,
    pub d: u64,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub theta: String,
    pub epsilons: Vec<String>,
    pub p_lower: String,
    /// f64 view of p_lower for quick reading; the string is authoritative.
    pub p_lower_approx: f64,
}

impl BoundReportWire {
    pub fn from_report(r: &BoundReport) -> Self {
        BoundReportWire {
            q: r.q,
            m: r.m,
            k: r.k,
            d: r.d,
            lhs: r.lhs.to_string(),
            rhs: r.rhs.to_string(),
            holds: r.holds,
            theta: r.theta.to_string(),
            epsilons: r.epsilons.iter().map(ToString::to_string).collect(),
            p_lower: r.p_jk_lower.to_string(),
            p_lower_approx: r.p_jk_lower.to_f64().unwrap_or(0.0),
        }
    }
}
