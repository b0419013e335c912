//! JSON file formats: matrices, reports, certificates, instance bundles and
//! the self-test summary.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use coreep_core::laws::VerificationReport;
use coreep_core::order::OrderCertificate;
use coreep_core::{CMatrix, Tolerances, C64};
use serde::{Deserialize, Serialize};

/// Failure to read or decode an input file.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: malformed matrix JSON")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: {reason}")]
    Invalid { path: String, reason: String },
}

/// On-disk matrix: `{"rows", "cols", "data": [[re, im], ...]}`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&CMatrix> for MatrixFile {
    fn from(m: &CMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixFile> for CMatrix {
    type Error = coreep_core::Error;

    fn try_from(f: MatrixFile) -> Result<Self, Self::Error> {
        let data = f.data.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        CMatrix::from_vec(f.rows, f.cols, data)
    }
}

/// Parses a matrix from JSON text.
pub fn parse_matrix(text: &str, origin: &str) -> Result<CMatrix, FormatError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|source| FormatError::Json {
        path: origin.to_string(),
        source,
    })?;
    CMatrix::try_from(file).map_err(|e| FormatError::Invalid {
        path: origin.to_string(),
        reason: e.to_string(),
    })
}

pub fn read_matrix(path: &Path) -> Result<CMatrix, FormatError> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: origin.clone(),
        source,
    })?;
    parse_matrix(&text, &origin)
}

pub fn matrix_json(m: &CMatrix) -> String {
    to_json(&MatrixFile::from(m))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ToleranceFile {
    pub rank_tol: f64,
    pub eq_tol: f64,
    pub nil_tol: f64,
}

impl From<&Tolerances> for ToleranceFile {
    fn from(t: &Tolerances) -> Self {
        Self {
            rank_tol: t.rank,
            eq_tol: t.eq,
            nil_tol: t.nil,
        }
    }
}

/// Serialized [`VerificationReport`] with the tolerances it was run under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportFile {
    pub law_id: String,
    pub hypothesis_satisfied: bool,
    pub conclusion_holds: bool,
    pub vacuous: bool,
    pub residuals: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub tolerances: ToleranceFile,
    pub notes: Vec<String>,
}

impl ReportFile {
    pub fn new(r: &VerificationReport, tol: &Tolerances) -> Self {
        Self {
            law_id: r.law_id.clone(),
            hypothesis_satisfied: r.hypothesis_satisfied,
            conclusion_holds: r.conclusion_holds,
            vacuous: r.is_vacuous(),
            residuals: r.residuals.clone(),
            tolerance: r.tolerance,
            tolerances: tol.into(),
            notes: r.notes.clone(),
        }
    }
}

/// Sidecar of `compute`: residuals of the defining identities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComputeReport {
    pub op: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub route: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub index: Option<usize>,
    pub residuals: BTreeMap<String, f64>,
    pub tolerances: ToleranceFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateFile {
    pub e1: MatrixFile,
    pub e2: MatrixFile,
    pub e3: MatrixFile,
    pub blocks_a: Vec<Vec<MatrixFile>>,
    pub blocks_b: Vec<Vec<MatrixFile>>,
    pub residuals: BTreeMap<String, f64>,
}

fn grid(blocks: &[[CMatrix; 3]; 3]) -> Vec<Vec<MatrixFile>> {
    blocks
        .iter()
        .map(|row| row.iter().map(MatrixFile::from).collect())
        .collect()
}

impl From<&OrderCertificate> for CertificateFile {
    fn from(c: &OrderCertificate) -> Self {
        Self {
            e1: (&c.e1).into(),
            e2: (&c.e2).into(),
            e3: (&c.e3).into(),
            blocks_a: grid(&c.blocks_a),
            blocks_b: grid(&c.blocks_b),
            residuals: c.residuals.clone(),
        }
    }
}

/// Generated instance: `{"kind", "seed", "matrices", "scalars"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    pub kind: String,
    pub seed: u64,
    pub matrices: BTreeMap<String, MatrixFile>,
    pub scalars: BTreeMap<String, [f64; 2]>,
}

impl Bundle {
    pub fn new(kind: &str, seed: u64) -> Self {
        Self {
            kind: kind.to_string(),
            seed,
            matrices: BTreeMap::new(),
            scalars: BTreeMap::new(),
        }
    }

    pub fn matrix(mut self, name: &str, m: &CMatrix) -> Self {
        self.matrices.insert(name.to_string(), m.into());
        self
    }

    pub fn scalar(mut self, name: &str, z: C64) -> Self {
        self.scalars.insert(name.to_string(), [z.re, z.im]);
        self
    }
}

/// One line of the self-test summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteSummary {
    pub law: String,
    pub passes: usize,
    pub failures: usize,
    pub max_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suites: Vec<SuiteSummary>,
    pub seed: u64,
    pub tolerances: ToleranceFile,
}
