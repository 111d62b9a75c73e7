//! The versioned JSON input format shared by the CLI and the fuzz targets.
//!
//! A job file is a ramification section (`group`, `filtration`, `p`,
//! `tame`) plus optional named representations, an optional embedded oracle
//! fixture and options. Class-function values are listed by class index,
//! classes being ordered by their smallest element.

use crate::conductor::ConductorOptions;
use crate::cyclotomic::Cyclotomic;
use crate::group::{build_group, ClassFunction, Group, GroupError, GroupSpec};
use crate::oracle::{IntMatrix, MonogenicOrder, OracleError};
use crate::ramification::{build_ramification, RamificationData, RamificationError, TameCharacter};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(String),
    #[error("no representation named {0:?}")]
    UnknownRep(String),
    #[error("file has no oracle section")]
    NoOracle,
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub version: u64,
    pub group: GroupSpec,
    #[serde(default)]
    pub filtration: Vec<Vec<usize>>,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tame: Option<TameCharacter>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub reps: BTreeMap<String, RepSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleFixture>,
    #[serde(default, skip_serializing_if = "JobOptions::is_default")]
    pub options: JobOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSection {
    pub values: Vec<Cyclotomic>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JobOptions {
    pub p_average: bool,
    pub strict_rational: bool,
}

impl JobOptions {
    fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

impl From<JobOptions> for ConductorOptions {
    fn from(o: JobOptions) -> Self {
        ConductorOptions { p_average: o.p_average, strict_rational: o.strict_rational }
    }
}

/// `{"p": p, "f": [coeffs], "galois": [[g_σ coeffs], ...], "module": [[matrix], ...]}`,
/// coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleFixture {
    pub p: u64,
    pub f: Vec<i64>,
    pub galois: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<Vec<Vec<Vec<i64>>>>,
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl OracleFixture {
    pub fn order(&self) -> Result<MonogenicOrder, OracleError> {
        MonogenicOrder::new(self.p, big(&self.f), self.galois.iter().map(|g| big(g)).collect())
    }

    pub fn module(&self) -> Option<Vec<IntMatrix>> {
        self.module.as_ref().map(|ms| ms.iter().map(|m| m.iter().map(|r| big(r)).collect()).collect())
    }
}

fn check_version(value: &serde_json::Value) -> Result<(), FormatError> {
    match value.get("version") {
        Some(v) if v.as_u64() == Some(FORMAT_VERSION) => Ok(()),
        Some(v) => Err(FormatError::Version(v.to_string())),
        None => Err(FormatError::Version("missing".into())),
    }
}

/// Parses a job file; the version is checked before the body so an unknown
/// version is reported as such rather than as a schema mismatch.
pub fn parse_job(text: &str) -> Result<JobFile, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    check_version(&value)?;
    Ok(serde_json::from_str(text)?)
}

/// An oracle fixture, bare or embedded in a job file's `oracle` section.
pub fn parse_oracle_fixture(text: &str) -> Result<OracleFixture, FormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("version").is_some() {
        check_version(&value)?;
        let job: JobFile = serde_json::from_str(text)?;
        return job.oracle.ok_or(FormatError::NoOracle);
    }
    Ok(serde_json::from_str(text)?)
}

pub fn parse_cyclotomic(text: &str) -> Result<Cyclotomic, FormatError> {
    Ok(serde_json::from_str(text)?)
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, FormatError> {
    Ok(serde_json::from_str(text)?)
}

impl JobFile {
    pub fn build_group(&self) -> Result<Group, GroupError> {
        build_group(&self.group)
    }

    pub fn ramification(&self) -> Result<RamificationData, RamificationError> {
        let g = self.build_group()?;
        build_ramification(&g, &self.filtration, self.p, self.tame)
    }

    pub fn rep(&self, name: &str, group: &Group) -> Result<ClassFunction, RepError> {
        let section = self.reps.get(name).ok_or_else(|| RepError::Format(FormatError::UnknownRep(name.into())))?;
        Ok(ClassFunction::new(group, section.values.clone())?)
    }

    /// A job file describing `r`, with the group written as a Cayley table.
    pub fn from_ramification(r: &RamificationData) -> Self {
        let g = r.gamma();
        let n = g.order();
        JobFile {
            version: FORMAT_VERSION,
            group: GroupSpec::Table((0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect()),
            filtration: r.filtration().iter().map(|h| h.members().to_vec()).collect(),
            p: r.p(),
            tame: (r.n() > 1).then(|| r.tame()),
            reps: BTreeMap::new(),
            oracle: None,
            options: JobOptions::default(),
        }
    }

    /// One top-level key per line, values compact (tables stay readable).
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("serializable");
        let obj = value.as_object().expect("struct serializes to an object");
        let lines: Vec<String> = obj
            .iter()
            .map(|(k, v)| format!("  {}: {}", serde_json::Value::from(k.as_str()), v))
            .collect();
        format!("{{\n{}\n}}", lines.join(",\n"))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Format(FormatError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
