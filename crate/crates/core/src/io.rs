//! CSV evaluation tables, JSON run configs and result writers.
//!
//! Data CSV: header `id,<crit1>,...,<critq>`, one row per alternative.
//! Config JSON:
//!
//! ```json
//! {
//!   "criteria": [
//!     {"name": "Sunshine", "direction": "max", "function": "linear", "q": 1, "p": 3, "weight": 1}
//!   ],
//!   "tie_eps": 1e-9
//! }
//! ```
//!
//! Unknown keys are rejected. All CSV output uses `,` and LF line endings.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flows::{Engine, FlowScores};
use crate::model::{CriterionSpec, DecisionMatrix, Direction, PreferenceKind, ValidationError};
use crate::ranking::{PartialRanking, TotalRanking, DEFAULT_TIE_EPS};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: u64,
        column: u64,
        message: String,
    },
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

impl DataError {
    fn io(path: &Path, source: std::io::Error) -> Self {
        DataError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

/// Raw evaluations as read from CSV, before criteria are attached.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationTable {
    pub criteria: Vec<String>,
    pub ids: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

pub fn load_matrix(path: &Path) -> Result<EvaluationTable, DataError> {
    let file = File::open(path).map_err(|e| DataError::io(path, e))?;
    read_matrix(BufReader::new(file))
}

pub fn read_matrix(reader: impl Read) -> Result<EvaluationTable, DataError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let header = rdr.headers().map_err(csv_error)?.clone();
    if header.get(0) != Some("id") {
        return Err(DataError::Parse {
            line: 1,
            column: 1,
            message: "first header field must be `id`".into(),
        });
    }
    let criteria: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    if criteria.is_empty() {
        return Err(DataError::Parse {
            line: 1,
            column: 2,
            message: "no criterion columns".into(),
        });
    }

    let mut ids = Vec::new();
    let mut columns = vec![Vec::new(); criteria.len()];
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        ids.push(record[0].to_owned());
        for (k, (field, column)) in record.iter().skip(1).zip(&mut columns).enumerate() {
            let value = field.parse::<f64>().map_err(|_| DataError::Parse {
                line,
                column: k as u64 + 2,
                message: format!("`{field}` is not a number"),
            })?;
            column.push(value);
        }
    }
    Ok(EvaluationTable {
        criteria,
        ids,
        columns,
    })
}

fn csv_error(e: csv::Error) -> DataError {
    let (line, column) = match e.kind() {
        csv::ErrorKind::UnequalLengths { pos, len, .. } => {
            (pos.as_ref().map_or(0, |p| p.line()), *len + 1)
        }
        _ => (e.position().map_or(0, |p| p.line()), 0),
    };
    DataError::Parse {
        line,
        column,
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionConfig {
    pub name: String,
    pub direction: Direction,
    pub function: PreferenceKind,
    pub q: f64,
    pub p: f64,
    pub weight: f64,
}

impl From<&CriterionConfig> for CriterionSpec {
    fn from(c: &CriterionConfig) -> Self {
        CriterionSpec::new(c.name.clone(), c.direction, c.function, c.q, c.p, c.weight)
    }
}

impl From<&CriterionSpec> for CriterionConfig {
    fn from(c: &CriterionSpec) -> Self {
        CriterionConfig {
            name: c.id.clone(),
            direction: c.direction,
            function: c.function,
            q: c.q,
            p: c.p,
            weight: c.weight,
        }
    }
}

fn default_tie_eps() -> f64 {
    DEFAULT_TIE_EPS
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub criteria: Vec<CriterionConfig>,
    #[serde(default = "default_tie_eps")]
    pub tie_eps: f64,
    /// Chosen on the command line, not read from the file.
    #[serde(skip)]
    pub engine: Option<Engine>,
    #[serde(skip)]
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_criteria(criteria: &[CriterionSpec]) -> Self {
        RunConfig {
            criteria: criteria.iter().map(CriterionConfig::from).collect(),
            tie_eps: DEFAULT_TIE_EPS,
            engine: None,
            seed: None,
        }
    }

    /// Attaches the configured criteria to a table. Criterion names must
    /// match the CSV header one to one; the matrix keeps the CSV order.
    pub fn build_matrix(&self, table: &EvaluationTable) -> Result<DecisionMatrix, DataError> {
        let mut by_name: HashMap<&str, &CriterionConfig> = HashMap::new();
        for c in &self.criteria {
            if by_name.insert(c.name.as_str(), c).is_some() {
                return Err(DataError::SchemaMismatch(format!(
                    "criterion `{}` configured twice",
                    c.name
                )));
            }
        }
        let mut header = HashSet::new();
        if let Some(name) = table.criteria.iter().find(|c| !header.insert(c.as_str())) {
            return Err(DataError::SchemaMismatch(format!(
                "CSV column `{name}` appears twice"
            )));
        }
        let mut criteria = Vec::with_capacity(table.criteria.len());
        for name in &table.criteria {
            let c = by_name.remove(name.as_str()).ok_or_else(|| {
                DataError::SchemaMismatch(format!(
                    "CSV column `{name}` has no configured criterion"
                ))
            })?;
            criteria.push(CriterionSpec::from(c));
        }
        if let Some(name) = by_name.keys().next() {
            return Err(DataError::SchemaMismatch(format!(
                "configured criterion `{name}` is not a CSV column"
            )));
        }
        Ok(DecisionMatrix::from_columns(
            table.ids.clone(),
            criteria,
            table.columns.clone(),
        )?)
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, DataError> {
    let file = File::open(path).map_err(|e| DataError::io(path, e))?;
    read_config(BufReader::new(file))
}

pub fn read_config(reader: impl Read) -> Result<RunConfig, DataError> {
    let config: RunConfig = serde_json::from_reader(reader).map_err(|e| DataError::Parse {
        line: e.line() as u64,
        column: e.column() as u64,
        message: e.to_string(),
    })?;
    if !(config.tie_eps.is_finite() && config.tie_eps >= 0.0) {
        return Err(DataError::InvalidConfig(format!(
            "tie_eps must be a non-negative number, got {}",
            config.tie_eps
        )));
    }
    Ok(config)
}

/// Rounds to 12 significant digits and prints the shortest decimal that
/// reads back to the rounded value. Magnitudes below `1e-12` print as `0`.
pub fn format_number(x: f64) -> String {
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn write_error(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

/// Evaluations at full precision, so a written file reloads bit for bit.
pub fn write_matrix(w: impl Write, matrix: &DecisionMatrix) -> std::io::Result<()> {
    let mut out = csv_writer(w);
    let header = std::iter::once("id").chain(matrix.criteria().iter().map(|c| c.id.as_str()));
    out.write_record(header).map_err(write_error)?;
    for (i, id) in matrix.alternatives().iter().enumerate() {
        let row = std::iter::once(id.clone())
            .chain((0..matrix.q()).map(|k| format!("{}", matrix.value(i, k))));
        out.write_record(row).map_err(write_error)?;
    }
    out.flush()
}

pub fn write_config(w: impl Write, config: &RunConfig) -> std::io::Result<()> {
    serde_json::to_writer_pretty(w, config).map_err(std::io::Error::other)
}

/// `id,phi_plus,phi_minus,phi`, then `<c>_plus,<c>_minus,<c>_net` per criterion.
pub fn write_flows(w: impl Write, flows: &FlowScores) -> std::io::Result<()> {
    let mut out = csv_writer(w);
    let mut header = vec![
        "id".to_string(),
        "phi_plus".into(),
        "phi_minus".into(),
        "phi".into(),
    ];
    for c in &flows.criteria {
        header.extend([
            format!("{c}_plus"),
            format!("{c}_minus"),
            format!("{c}_net"),
        ]);
    }
    out.write_record(&header).map_err(write_error)?;
    for i in 0..flows.n() {
        let mut row = vec![
            flows.ids[i].clone(),
            format_number(flows.phi_plus[i]),
            format_number(flows.phi_minus[i]),
            format_number(flows.phi[i]),
        ];
        for k in 0..flows.q() {
            row.extend([
                format_number(flows.uni_plus[k][i]),
                format_number(flows.uni_minus[k][i]),
                format_number(flows.uni_net[k][i]),
            ]);
        }
        out.write_record(&row).map_err(write_error)?;
    }
    out.flush()
}

/// Reads a file produced by [`write_flows`].
pub fn read_flows(reader: impl Read) -> Result<FlowScores, DataError> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(reader);
    let header = rdr.headers().map_err(csv_error)?.clone();
    let fixed = ["id", "phi_plus", "phi_minus", "phi"];
    if header.len() < 4 || (header.len() - 4) % 3 != 0 || header.iter().take(4).ne(fixed) {
        return Err(DataError::Parse {
            line: 1,
            column: 1,
            message: "not a flows file".into(),
        });
    }
    let criteria: Vec<String> = header
        .iter()
        .skip(4)
        .step_by(3)
        .map(|h| h.trim_end_matches("_plus").to_owned())
        .collect();
    let q = criteria.len();
    let mut flows = FlowScores {
        ids: Vec::new(),
        criteria,
        phi_plus: Vec::new(),
        phi_minus: Vec::new(),
        phi: Vec::new(),
        uni_plus: vec![Vec::new(); q],
        uni_minus: vec![Vec::new(); q],
        uni_net: vec![Vec::new(); q],
    };
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let num = |col: usize| -> Result<f64, DataError> {
            record[col].parse().map_err(|_| DataError::Parse {
                line,
                column: col as u64 + 1,
                message: format!("`{}` is not a number", &record[col]),
            })
        };
        flows.ids.push(record[0].to_owned());
        flows.phi_plus.push(num(1)?);
        flows.phi_minus.push(num(2)?);
        flows.phi.push(num(3)?);
        for k in 0..q {
            flows.uni_plus[k].push(num(4 + 3 * k)?);
            flows.uni_minus[k].push(num(5 + 3 * k)?);
            flows.uni_net[k].push(num(6 + 3 * k)?);
        }
    }
    Ok(flows)
}

/// `rank,id,phi`, best first.
pub fn write_total_ranking(
    w: impl Write,
    flows: &FlowScores,
    ranking: &TotalRanking,
) -> std::io::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["rank", "id", "phi"])
        .map_err(write_error)?;
    for (g, group) in ranking.groups.iter().enumerate() {
        for &i in group {
            out.write_record([
                (g + 1).to_string(),
                flows.ids[i].clone(),
                format_number(flows.phi[i]),
            ])
            .map_err(write_error)?;
        }
    }
    out.flush()
}

/// `a,b,relation` for every unordered pair; strict preferences read as
/// `winner,loser,P`.
pub fn write_partial_ranking(
    w: impl Write,
    flows: &FlowScores,
    ranking: &PartialRanking,
) -> std::io::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(["a", "b", "relation"])
        .map_err(write_error)?;
    for (a, b, r) in ranking.pairs() {
        out.write_record([flows.ids[a].as_str(), flows.ids[b].as_str(), r.symbol()])
            .map_err(write_error)?;
    }
    out.flush()
}
