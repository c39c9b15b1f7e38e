//! Problem definition: alternatives, criteria and the evaluation table.

use std::collections::HashSet;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "max")]
    Maximize,
    #[serde(rename = "min")]
    Minimize,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Maximize => Direction::Minimize,
            Direction::Minimize => Direction::Maximize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreferenceKind {
    Linear,
    Level,
}

/// One criterion. `q` and `p` are in the units of the evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionSpec {
    pub id: String,
    pub direction: Direction,
    pub function: PreferenceKind,
    /// Indifference threshold.
    pub q: f64,
    /// Preference threshold.
    pub p: f64,
    pub weight: f64,
}

impl CriterionSpec {
    pub fn new(
        id: impl Into<String>,
        direction: Direction,
        function: PreferenceKind,
        q: f64,
        p: f64,
        weight: f64,
    ) -> Self {
        Self {
            id: id.into(),
            direction,
            function,
            q,
            p,
            weight,
        }
    }

    /// Maximized criterion with the linear preference function.
    pub fn linear(id: impl Into<String>, q: f64, p: f64, weight: f64) -> Self {
        Self::new(
            id,
            Direction::Maximize,
            PreferenceKind::Linear,
            q,
            p,
            weight,
        )
    }

    /// Maximized criterion with the level preference function.
    pub fn level(id: impl Into<String>, q: f64, p: f64, weight: f64) -> Self {
        Self::new(id, Direction::Maximize, PreferenceKind::Level, q, p, weight)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("at least two alternatives are required, got {0}")]
    TooFewAlternatives(usize),
    #[error("at least one criterion is required")]
    NoCriteria,
    #[error("criterion `{criterion}`: thresholds must satisfy 0 <= q <= p (q = {q}, p = {p})")]
    BadThresholds { criterion: String, q: f64, p: f64 },
    #[error("criterion `{criterion}`: weight must be positive and finite, got {weight}")]
    NonPositiveWeight { criterion: String, weight: f64 },
    #[error("alternative `{alternative}`, criterion `{criterion}`: value {value} is not finite")]
    NonFiniteValue {
        alternative: String,
        criterion: String,
        value: f64,
    },
    #[error("duplicate alternative id `{0}`")]
    DuplicateAlternativeId(String),
    #[error("row {row} has {found} values, expected {expected}")]
    ShapeMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
}

/// `n` alternatives evaluated on `q` criteria.
///
/// Values are stored one column per criterion since every engine works
/// criterion by criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix {
    alternatives: Vec<String>,
    criteria: Vec<CriterionSpec>,
    columns: Vec<Vec<f64>>,
}

impl DecisionMatrix {
    /// Builds a matrix from row-major evaluations, `rows[i][k] = f_k(a_i)`.
    pub fn from_rows(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        rows: &[Vec<f64>],
    ) -> Result<Self, ValidationError> {
        if rows.len() != alternatives.len() {
            return Err(ValidationError::ShapeMismatch {
                row: rows.len().min(alternatives.len()),
                expected: alternatives.len(),
                found: rows.len(),
            });
        }
        let mut columns = vec![Vec::with_capacity(rows.len()); criteria.len()];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != criteria.len() {
                return Err(ValidationError::ShapeMismatch {
                    row: i,
                    expected: criteria.len(),
                    found: row.len(),
                });
            }
            for (column, &v) in columns.iter_mut().zip(row) {
                column.push(v);
            }
        }
        Ok(Self {
            alternatives,
            criteria,
            columns,
        })
    }

    /// Builds a matrix from one column per criterion.
    pub fn from_columns(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        columns: Vec<Vec<f64>>,
    ) -> Result<Self, ValidationError> {
        if columns.len() != criteria.len() {
            return Err(ValidationError::ShapeMismatch {
                row: 0,
                expected: criteria.len(),
                found: columns.len(),
            });
        }
        if let Some(column) = columns.iter().find(|c| c.len() != alternatives.len()) {
            return Err(ValidationError::ShapeMismatch {
                row: column.len().min(alternatives.len()),
                expected: alternatives.len(),
                found: column.len(),
            });
        }
        Ok(Self {
            alternatives,
            criteria,
            columns,
        })
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn criteria_mut(&mut self) -> &mut [CriterionSpec] {
        &mut self.criteria
    }

    /// Number of alternatives.
    pub fn n(&self) -> usize {
        self.alternatives.len()
    }

    /// Number of criteria.
    pub fn q(&self) -> usize {
        self.criteria.len()
    }

    pub fn column(&self, k: usize) -> &[f64] {
        &self.columns[k]
    }

    pub fn column_mut(&mut self, k: usize) -> &mut [f64] {
        &mut self.columns[k]
    }

    pub fn value(&self, i: usize, k: usize) -> f64 {
        self.columns[k][i]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    /// Checks every invariant and returns a copy whose weights sum to one.
    pub fn validate(&self) -> Result<DecisionMatrix, ValidationError> {
        let n = self.n();
        if n < 2 {
            return Err(ValidationError::TooFewAlternatives(n));
        }
        if self.criteria.is_empty() {
            return Err(ValidationError::NoCriteria);
        }
        for c in &self.criteria {
            let ok = c.q.is_finite() && c.p.is_finite() && c.q >= 0.0 && c.p >= c.q;
            if !ok {
                return Err(ValidationError::BadThresholds {
                    criterion: c.id.clone(),
                    q: c.q,
                    p: c.p,
                });
            }
            if !(c.weight.is_finite() && c.weight > 0.0) {
                return Err(ValidationError::NonPositiveWeight {
                    criterion: c.id.clone(),
                    weight: c.weight,
                });
            }
        }
        for (c, column) in self.criteria.iter().zip(&self.columns) {
            if let Some(i) = column.iter().position(|v| !v.is_finite()) {
                return Err(ValidationError::NonFiniteValue {
                    alternative: self.alternatives[i].clone(),
                    criterion: c.id.clone(),
                    value: column[i],
                });
            }
        }
        let mut seen = HashSet::with_capacity(n);
        for id in &self.alternatives {
            if !seen.insert(id.as_str()) {
                return Err(ValidationError::DuplicateAlternativeId(id.clone()));
            }
        }

        let total: f64 = self.criteria.iter().map(|c| c.weight).sum();
        let mut out = self.clone();
        for c in &mut out.criteria {
            c.weight /= total;
        }
        Ok(out)
    }

    /// Negates every minimized column and marks it maximized.
    pub fn orient(&self) -> DecisionMatrix {
        let mut out = self.clone();
        for (c, column) in out.criteria.iter_mut().zip(&mut out.columns) {
            if c.direction == Direction::Minimize {
                column.iter_mut().for_each(|v| *v = -*v);
                c.direction = Direction::Maximize;
            }
        }
        out
    }

    pub fn is_oriented(&self) -> bool {
        self.criteria
            .iter()
            .all(|c| c.direction == Direction::Maximize)
    }
}

/// A validated matrix with normalized weights and every criterion maximized.
/// This is the only input the engines accept.
#[derive(Debug, Clone, PartialEq)]
pub struct OrientedMatrix(DecisionMatrix);

impl OrientedMatrix {
    pub fn new(matrix: &DecisionMatrix) -> Result<Self, ValidationError> {
        Ok(Self(matrix.validate()?.orient()))
    }

    pub fn into_inner(self) -> DecisionMatrix {
        self.0
    }
}

impl Deref for OrientedMatrix {
    type Target = DecisionMatrix;

    fn deref(&self) -> &DecisionMatrix {
        &self.0
    }
}

#[cfg(test)]
pub(crate) use tests::example_one;
