//! Flow scores and the aggregation step shared by both engines.

use std::fmt;
use std::str::FromStr;

use crate::model::OrientedMatrix;
use crate::{reference, sbp};

/// Positive, negative and net flows, overall and per criterion.
///
/// Per-criterion vectors are indexed `[k][i]`: criterion first, then
/// alternative in the original matrix order.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowScores {
    pub ids: Vec<String>,
    pub criteria: Vec<String>,
    pub phi_plus: Vec<f64>,
    pub phi_minus: Vec<f64>,
    pub phi: Vec<f64>,
    pub uni_plus: Vec<Vec<f64>>,
    pub uni_minus: Vec<Vec<f64>>,
    pub uni_net: Vec<Vec<f64>>,
}

impl FlowScores {
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn q(&self) -> usize {
        self.criteria.len()
    }

    /// Largest absolute difference over all six flow fields.
    pub fn max_abs_diff(&self, other: &FlowScores) -> f64 {
        assert_eq!(self.n(), other.n(), "flow scores of different sizes");
        assert_eq!(self.q(), other.q(), "flow scores of different sizes");
        let fields = [
            (&self.phi_plus, &other.phi_plus),
            (&self.phi_minus, &other.phi_minus),
            (&self.phi, &other.phi),
        ];
        let overall = fields.iter().flat_map(|(a, b)| a.iter().zip(b.iter()));
        let per_criterion = [
            (&self.uni_plus, &other.uni_plus),
            (&self.uni_minus, &other.uni_minus),
            (&self.uni_net, &other.uni_net),
        ];
        let uni = per_criterion
            .into_iter()
            .flat_map(|(a, b)| a.iter().zip(b.iter()))
            .flat_map(|(a, b)| a.iter().zip(b.iter()));
        overall
            .chain(uni)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Combines per-criterion `(uni_plus, uni_minus)` pairs into [`FlowScores`]
/// using the matrix weights (already normalized).
pub fn aggregate(matrix: &OrientedMatrix, per_criterion: Vec<(Vec<f64>, Vec<f64>)>) -> FlowScores {
    let n = matrix.n();
    assert_eq!(per_criterion.len(), matrix.q());

    let (uni_plus, uni_minus): (Vec<_>, Vec<_>) = per_criterion.into_iter().unzip();
    let uni_net: Vec<Vec<f64>> = uni_plus
        .iter()
        .zip(&uni_minus)
        .map(|(plus, minus)| plus.iter().zip(minus).map(|(a, b)| a - b).collect())
        .collect();

    let mut phi_plus = vec![0.0; n];
    let mut phi_minus = vec![0.0; n];
    let mut phi = vec![0.0; n];
    for (k, c) in matrix.criteria().iter().enumerate() {
        let w = c.weight;
        for i in 0..n {
            phi_plus[i] += w * uni_plus[k][i];
            phi_minus[i] += w * uni_minus[k][i];
            phi[i] += w * uni_net[k][i];
        }
    }

    FlowScores {
        ids: matrix.alternatives().to_vec(),
        criteria: matrix.criteria().iter().map(|c| c.id.clone()).collect(),
        phi_plus,
        phi_minus,
        phi,
        uni_plus,
        uni_minus,
        uni_net,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Engine {
    /// Pairwise reference engine, quadratic in the number of alternatives.
    Naive,
    /// Sorting-based sliding-window engine.
    Sbp,
}

impl Engine {
    pub fn flows(self, matrix: &OrientedMatrix) -> FlowScores {
        match self {
            Engine::Naive => reference::naive_flows(matrix),
            Engine::Sbp => sbp::sbp_flows(matrix),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Engine::Naive => "naive",
            Engine::Sbp => "sbp",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "naive" => Ok(Engine::Naive),
            "sbp" => Ok(Engine::Sbp),
            other => Err(format!("unknown engine `{other}` (expected naive or sbp)")),
        }
    }
}
