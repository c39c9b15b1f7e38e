//! Pairwise reference engine.
//!
//! Every ordered pair is evaluated, so one criterion costs `Θ(n²)`. This is
//! the correctness oracle for [`crate::sbp`] and the benchmark baseline. Row
//! sums are accumulated on the fly; the preference matrix is only built by
//! [`preference_slice`].

use crate::flows::{aggregate, FlowScores};
use crate::model::{OrientedMatrix, PreferenceKind};
use crate::par;
use crate::preference::{difference, level_preference, linear_preference, PreferenceDegree};

/// `(uni_plus, uni_minus)` for criterion `k`, in original alternative order.
pub fn naive_unicriterion_flows(matrix: &OrientedMatrix, k: usize) -> (Vec<f64>, Vec<f64>) {
    let c = &matrix.criteria()[k];
    let (q, p) = (c.q, c.p);
    let column = matrix.column(k);
    match c.function {
        PreferenceKind::Linear => pairwise_sums(column, |d| linear_preference(d, q, p)),
        PreferenceKind::Level => pairwise_sums(column, |d| level_preference(d, q, p)),
    }
}

fn pairwise_sums(column: &[f64], pref: impl Fn(f64) -> PreferenceDegree) -> (Vec<f64>, Vec<f64>) {
    let n = column.len();
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    for (i, &fi) in column.iter().enumerate() {
        let mut row = 0.0;
        for (m, &fx) in minus.iter_mut().zip(column) {
            let pi = pref(difference(fi, fx)).value();
            row += pi;
            *m += pi;
        }
        plus[i] = row;
    }
    let scale = 1.0 / (n - 1) as f64;
    plus.iter_mut()
        .chain(minus.iter_mut())
        .for_each(|v| *v *= scale);
    (plus, minus)
}

/// Flow scores from per-criterion flows, criteria evaluated in parallel when
/// the `parallel` feature is on.
pub fn naive_flows(matrix: &OrientedMatrix) -> FlowScores {
    let per_criterion = par::map_range(matrix.q(), |k| naive_unicriterion_flows(matrix, k));
    aggregate(matrix, per_criterion)
}

/// Flow scores through the aggregated preference degree
/// `π(a, b) = Σ_k w_k π_k(a, b)`, summed per alternative.
///
/// Overall flows come from the aggregated degree; the per-criterion fields
/// are filled as in [`naive_flows`]. Used to check that both ways of
/// computing the overall flows agree.
#[allow(clippy::needless_range_loop)]
pub fn naive_flows_pairwise(matrix: &OrientedMatrix) -> FlowScores {
    let n = matrix.n();
    let mut out = naive_flows(matrix);
    let mut phi_plus = vec![0.0; n];
    let mut phi_minus = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            let pi: f64 = matrix
                .criteria()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let d = difference(matrix.value(i, k), matrix.value(j, k));
                    c.weight * crate::preference::preference(c.function, d, c.q, c.p).value()
                })
                .sum();
            phi_plus[i] += pi;
            phi_minus[j] += pi;
        }
    }
    let scale = 1.0 / (n - 1) as f64;
    for i in 0..n {
        phi_plus[i] *= scale;
        phi_minus[i] *= scale;
        out.phi[i] = phi_plus[i] - phi_minus[i];
    }
    out.phi_plus = phi_plus;
    out.phi_minus = phi_minus;
    out
}

/// `π_k(a_i, a_j)` for one criterion, materialized. Needs `n²` floats.
#[derive(Debug, Clone, PartialEq)]
pub struct PreferenceMatrixSlice {
    pub k: usize,
    n: usize,
    values: Vec<f64>,
}

impl PreferenceMatrixSlice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }
}

pub fn preference_slice(matrix: &OrientedMatrix, k: usize) -> PreferenceMatrixSlice {
    let c = &matrix.criteria()[k];
    let column = matrix.column(k);
    let n = column.len();
    let mut values = Vec::with_capacity(n * n);
    for &fi in column {
        values.extend(column.iter().map(|&fx| {
            crate::preference::preference(c.function, difference(fi, fx), c.q, c.p).value()
        }));
    }
    PreferenceMatrixSlice { k, n, values }
}
