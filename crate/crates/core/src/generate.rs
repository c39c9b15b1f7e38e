//! Seeded synthetic decision matrices.
//!
//! Values are drawn i.i.d. uniform on `[0, 1)` from ChaCha8 seeded with
//! `seed_from_u64`, row by row (`a1` criteria 1..q, then `a2`, ...). The same
//! seed always yields the same matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{CriterionSpec, DecisionMatrix, PreferenceKind};

/// Indifference threshold of generated criteria.
pub const DEFAULT_Q: f64 = 0.05;
/// Preference threshold of generated criteria.
pub const DEFAULT_P: f64 = 0.25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("bad size: need n >= 2 and q >= 1, got n = {n}, q = {q}")]
    BadSize { n: usize, q: usize },
}

/// Criteria `c1..cq`, maximized, equal weights.
pub fn default_criteria(
    q: usize,
    function: PreferenceKind,
    indiff: f64,
    pref: f64,
) -> Vec<CriterionSpec> {
    (1..=q)
        .map(|k| {
            CriterionSpec::new(
                format!("c{k}"),
                crate::model::Direction::Maximize,
                function,
                indiff,
                pref,
                1.0,
            )
        })
        .collect()
}

/// `n × q` uniform matrix with linear criteria at the default thresholds.
pub fn generate(n: usize, q: usize, seed: u64) -> Result<DecisionMatrix, GenerateError> {
    generate_with(
        n,
        default_criteria(q, PreferenceKind::Linear, DEFAULT_Q, DEFAULT_P),
        seed,
    )
}

pub fn generate_with(
    n: usize,
    criteria: Vec<CriterionSpec>,
    seed: u64,
) -> Result<DecisionMatrix, GenerateError> {
    let q = criteria.len();
    if n < 2 || q < 1 {
        return Err(GenerateError::BadSize { n, q });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns = vec![Vec::with_capacity(n); q];
    for _ in 0..n {
        for column in &mut columns {
            column.push(rng.random::<f64>());
        }
    }
    let ids = (1..=n).map(|i| format!("a{i}")).collect();
    Ok(DecisionMatrix::from_columns(ids, criteria, columns).expect("shape is consistent"))
}
