#![allow(dead_code)]

use promethee::{CriterionSpec, DecisionMatrix, Direction, PreferenceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ORACLE_TOL: f64 = 1e-9;

pub fn example_one() -> DecisionMatrix {
    let ids = ["Brussels", "Paris", "Blois", "Berlin", "Barcelona"];
    let criteria = ["Sunshine", "Price", "History"]
        .iter()
        .map(|name| CriterionSpec::linear(*name, 1.0, 3.0, 1.0 / 3.0))
        .collect();
    DecisionMatrix::from_rows(
        ids.iter().map(|s| s.to_string()).collect(),
        criteria,
        &[
            vec![5.0, 6.0, 9.0],
            vec![6.0, 4.0, 10.0],
            vec![7.0, 9.0, 8.0],
            vec![7.0, 8.0, 8.0],
            vec![10.0, 7.0, 7.0],
        ],
    )
    .unwrap()
}

#[derive(Debug, Clone, Copy)]
enum ValueStyle {
    /// Distinct-ish reals.
    Uniform,
    /// Small integer grid: many ties and many differences exactly at q or p.
    IntegerGrid,
    /// Quarter-step grid with thresholds on the grid.
    QuarterGrid,
    /// Single repeated value.
    Constant,
}

/// A random valid instance: `n` in `[2, max_n]`, `q` in `[1, 4]`, mixed
/// directions and both preference functions, thresholds including `q = 0`
/// and `p = q`, and columns with duplicated values.
pub fn random_instance(rng: &mut impl Rng, max_n: usize) -> DecisionMatrix {
    let n = rng.random_range(2..=max_n);
    let q = rng.random_range(1..=4);
    let mut criteria = Vec::with_capacity(q);
    let mut columns = Vec::with_capacity(q);
    for k in 0..q {
        let style = match rng.random_range(0..10) {
            0..=3 => ValueStyle::Uniform,
            4..=6 => ValueStyle::IntegerGrid,
            7..=8 => ValueStyle::QuarterGrid,
            _ => ValueStyle::Constant,
        };
        let (scale, column): (f64, Vec<f64>) = match style {
            ValueStyle::Uniform => {
                let scale = [1.0, 10.0, 100.0][rng.random_range(0..3)];
                let offset = rng.random_range(-50.0..50.0);
                (
                    scale,
                    (0..n)
                        .map(|_| offset + scale * rng.random::<f64>())
                        .collect(),
                )
            }
            ValueStyle::IntegerGrid => {
                let top = rng.random_range(1..=12);
                (
                    1.0,
                    (0..n).map(|_| rng.random_range(0..=top) as f64).collect(),
                )
            }
            ValueStyle::QuarterGrid => (
                1.0,
                (0..n)
                    .map(|_| rng.random_range(-8..=8) as f64 * 0.25)
                    .collect(),
            ),
            ValueStyle::Constant => {
                let v = rng.random_range(-5.0..5.0);
                (1.0, vec![v; n])
            }
        };
        let (indiff, pref) = match (style, rng.random_range(0..5)) {
            (_, 0) => (0.0, 0.0),
            (ValueStyle::IntegerGrid, 1) => {
                let t = rng.random_range(0..=3) as f64;
                (t, t)
            }
            (ValueStyle::IntegerGrid, _) => {
                let lo = rng.random_range(0..=3) as f64;
                (lo, lo + rng.random_range(1..=4) as f64)
            }
            (ValueStyle::QuarterGrid, 1) => (0.0, rng.random_range(1..=6) as f64 * 0.25),
            (ValueStyle::QuarterGrid, _) => {
                let lo = rng.random_range(0..=4) as f64 * 0.25;
                (lo, lo + rng.random_range(0..=6) as f64 * 0.25)
            }
            (_, 1) => (0.0, scale * rng.random_range(0.0..0.5)),
            (_, 2) => {
                let t = scale * rng.random_range(0.0..0.3);
                (t, t)
            }
            _ => {
                let lo = scale * rng.random_range(0.0..0.3);
                (lo, lo + scale * rng.random_range(0.0..0.5))
            }
        };
        let direction = if rng.random_bool(0.5) {
            Direction::Maximize
        } else {
            Direction::Minimize
        };
        let function = if rng.random_bool(0.5) {
            PreferenceKind::Linear
        } else {
            PreferenceKind::Level
        };
        criteria.push(CriterionSpec::new(
            format!("c{k}"),
            direction,
            function,
            indiff,
            pref,
            rng.random_range(0.1..5.0),
        ));
        columns.push(column);
    }
    let ids = (0..n).map(|i| format!("a{i}")).collect();
    DecisionMatrix::from_columns(ids, criteria, columns).unwrap()
}

/// The fixed instance set shared by the oracle and ranking checks.
pub fn instance_suite(count: usize, max_n: usize, seed: u64) -> Vec<DecisionMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_instance(&mut rng, max_n))
        .collect()
}
