//! Doubling benchmark: time the flow computation of each engine on seeded
//! uniform data for a list of sizes.
//!
//! Only the flow computation is timed (sorting included for the sorting-based
//! engine); generation and validation happen before the clock starts.

use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use thiserror::Error;

use crate::flows::Engine;
use crate::generate::{default_criteria, generate_with, GenerateError, DEFAULT_P, DEFAULT_Q};
use crate::model::{OrientedMatrix, PreferenceKind};
use crate::par;

/// Naive runs above this size are skipped unless the cap is raised.
pub const DEFAULT_MAX_NAIVE_N: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("bad sizes: {0}")]
    BadSizes(String),
    #[error("repeats must be at least 1")]
    BadRepeats,
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub q: usize,
    pub repeats: usize,
    pub engines: Vec<Engine>,
    pub seed: u64,
    pub max_naive_n: usize,
    pub function: PreferenceKind,
    pub indifference: f64,
    pub preference: f64,
    /// Worker threads for the engines; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: (10..=16).map(|e| 1 << e).collect(),
            q: 1,
            repeats: 3,
            engines: vec![Engine::Naive, Engine::Sbp],
            seed: 1,
            max_naive_n: DEFAULT_MAX_NAIVE_N,
            function: PreferenceKind::Linear,
            indifference: DEFAULT_Q,
            preference: DEFAULT_P,
            threads: Some(1),
        }
    }
}

/// Timings for one `(n, engine)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub engine: Engine,
    pub q: usize,
    pub seed: u64,
    pub seconds: Vec<f64>,
}

impl BenchRecord {
    pub fn repeats(&self) -> usize {
        self.seconds.len()
    }

    pub fn median(&self) -> f64 {
        median(&self.seconds)
    }
}

pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of nothing");
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BenchEntry {
    Measured(BenchRecord),
    Skipped {
        n: usize,
        engine: Engine,
        q: usize,
        seed: u64,
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub repeats: usize,
    pub entries: Vec<BenchEntry>,
}

impl BenchReport {
    pub fn records(&self, engine: Engine) -> impl Iterator<Item = &BenchRecord> {
        self.entries.iter().filter_map(move |e| match e {
            BenchEntry::Measured(r) if r.engine == engine => Some(r),
            _ => None,
        })
    }

    /// `(n, median(n) / median(previous n))` for consecutive measured sizes.
    pub fn ratios(&self, engine: Engine) -> Vec<(usize, f64)> {
        let records: Vec<&BenchRecord> = self.records(engine).collect();
        records
            .windows(2)
            .map(|w| (w[1].n, w[1].median() / w[0].median()))
            .collect()
    }

    /// One row per repeat, or one row per skipped cell.
    pub fn write_csv(&self, w: impl Write) -> std::io::Result<()> {
        let mut w = w;
        writeln!(
            w,
            "n,engine,q,repeat,seconds,median_seconds,ratio,seed,note"
        )?;
        let mut prev_median: Vec<(Engine, f64)> = Vec::new();
        for entry in &self.entries {
            match entry {
                BenchEntry::Measured(r) => {
                    let median = r.median();
                    let ratio = prev_median
                        .iter()
                        .find(|(e, _)| *e == r.engine)
                        .map(|(_, m)| format!("{:.4}", median / m))
                        .unwrap_or_default();
                    for (rep, s) in r.seconds.iter().enumerate() {
                        writeln!(
                            w,
                            "{},{},{},{},{:.9},{:.9},{},{},",
                            r.n,
                            r.engine,
                            r.q,
                            rep + 1,
                            s,
                            median,
                            ratio,
                            r.seed
                        )?;
                    }
                    prev_median.retain(|(e, _)| *e != r.engine);
                    prev_median.push((r.engine, median));
                }
                BenchEntry::Skipped {
                    n,
                    engine,
                    q,
                    seed,
                    reason,
                } => {
                    writeln!(w, "{n},{engine},{q},,,,,{seed},{reason}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn check_sizes(sizes: &[usize]) -> Result<(), BenchError> {
    if sizes.is_empty() {
        return Err(BenchError::BadSizes("no sizes given".into()));
    }
    if let Some(&n) = sizes.iter().find(|&&n| n < 2) {
        return Err(BenchError::BadSizes(format!("size {n} is below 2")));
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BenchError::BadSizes(
            "sizes must be strictly ascending".into(),
        ));
    }
    Ok(())
}

/// Runs every `(size, engine)` cell, calling `progress` after each one.
pub fn run_bench_with(
    config: &BenchConfig,
    mut progress: impl FnMut(&BenchEntry),
) -> Result<BenchReport, BenchError> {
    check_sizes(&config.sizes)?;
    if config.repeats == 0 {
        return Err(BenchError::BadRepeats);
    }
    let criteria = default_criteria(
        config.q,
        config.function,
        config.indifference,
        config.preference,
    );
    let mut entries = Vec::new();
    for &n in &config.sizes {
        let matrix = generate_with(n, criteria.clone(), config.seed)?;
        let oriented = OrientedMatrix::new(&matrix).expect("generated matrix is valid");
        for &engine in &config.engines {
            let entry = if engine == Engine::Naive && n > config.max_naive_n {
                BenchEntry::Skipped {
                    n,
                    engine,
                    q: config.q,
                    seed: config.seed,
                    reason: format!("skipped: n > max-naive-n ({})", config.max_naive_n),
                }
            } else {
                let seconds = par::with_threads(config.threads, || {
                    (0..config.repeats)
                        .map(|_| {
                            let start = Instant::now();
                            black_box(engine.flows(black_box(&oriented)));
                            start.elapsed().as_secs_f64().max(f64::MIN_POSITIVE)
                        })
                        .collect()
                });
                BenchEntry::Measured(BenchRecord {
                    n,
                    engine,
                    q: config.q,
                    seed: config.seed,
                    seconds,
                })
            };
            progress(&entry);
            entries.push(entry);
        }
    }
    Ok(BenchReport {
        repeats: config.repeats,
        entries,
    })
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport, BenchError> {
    run_bench_with(config, |_| {})
}
