//! Acceptance gate. Runs every criterion in sequence (the scaling criterion
//! needs an otherwise idle process) and prints one PASS/FAIL line each.

mod common;

use std::time::Instant;

use common::{example_one, instance_suite, ORACLE_TOL};
use promethee::bench::{run_bench, BenchConfig};
use promethee::ranking::{rank_promethee1, rank_promethee2, DEFAULT_TIE_EPS};
use promethee::reference::{naive_flows, naive_unicriterion_flows};
use promethee::sbp::{sbp_flows, sbp_unicriterion_flows, scan_positive, sort_criterion};
use promethee::{DecisionMatrix, Engine, OrientedMatrix, Relation};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SUITE_SIZE: usize = 200;
const SUITE_MAX_N: usize = 512;
const SUITE_SEED: u64 = 20_240_601;
const SUITE_TIME_LIMIT_S: f64 = 60.0;
const CONSERVATION_PER_N: f64 = 1e-12;
const NAIVE_RATIO: (f64, f64) = (3.2, 4.8);
const SBP_RATIO: (f64, f64) = (1.7, 2.6);
const RATIO_MIN_N: usize = 1 << 13;
const SBP_LARGE_N: usize = 1 << 20;
const SBP_LARGE_LIMIT_S: f64 = 30.0;

type Outcome = Result<String, String>;
type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn orient(m: &DecisionMatrix) -> OrientedMatrix {
    OrientedMatrix::new(m).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn worked_example() -> Outcome {
    let m = orient(&example_one());
    let (naive_plus, _) = naive_unicriterion_flows(&m, 0);
    let (sbp_plus, _) = sbp_unicriterion_flows(&m, 0);
    let (a, b) = (naive_plus[3], sbp_plus[3]);
    ensure((a - 0.125).abs() <= 1e-12, || {
        format!("naive phi_1+(a4) = {a}")
    })?;
    ensure((b - 0.125).abs() <= 1e-12, || {
        format!("sbp phi_1+(a4) = {b}")
    })?;
    Ok(format!("naive {a}, sbp {b}"))
}

fn window_trace() -> Outcome {
    let m = orient(&example_one());
    let c = &m.criteria()[0];
    let view = sort_criterion(&m, 0);
    let name = |pos: usize| format!("a{}", view.order()[pos] + 1);
    let set = |range: std::ops::Range<usize>| range.map(name).collect::<Vec<_>>().join(",");

    let mut rows = Vec::new();
    scan_positive(&view, c.q, c.p, c.function, |i, cur| {
        rows.push((
            name(i),
            (cur.lower, cur.upper),
            set(0..cur.lambda),
            set(cur.lambda..cur.upsilon),
            set(cur.upsilon..view.len()),
        ));
    });
    let expected = [
        ("a1", (2.0, 4.0), "", "", "a1,a2,a3,a4,a5"),
        ("a2", (3.0, 5.0), "", "a1", "a2,a3,a4,a5"),
        ("a3", (4.0, 6.0), "", "a1,a2", "a3,a4,a5"),
        ("a4", (4.0, 6.0), "", "a1,a2", "a3,a4,a5"),
        ("a5", (7.0, 9.0), "a1,a2", "a3,a4", "a5"),
    ];
    ensure(rows.len() == expected.len(), || {
        format!("{} rows", rows.len())
    })?;
    for (row, exp) in rows.iter().zip(expected) {
        let matches =
            row.0 == exp.0 && row.1 == exp.1 && row.2 == exp.2 && row.3 == exp.3 && row.4 == exp.4;
        ensure(matches, || format!("row {row:?} != {exp:?}"))?;
    }
    Ok("L/W/R and bounds match for all 5 alternatives".into())
}

fn oracle_equivalence(suite: &[DecisionMatrix]) -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (t, m) in suite.iter().enumerate() {
        let m = orient(m);
        let diff = sbp_flows(&m).max_abs_diff(&naive_flows(&m));
        ensure(diff <= ORACLE_TOL, || {
            format!("instance {t}: diff {diff:e}")
        })?;
        worst = worst.max(diff);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < SUITE_TIME_LIMIT_S, || format!("took {secs:.1} s"))?;
    Ok(format!(
        "{} instances, max diff {worst:e}, {secs:.2} s",
        suite.len()
    ))
}

fn conservation(suite: &[DecisionMatrix]) -> Outcome {
    let mut worst: f64 = 0.0;
    for (t, m) in suite.iter().enumerate() {
        let m = orient(m);
        for engine in [Engine::Naive, Engine::Sbp] {
            let total: f64 = engine.flows(&m).phi.iter().sum();
            let bound = m.n() as f64 * CONSERVATION_PER_N;
            ensure(total.abs() <= bound, || {
                format!("instance {t}, {engine}: sum {total:e} > {bound:e}")
            })?;
            worst = worst.max(total.abs() / m.n() as f64);
        }
    }
    Ok(format!("max |sum phi| / n = {worst:e}"))
}

fn invariance(suite: &[DecisionMatrix]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shifts = [-64.0, -3.5, -0.25, 0.75, 12.25, 1024.0];
    for (t, m) in suite.iter().enumerate() {
        let base = sbp_flows(&orient(m));

        let k = t % m.q();
        let shift = shifts[t % shifts.len()];
        let mut shifted = m.clone();
        shifted.column_mut(k).iter_mut().for_each(|v| *v += shift);
        let diff = sbp_flows(&orient(&shifted)).max_abs_diff(&base);
        ensure(diff <= ORACLE_TOL, || {
            format!("instance {t}: translation diff {diff:e}")
        })?;

        let mut perm: Vec<usize> = (0..m.n()).collect();
        perm.shuffle(&mut rng);
        let columns = (0..m.q())
            .map(|k| perm.iter().map(|&i| m.value(i, k)).collect())
            .collect();
        let ids = perm.iter().map(|&i| m.alternatives()[i].clone()).collect();
        let moved = DecisionMatrix::from_columns(ids, m.criteria().to_vec(), columns).unwrap();
        let moved = sbp_flows(&orient(&moved));
        for (pos, &i) in perm.iter().enumerate() {
            let mut d = (moved.phi[pos] - base.phi[i])
                .abs()
                .max((moved.phi_plus[pos] - base.phi_plus[i]).abs())
                .max((moved.phi_minus[pos] - base.phi_minus[i]).abs());
            for k in 0..m.q() {
                d = d
                    .max((moved.uni_plus[k][pos] - base.uni_plus[k][i]).abs())
                    .max((moved.uni_minus[k][pos] - base.uni_minus[k][i]).abs());
            }
            ensure(d <= ORACLE_TOL, || {
                format!("instance {t}: permutation diff {d:e}")
            })?;
        }

        let mut scaled = m.clone();
        for c in scaled.criteria_mut() {
            c.weight *= 3.75;
        }
        let scaled = sbp_flows(&orient(&scaled));
        ensure(
            rank_promethee2(&scaled, DEFAULT_TIE_EPS) == rank_promethee2(&base, DEFAULT_TIE_EPS)
                && rank_promethee1(&scaled, DEFAULT_TIE_EPS)
                    == rank_promethee1(&base, DEFAULT_TIE_EPS),
            || format!("instance {t}: weight scaling changed a ranking"),
        )?;

        for k in 0..m.q() {
            let column = orient(m).column(k).to_vec();
            for i in 0..m.n() {
                for j in i + 1..m.n() {
                    if column[i] == column[j] {
                        ensure(
                            base.uni_plus[k][i].to_bits() == base.uni_plus[k][j].to_bits(),
                            || format!("instance {t}: tied values {i},{j} differ on criterion {k}"),
                        )?;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{} instances: translation, permutation, weight scaling, ties",
        suite.len()
    ))
}

fn scaling() -> Outcome {
    let config = BenchConfig {
        sizes: (10..=20).map(|e| 1usize << e).collect(),
        q: 1,
        repeats: 3,
        engines: vec![Engine::Naive, Engine::Sbp],
        max_naive_n: 1 << 16,
        threads: Some(1),
        ..BenchConfig::default()
    };
    let report = run_bench(&config).map_err(|e| e.to_string())?;
    let median_ratio = |engine| {
        let ratios: Vec<f64> = report
            .ratios(engine)
            .into_iter()
            .filter(|&(n, _)| n / 2 >= RATIO_MIN_N)
            .map(|(_, r)| r)
            .collect();
        promethee::bench::median(&ratios)
    };
    let naive = median_ratio(Engine::Naive);
    let sbp = median_ratio(Engine::Sbp);
    let large = report
        .records(Engine::Sbp)
        .find(|r| r.n == SBP_LARGE_N)
        .map(|r| r.median())
        .ok_or("no sbp record at n = 2^20")?;
    let detail = format!("naive ratio {naive:.3}, sbp ratio {sbp:.3}, sbp 2^20 {large:.3} s");
    ensure((NAIVE_RATIO.0..=NAIVE_RATIO.1).contains(&naive), || {
        detail.clone()
    })?;
    ensure((SBP_RATIO.0..=SBP_RATIO.1).contains(&sbp), || {
        detail.clone()
    })?;
    ensure(large < SBP_LARGE_LIMIT_S, || detail.clone())?;
    Ok(detail)
}

fn promethee1_semantics(suite: &[DecisionMatrix]) -> Outcome {
    let mut strict = 0usize;
    for (t, m) in suite.iter().enumerate() {
        let flows = sbp_flows(&orient(m));
        let r = rank_promethee1(&flows, DEFAULT_TIE_EPS);
        for a in 0..m.n() {
            ensure(r.relation(a, a) == Relation::Indifferent, || {
                format!("instance {t}: diagonal {a}")
            })?;
            for b in 0..m.n() {
                let (ab, ba) = (r.relation(a, b), r.relation(b, a));
                ensure(ba == ab.inverse(), || {
                    format!("instance {t}: ({a},{b}) asymmetric")
                })?;
                if ab == Relation::Preferred {
                    strict += 1;
                    ensure(flows.phi[a] >= flows.phi[b] - 1e-12, || {
                        format!(
                            "instance {t}: {a} P {b} but phi {} < {}",
                            flows.phi[a], flows.phi[b]
                        )
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{} instances, {strict} strict preferences checked",
        suite.len()
    ))
}

fn main() {
    let suite = instance_suite(SUITE_SIZE, SUITE_MAX_N, SUITE_SEED);
    let criteria: Vec<Check> = vec![
        ("worked example", Box::new(worked_example)),
        ("window trace", Box::new(window_trace)),
        (
            "oracle equivalence",
            Box::new(|| oracle_equivalence(&suite)),
        ),
        ("conservation", Box::new(|| conservation(&suite))),
        ("invariance suite", Box::new(|| invariance(&suite))),
        ("scaling", Box::new(scaling)),
        (
            "PROMETHEE I semantics",
            Box::new(|| promethee1_semantics(&suite)),
        ),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
