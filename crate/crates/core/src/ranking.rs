//! PROMETHEE II total preorder and PROMETHEE I partial order.

use std::cmp::Ordering;

use crate::flows::FlowScores;

pub const DEFAULT_TIE_EPS: f64 = 1e-9;

/// Alternatives grouped by net flow, best group first.
#[derive(Debug, Clone, PartialEq)]
pub struct TotalRanking {
    /// Indices into the flow scores, one group per rank.
    pub groups: Vec<Vec<usize>>,
    /// `rank[i]` is the 1-based group index of alternative `i`.
    pub rank: Vec<usize>,
}

/// Sorts by net flow, descending. Consecutive alternatives whose flows differ
/// by at most `tie_eps` share a group, so ties chain. Members of a group are
/// listed in input order.
pub fn rank_promethee2(flows: &FlowScores, tie_eps: f64) -> TotalRanking {
    let n = flows.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        flows.phi[b]
            .total_cmp(&flows.phi[a])
            .then_with(|| a.cmp(&b))
    });

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut rank = vec![0; n];
    let mut prev: Option<f64> = None;
    for i in order {
        let phi = flows.phi[i];
        match prev {
            Some(last) if last - phi <= tie_eps => groups.last_mut().unwrap().push(i),
            _ => groups.push(vec![i]),
        }
        rank[i] = groups.len();
        prev = Some(phi);
    }
    for group in &mut groups {
        group.sort_unstable();
    }
    TotalRanking { groups, rank }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Row alternative is preferred to column alternative.
    Preferred,
    /// Column alternative is preferred to row alternative.
    Dominated,
    Indifferent,
    Incomparable,
}

impl Relation {
    pub fn inverse(self) -> Self {
        match self {
            Relation::Preferred => Relation::Dominated,
            Relation::Dominated => Relation::Preferred,
            other => other,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Preferred => "P",
            Relation::Dominated => "P-",
            Relation::Indifferent => "I",
            Relation::Incomparable => "R",
        }
    }
}

/// `relation(a, b)` over all ordered pairs; the diagonal is indifference.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialRanking {
    n: usize,
    relations: Vec<Relation>,
}

impl PartialRanking {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relation(&self, a: usize, b: usize) -> Relation {
        self.relations[a * self.n + b]
    }

    /// Each unordered pair once, oriented so a strict preference reads
    /// `(winner, loser, Preferred)`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Relation)> + '_ {
        (0..self.n).flat_map(move |a| {
            (a + 1..self.n).map(move |b| match self.relation(a, b) {
                Relation::Dominated => (b, a, Relation::Preferred),
                r => (a, b, r),
            })
        })
    }
}

fn compare(a: f64, b: f64, eps: f64) -> Ordering {
    if (a - b).abs() <= eps {
        Ordering::Equal
    } else if a > b {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Intersection of the orders induced by `φ⁺` (higher is better) and `φ⁻`
/// (lower is better). Flows within `tie_eps` are equal.
pub fn rank_promethee1(flows: &FlowScores, tie_eps: f64) -> PartialRanking {
    let n = flows.n();
    let mut relations = vec![Relation::Indifferent; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let plus = compare(flows.phi_plus[a], flows.phi_plus[b], tie_eps);
            // reversed so Greater means a is better on the negative flow
            let minus = compare(flows.phi_minus[b], flows.phi_minus[a], tie_eps);
            let r = match (plus, minus) {
                (Ordering::Equal, Ordering::Equal) => Relation::Indifferent,
                (Ordering::Greater, Ordering::Greater | Ordering::Equal)
                | (Ordering::Equal, Ordering::Greater) => Relation::Preferred,
                (Ordering::Less, Ordering::Less | Ordering::Equal)
                | (Ordering::Equal, Ordering::Less) => Relation::Dominated,
                _ => Relation::Incomparable,
            };
            relations[a * n + b] = r;
            relations[b * n + a] = r.inverse();
        }
    }
    PartialRanking { n, relations }
}
