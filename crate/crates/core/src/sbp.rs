//! Sorting-based engine.
//!
//! For one criterion, sort the alternatives by value. For the alternative at
//! sorted position `i` every other alternative `x` falls in one of three
//! regions, relative to the window `[f(a_i) - p, f(a_i) - q]`:
//!
//! * left (`L`): `d(a_i, x) > p`, preference 1,
//! * window (`W`): preference given by the ramp (linear) or ½ (level),
//! * right (`R`): `d(a_i, x) <= q`, preference 0.
//!
//! Both window borders only move right as `i` grows, so one sweep with two
//! pointers visits every element at most twice. With `|L|`, `|W|` and the
//! window sum `S = Σ_{x∈W} f(x)` the linear positive flow is
//!
//! ```text
//! φ⁺(a_i) = (|L| + (|W|·(f(a_i) - q) - S) / (p - q)) / (n - 1)
//! ```
//!
//! and the level flow is `(|L| + |W|/2) / (n - 1)`. Negative flows are the
//! positive flows of the negated column.
//!
//! Region membership is decided on the computed difference `f(a_i) - f(x)`,
//! the same expression the reference engine feeds to the preference
//! function. Floating-point subtraction is monotone in each argument, so the
//! regions stay contiguous and the borders stay monotone, and boundary cases
//! (`d == q`, `d == p`) land exactly where the pairwise evaluation puts them.

use crate::flows::{aggregate, FlowScores};
use crate::model::{OrientedMatrix, PreferenceKind};
use crate::par;
use crate::preference::difference;

/// The running window sum is rebuilt from scratch after this many updates.
const WINDOW_SUM_REFRESH: usize = 1 << 16;

/// One criterion column in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedCriterionView {
    order: Vec<usize>,
    sorted_values: Vec<f64>,
    inverse: Vec<usize>,
}

impl SortedCriterionView {
    /// Sorts `column` ascending. Equal values keep their original relative
    /// order, so the permutation is deterministic.
    pub fn new(column: &[f64]) -> Self {
        Self::from_iter(column.iter().copied())
    }

    /// View of `-column`, used for negative flows.
    pub fn negated(column: &[f64]) -> Self {
        Self::from_iter(column.iter().map(|v| -v))
    }

    fn from_iter(values: impl Iterator<Item = f64>) -> Self {
        let mut keyed: Vec<(f64, usize)> = values.enumerate().map(|(i, v)| (v, i)).collect();
        keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let n = keyed.len();
        let mut order = Vec::with_capacity(n);
        let mut sorted_values = Vec::with_capacity(n);
        let mut inverse = vec![0; n];
        for (pos, (v, i)) in keyed.into_iter().enumerate() {
            order.push(i);
            sorted_values.push(v);
            inverse[i] = pos;
        }
        Self {
            order,
            sorted_values,
            inverse,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `order[pos]` is the original index of the alternative at sorted `pos`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn sorted_values(&self) -> &[f64] {
        &self.sorted_values
    }

    /// `inverse[i]` is the sorted position of original alternative `i`.
    pub fn inverse(&self) -> &[usize] {
        &self.inverse
    }

    /// Reorders values given in sorted order back to original order.
    pub fn unpermute(&self, sorted: &[f64]) -> Vec<f64> {
        self.inverse.iter().map(|&pos| sorted[pos]).collect()
    }
}

/// Sweep state. Sorted positions `[0, lambda)` are left of the window,
/// `[lambda, upsilon)` inside it and `[upsilon, n)` right of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowCursor {
    pub lambda: usize,
    pub upsilon: usize,
    pub card_l: usize,
    pub card_w: usize,
    pub card_r: usize,
    /// Sum of the sorted values in `[lambda, upsilon)`.
    pub window_sum: f64,
    /// `f(a_i) - p` for the last position advanced to.
    pub lower: f64,
    /// `f(a_i) - q` for the last position advanced to.
    pub upper: f64,
    /// Total pointer increments so far.
    pub pointer_moves: usize,
    updates_since_refresh: usize,
}

impl WindowCursor {
    /// State before the first position: everything is right of the window.
    pub fn new(n: usize) -> Self {
        Self {
            lambda: 0,
            upsilon: 0,
            card_l: 0,
            card_w: 0,
            card_r: n,
            window_sum: 0.0,
            lower: f64::NEG_INFINITY,
            upper: f64::NEG_INFINITY,
            pointer_moves: 0,
            updates_since_refresh: 0,
        }
    }

    /// Moves the window from position `i - 1` (or the initial state) to
    /// sorted position `i`.
    ///
    /// The linear function uses the closed window `q <= d <= p`; the level
    /// function excludes `d == q`, whose preference is 0, and keeps `d == p`,
    /// whose preference is ½.
    pub fn advance(
        &mut self,
        view: &SortedCriterionView,
        i: usize,
        q: f64,
        p: f64,
        kind: PreferenceKind,
    ) {
        let values = view.sorted_values();
        let n = values.len();
        let fi = values[i];
        self.lower = fi - p;
        self.upper = fi - q;

        while self.lambda < n && difference(fi, values[self.lambda]) > p {
            if self.lambda < self.upsilon {
                self.card_w -= 1;
                self.window_sum -= values[self.lambda];
                self.updates_since_refresh += 1;
            } else {
                self.card_r -= 1;
            }
            self.card_l += 1;
            self.lambda += 1;
            self.pointer_moves += 1;
        }
        if self.upsilon < self.lambda {
            // skipped straight from R to L
            self.pointer_moves += self.lambda - self.upsilon;
            self.upsilon = self.lambda;
        }

        let admits = |d: f64| match kind {
            PreferenceKind::Linear => d >= q,
            PreferenceKind::Level => d > q,
        };
        while self.upsilon < n && admits(difference(fi, values[self.upsilon])) {
            self.card_r -= 1;
            self.card_w += 1;
            self.window_sum += values[self.upsilon];
            self.updates_since_refresh += 1;
            self.upsilon += 1;
            self.pointer_moves += 1;
        }

        if self.updates_since_refresh >= WINDOW_SUM_REFRESH {
            self.window_sum = values[self.lambda..self.upsilon].iter().sum();
            self.updates_since_refresh = 0;
        }

        debug_assert_eq!(self.card_l + self.card_w + self.card_r, n);
        debug_assert_eq!(self.card_l, self.lambda);
        debug_assert_eq!(self.card_w, self.upsilon - self.lambda);
    }

    /// Positive flow of the alternative the cursor was last advanced to,
    /// before division by `n - 1`.
    fn weighted_count(&self, fi: f64, q: f64, p: f64, kind: PreferenceKind) -> f64 {
        let left = self.card_l as f64;
        if p == q {
            return left;
        }
        match kind {
            PreferenceKind::Level => left + 0.5 * self.card_w as f64,
            PreferenceKind::Linear => {
                let width = self.card_w as f64;
                let ramp = (width * (fi - q) - self.window_sum) / (p - q);
                // each window term lies in [0, 1]; clamp away rounding
                left + ramp.clamp(0.0, width)
            }
        }
    }
}

/// Functional form of [`WindowCursor::advance`].
pub fn advance_window(
    mut cursor: WindowCursor,
    view: &SortedCriterionView,
    i: usize,
    q: f64,
    p: f64,
    kind: PreferenceKind,
) -> WindowCursor {
    cursor.advance(view, i, q, p, kind);
    cursor
}

/// Sorts criterion `k` of the matrix.
pub fn sort_criterion(matrix: &OrientedMatrix, k: usize) -> SortedCriterionView {
    SortedCriterionView::new(matrix.column(k))
}

/// Unicriterion positive flows in sorted order.
pub fn sbp_unicriterion_positive(
    view: &SortedCriterionView,
    q: f64,
    p: f64,
    kind: PreferenceKind,
) -> Vec<f64> {
    scan_positive(view, q, p, kind, |_, _| {})
}

/// [`sbp_unicriterion_positive`] that also reports the cursor after every
/// sorted position.
pub fn scan_positive(
    view: &SortedCriterionView,
    q: f64,
    p: f64,
    kind: PreferenceKind,
    mut hook: impl FnMut(usize, &WindowCursor),
) -> Vec<f64> {
    let values = view.sorted_values();
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let scale = 1.0 / (n - 1).max(1) as f64;
    let mut out = Vec::with_capacity(n);
    let mut cursor = WindowCursor::new(n);
    for i in 0..n {
        if i > 0 && values[i] == values[i - 1] {
            // same value, same window
            out.push(out[i - 1]);
        } else {
            cursor.advance(view, i, q, p, kind);
            out.push(cursor.weighted_count(values[i], q, p, kind) * scale);
        }
        hook(i, &cursor);
    }
    out
}

/// `(uni_plus, uni_minus)` for criterion `k`, in original alternative order.
pub fn sbp_unicriterion_flows(matrix: &OrientedMatrix, k: usize) -> (Vec<f64>, Vec<f64>) {
    let c = &matrix.criteria()[k];
    let column = matrix.column(k);
    let run = |view: SortedCriterionView| {
        let sorted = sbp_unicriterion_positive(&view, c.q, c.p, c.function);
        view.unpermute(&sorted)
    };
    par::join(
        || run(SortedCriterionView::new(column)),
        || run(SortedCriterionView::negated(column)),
    )
}

pub fn sbp_flows(matrix: &OrientedMatrix) -> FlowScores {
    let per_criterion = par::map_range(matrix.q(), |k| sbp_unicriterion_flows(matrix, k));
    aggregate(matrix, per_criterion)
}
