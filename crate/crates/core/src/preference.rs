//! Preference functions: map a pairwise difference to a degree in `[0, 1]`.
//!
//! Both functions are 0 for `d <= q` and 1 for `d > p`. When `p == q` they
//! collapse to a step at `q`.

use crate::model::PreferenceKind;

/// A preference degree, always within `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct PreferenceDegree(f64);

impl PreferenceDegree {
    pub const NONE: Self = Self(0.0);
    pub const HALF: Self = Self(0.5);
    pub const FULL: Self = Self(1.0);

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<PreferenceDegree> for f64 {
    fn from(d: PreferenceDegree) -> f64 {
        d.0
    }
}

/// `d_k(a_i, a_j)` for evaluations `fi = f_k(a_i)`, `fj = f_k(a_j)`.
#[inline]
pub fn difference(fi: f64, fj: f64) -> f64 {
    fi - fj
}

#[inline]
pub fn linear_preference(d: f64, q: f64, p: f64) -> PreferenceDegree {
    if d <= q {
        PreferenceDegree::NONE
    } else if d > p {
        PreferenceDegree::FULL
    } else {
        // q < d <= p, so p > q here
        PreferenceDegree((d - q) / (p - q))
    }
}

#[inline]
pub fn level_preference(d: f64, q: f64, p: f64) -> PreferenceDegree {
    if d <= q {
        PreferenceDegree::NONE
    } else if d > p {
        PreferenceDegree::FULL
    } else {
        PreferenceDegree::HALF
    }
}

#[inline]
pub fn preference(kind: PreferenceKind, d: f64, q: f64, p: f64) -> PreferenceDegree {
    match kind {
        PreferenceKind::Linear => linear_preference(d, q, p),
        PreferenceKind::Level => level_preference(d, q, p),
    }
}
