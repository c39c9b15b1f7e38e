//! Exact PROMETHEE I and II.
//!
//! Two engines compute the same flow scores:
//!
//! * [`reference`] evaluates every ordered pair of alternatives, `O(q n^2)`.
//! * [`sbp`] sorts each criterion once and sweeps a sliding window over the
//!   sorted values, `O(q n log n)`.
//!
//! Both take an [`OrientedMatrix`] (validated, every criterion maximized) and
//! share the aggregation step in [`flows`], so they differ only in how the
//! per-criterion positive and negative flows are obtained.
//!
//! ```
//! use promethee::{CriterionSpec, DecisionMatrix, Engine, OrientedMatrix};
//!
//! let criteria = vec![CriterionSpec::linear("sunshine", 1.0, 3.0, 1.0)];
//! let matrix = DecisionMatrix::from_rows(
//!     vec!["a".into(), "b".into(), "c".into()],
//!     criteria,
//!     &[vec![5.0], vec![6.0], vec![10.0]],
//! )
//! .unwrap();
//! let oriented = OrientedMatrix::new(&matrix).unwrap();
//! let flows = Engine::Sbp.flows(&oriented);
//! assert_eq!(flows.phi_plus[2], 1.0);
//! ```

pub mod bench;
pub mod cli;
pub mod flows;
pub mod generate;
pub mod io;
pub mod model;
mod par;
pub mod preference;
pub mod ranking;
pub mod reference;
pub mod sbp;

pub use flows::{Engine, FlowScores};
pub use model::{
    CriterionSpec, DecisionMatrix, Direction, OrientedMatrix, PreferenceKind, ValidationError,
};
pub use par::with_threads;
pub use preference::PreferenceDegree;
pub use ranking::{PartialRanking, Relation, TotalRanking};
