//! Small Ramsey quantities by exhaustive, isomorphism-aware enumeration.

mod canon;
mod directed;
mod goodness;
mod ramsey;
mod tau;

pub use directed::{augment, consecutive_gap_check, directed_ramsey_exact, DirectedResult, GapReport, DEFAULT_TOURNAMENT_CAP};
pub use goodness::{goodness_gap, GoodnessReport, Verdict};
pub use ramsey::{ramsey_exact, ramsey_exact_graphs, LevelStats, RamseyOptions, RamseyResult};
pub use tau::{tau_exact, TauOptions, TauResult};

/// Canonical isomorphism code of a tournament, exposed for tests and the
/// CLI's witness comparison.
pub fn tournament_code(t: &crate::Tournament) -> u64 {
    canon::canonical_tournament(t).0
}
