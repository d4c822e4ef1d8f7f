//! Data model: k-uniform hypergraphs, two-colorings of complete hypergraphs,
//! tournaments, and the profile quantities χ, σ and the Burr bound.

mod bitmap;
mod coloring;
mod colex;
mod generators;
mod hypergraph;
mod profile;
mod tournament;

pub use coloring::{Color, TwoColoring};
pub use colex::{binom, colex_rank, colex_unrank, mask_of, rank_of_mask, vertices_of, KSets};
pub use generators::{clique, ell_cycle, ell_path, fano, single_edge, tournament_hypergraph};
pub use hypergraph::Hypergraph;
pub use profile::{burr_bound, ramsey_profile, BurrBound, RamseyProfile, DEFAULT_PROFILE_GUARD};
pub use tournament::Tournament;

/// Vertex sets are bitmasks; every object is limited to this many vertices.
pub const MAX_VERTICES: usize = 64;
