//! Exact monochromatic-substructure searches and their certificates.

mod certificate;
mod embed;
mod independence;
mod paths;
mod tournament;
mod verify;

pub use certificate::{path_edges, CertKind, Certificate, Host};
pub use embed::{find_mono_clique, find_mono_copy, find_mono_copy_in, CopySearch};
pub(crate) use embed::{AnchoredEmbedder, HostView};
pub use independence::{has_two_edge_loose_path, independence_number, Independence};
pub use paths::{longest_mono_ell_path, PathSearch};
pub use tournament::find_transitive_subtournament;
pub use verify::{red_copy, verify_free, FreeCheck};

use serde::{Deserialize, Serialize};

/// Work counters. Deterministic for a given input whatever the thread count.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
}

impl SearchStats {
    pub fn add(&mut self, o: SearchStats) {
        self.nodes += o.nodes;
        self.prunes += o.prunes;
    }

    pub fn sum<'a>(it: impl IntoIterator<Item = &'a SearchStats>) -> SearchStats {
        let mut s = SearchStats::default();
        for x in it {
            s.add(*x);
        }
        s
    }
}

/// Size guards. Path and embedding guards are soft: past them the search
/// runs best-effort and marks its result inexact. Profile and independence
/// guards are hard.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub tight_path: usize,
    pub loose_path: usize,
    pub independence: usize,
    pub profile: usize,
    /// Node budget for a best-effort path search.
    pub path_nodes: u64,
    /// Node budget per top-level embedding branch; `None` is unlimited.
    pub embed_nodes: Option<u64>,
    /// When false, exceeding a soft guard is an error instead.
    pub soft: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            tight_path: 16,
            loose_path: 20,
            independence: 20,
            profile: crate::hg::DEFAULT_PROFILE_GUARD,
            path_nodes: 20_000_000,
            embed_nodes: None,
            soft: true,
        }
    }
}
