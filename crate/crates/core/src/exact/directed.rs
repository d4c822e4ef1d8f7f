use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::canon::canonical_tournament;
use crate::error::{invalid, Error, Result};
use crate::par;
use crate::search::{find_transitive_subtournament, CertKind, Host, SearchStats};
use crate::Tournament;

pub const DEFAULT_TOURNAMENT_CAP: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectedResult {
    pub chi: usize,
    pub value: Option<usize>,
    /// TT_chi-free tournament on value − 1 vertices (or on n_cap vertices
    /// when the cap was reached).
    pub witness: Option<Tournament>,
    /// Isomorphism classes of TT_chi-free tournaments by order, from 0.
    pub classes: Vec<usize>,
    pub stats: SearchStats,
}

/// R⃗(χ) by growing TT_χ-free tournaments one vertex at a time, keeping one
/// per isomorphism class.
pub fn directed_ramsey_exact(chi: usize, n_cap: usize) -> Result<DirectedResult> {
    if chi < 1 {
        return invalid("chi must be at least 1");
    }
    if n_cap > 11 {
        return invalid("tournament enumeration is limited to 11 vertices");
    }
    let mut level: BTreeMap<u64, Tournament> = BTreeMap::new();
    level.insert(0, Tournament::transitive(0));
    let mut classes = vec![1];
    let mut stats = SearchStats::default();
    for n in 1..=n_cap {
        let parents: Vec<&Tournament> = level.values().collect();
        let grown = par::map(&parents, |t| {
            let mut st = SearchStats::default();
            let mut kids = Vec::new();
            for out in 0u64..1 << (n - 1) {
                let mut masks: Vec<u64> = t.out_masks().to_vec();
                for (v, m) in masks.iter_mut().enumerate() {
                    if out >> v & 1 == 0 {
                        *m |= 1 << (n - 1);
                    }
                }
                masks.push(out);
                let child = Tournament::from_out_masks(masks).expect("one orientation per pair");
                let cert = find_transitive_subtournament(&child, chi);
                st.add(cert.stats);
                if cert.kind == CertKind::Free {
                    kids.push(child);
                } else {
                    st.prunes += 1;
                }
            }
            (kids, st)
        });
        let mut next = BTreeMap::new();
        for (kids, st) in grown {
            stats.add(st);
            for c in kids {
                let (code, rep) = canonical_tournament(&c);
                next.entry(code).or_insert(rep);
            }
        }
        classes.push(next.len());
        if next.is_empty() {
            return Ok(DirectedResult { chi, value: Some(n), witness: level.into_values().next(), classes, stats });
        }
        level = next;
    }
    Ok(DirectedResult { chi, value: None, witness: level.into_values().next(), classes, stats })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub chi: usize,
    pub value: usize,
    pub previous: usize,
    pub holds: bool,
    /// TT_{χ−1}-free witness plus a source above it and a sink below it,
    /// the sink beating the source.
    pub augmented: Tournament,
    pub augmented_is_free: bool,
}

/// R⃗(χ) ≥ R⃗(χ−1) + 2, with the augmented witness rebuilt and checked.
pub fn consecutive_gap_check(chi: usize, n_cap: usize) -> Result<GapReport> {
    if chi < 2 {
        return invalid("the gap check needs chi >= 2");
    }
    let prev = directed_ramsey_exact(chi - 1, n_cap)?;
    let cur = directed_ramsey_exact(chi, n_cap)?;
    let (Some(pv), Some(cv)) = (prev.value, cur.value) else {
        return Err(Error::Guard(format!("R(chi) for chi in {{{}, {chi}}} not determined within {n_cap} vertices", chi - 1)));
    };
    let w = prev.witness.expect("exact results carry a witness");
    let augmented = augment(&w);
    let cert = find_transitive_subtournament(&augmented, chi);
    if cert.kind != CertKind::Free {
        cert.validate(Host::Tournament(&augmented))?;
    }
    Ok(GapReport {
        chi,
        value: cv,
        previous: pv,
        holds: cv >= pv + 2,
        augmented,
        augmented_is_free: cert.kind == CertKind::Free,
    })
}

/// Adds v₁ → everything → v₂ and v₂ → v₁; v₁, v₂ get the two new labels.
pub fn augment(w: &Tournament) -> Tournament {
    let n = w.n();
    let (v1, v2) = (n, n + 1);
    let mut out: Vec<u64> = w.out_masks().iter().map(|&m| m | 1 << v2).collect();
    let base = if n == 0 { 0 } else { (1u64 << n) - 1 };
    out.push(base);
    out.push(1 << v1);
    Tournament::from_out_masks(out).expect("augmentation orients every pair once")
}
